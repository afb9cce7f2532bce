#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>

namespace lenslab {

/// Real 2x2 matrix. Everything this library produces is unimodular
/// (determinant 1), so the adjugate doubles as the inverse.
struct Mat2 {
    double m11 = 1.0;
    double m12 = 0.0;
    double m21 = 0.0;
    double m22 = 1.0;

    static constexpr Mat2 identity() { return {}; }

    constexpr double det() const { return m11 * m22 - m12 * m21; }
    constexpr double trace() const { return m11 + m22; }

    constexpr Mat2 transpose() const { return {m11, m21, m12, m22}; }

    /// Inverse under the det = 1 assumption.
    constexpr Mat2 sl2_inverse() const { return {m22, -m12, -m21, m11}; }

    constexpr bool finite() const {
        return std::isfinite(m11) && std::isfinite(m12) && std::isfinite(m21) &&
               std::isfinite(m22);
    }

    friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }

    friend constexpr Mat2 operator-(const Mat2& m) {
        return {-m.m11, -m.m12, -m.m21, -m.m22};
    }

    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Mat2 diagonal(double a, double d) { return {a, 0.0, 0.0, d}; }

/// Largest absolute entry.
inline double max_abs(const Mat2& m) {
    return std::max({std::fabs(m.m11), std::fabs(m.m12), std::fabs(m.m21),
                     std::fabs(m.m22)});
}

/// Largest absolute entrywise difference.
inline double max_abs_diff(const Mat2& a, const Mat2& b) {
    return std::max({std::fabs(a.m11 - b.m11), std::fabs(a.m12 - b.m12),
                     std::fabs(a.m21 - b.m21), std::fabs(a.m22 - b.m22)});
}

/// Entrywise difference relative to the larger matrix max-norm.
/// Returns an absolute difference when both matrices are tiny.
inline double relative_diff(const Mat2& a, const Mat2& b) {
    const double scale = std::max(max_abs(a), max_abs(b));
    const double diff = max_abs_diff(a, b);
    return scale > 1.0 ? diff / scale : diff;
}

inline bool approx_equal(const Mat2& a, const Mat2& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m.m11 << ", " << m.m12 << "], [" << m.m21 << ", "
              << m.m22 << "]]";
}

}  // namespace lenslab
