#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "lenslab/mat2.hpp"

using lenslab::Mat2;
using Catch::Matchers::WithinAbs;

namespace {
constexpr Mat2 a{1.0, 2.0, 3.0, 4.0};
constexpr Mat2 b{0.0, 1.0, -1.0, 2.0};
}  // namespace

TEST_CASE("identity and field defaults") {
    constexpr Mat2 id = Mat2::identity();
    STATIC_REQUIRE(id.m11 == 1.0);
    STATIC_REQUIRE(id.m12 == 0.0);
    REQUIRE(Mat2{} == id);
    REQUIRE((id * a) == a);
    REQUIRE((a * id) == a);
}

TEST_CASE("determinant and trace") {
    REQUIRE(a.det() == -2.0);
    REQUIRE(a.trace() == 5.0);
    REQUIRE(Mat2::identity().det() == 1.0);
}

TEST_CASE("product against hand multiplication") {
    constexpr Mat2 p = a * b;
    STATIC_REQUIRE(p.m11 == -2.0);  // 1*0 + 2*(-1)
    STATIC_REQUIRE(p.m12 == 5.0);   // 1*1 + 2*2
    STATIC_REQUIRE(p.m21 == -4.0);
    STATIC_REQUIRE(p.m22 == 11.0);
    REQUIRE(((a * b) * b) == (a * (b * b)));
}

TEST_CASE("transpose and negation") {
    constexpr Mat2 t = a.transpose();
    REQUIRE(t == Mat2{1.0, 3.0, 2.0, 4.0});
    REQUIRE((-a) == Mat2{-1.0, -2.0, -3.0, -4.0});
    REQUIRE((-(-a)) == a);
}

TEST_CASE("inverse of a unimodular matrix") {
    const Mat2 m{2.0, 3.0, 1.0, 2.0};  // det 1
    REQUIRE(m.det() == 1.0);
    const Mat2 inv = m.sl2_inverse();
    REQUIRE(inv == Mat2{2.0, -3.0, -1.0, 2.0});
    REQUIRE((m * inv) == Mat2::identity());
    REQUIRE((inv * m) == Mat2::identity());
}

TEST_CASE("diagonal builder") {
    const Mat2 d = lenslab::diagonal(2.0, 0.5);
    REQUIRE(d == Mat2{2.0, 0.0, 0.0, 0.5});
    REQUIRE(d.det() == 1.0);
}

TEST_CASE("finiteness probe") {
    REQUIRE(a.finite());
    REQUIRE_FALSE(Mat2{1.0, std::numeric_limits<double>::infinity(), 0.0, 1.0}.finite());
    REQUIRE_FALSE(Mat2{std::nan(""), 0.0, 0.0, 1.0}.finite());
}

TEST_CASE("norms and comparisons") {
    REQUIRE(lenslab::max_abs(b) == 2.0);
    REQUIRE(lenslab::max_abs_diff(a, a) == 0.0);
    REQUIRE(lenslab::max_abs_diff(a, b) == 4.0);  // |3 - (-1)|
    REQUIRE(lenslab::approx_equal(a, Mat2{1.0, 2.0, 3.0, 4.0 + 1e-12}, 1e-11));
    REQUIRE_FALSE(lenslab::approx_equal(a, b, 1e-11));
}

TEST_CASE("relative difference switches to absolute for small matrices") {
    const Mat2 big{100.0, 0.0, 0.0, 100.0};
    const Mat2 big2{100.0, 1.0, 0.0, 100.0};
    REQUIRE_THAT(lenslab::relative_diff(big, big2), WithinAbs(0.01, 1e-15));

    const Mat2 small1{0.1, 0.0, 0.0, 0.1};
    const Mat2 small2{0.1, 0.05, 0.0, 0.1};
    REQUIRE_THAT(lenslab::relative_diff(small1, small2), WithinAbs(0.05, 1e-15));
}

TEST_CASE("stream form is readable") {
    std::ostringstream os;
    os << a;
    REQUIRE(os.str() == "[[1, 2], [3, 4]]");
}
