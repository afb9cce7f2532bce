#pragma once

#include <stdexcept>
#include <string>

namespace lenslab {

/// Caller passed a value outside an operation's domain (non-finite, wrong
/// sign, malformed parameter pack).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The system as a whole is not in a configuration the requested operation
/// supports (e.g. core extraction outside the camera configuration d1, d2 > f).
struct configuration_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Two redundant internal computations disagreed beyond tolerance, or a
/// matrix/regime tag pair contradicts itself. Indicates inconsistent data,
/// not bad syntax.
struct inconsistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lenslab
