#pragma once

#include <stdexcept>
#include <string>

namespace strata {

/// A mathematical certificate failed: a cross-check that the theory says must
/// hold did not.  Distinct from invalid input (std::invalid_argument).
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace strata
