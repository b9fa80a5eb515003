#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace boolconc {

/// Raised when a bound is requested outside the range of deviations where it
/// is proven. `limit` carries the right end of that range (h(s0-) for the
/// inverse-integral bound), or NaN when no finite limit applies.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what,
                         double limit = std::numeric_limits<double>::quiet_NaN())
        : std::domain_error(what), limit_(limit) {}

    double limit() const noexcept { return limit_; }

private:
    double limit_;
};

/// Invalid or inapplicable run configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace boolconc
