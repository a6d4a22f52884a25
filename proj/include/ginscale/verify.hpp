#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ginscale {

struct IdentityCheck {
    std::string name;
    double achieved = 0.0;  ///< worst deviation observed
    double required = 0.0;  ///< tolerance
    bool passed = false;
};

/// Names of the checks run by run_identity_checks, in order.
std::vector<std::string> identity_check_names();

/// Analytic cross-checks of the distribution and scaling machinery. `inject_fault`
/// perturbs the named check's achieved deviation so the failure path can be exercised;
/// throws DomainError for an unknown name.
std::vector<IdentityCheck> run_identity_checks(const std::optional<std::string>& inject_fault = {});

}  // namespace ginscale
