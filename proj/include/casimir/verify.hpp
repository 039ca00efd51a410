#pragma once

// Self-checks of the library's physical identities, runnable against any
// configuration: every invariant the library promises -- kernel/spectrum
// consistency, causality of the optical response, the spectral sum rules,
// the decomposition/closed-form identity, cross-route agreement, and
// quadrature honesty -- evaluated with the given medium, geometry, thermal
// state, and quadrature settings.  Checks that do not apply to the
// configuration are reported as skipped with the reason.

#include <string>
#include <vector>

#include "casimir/force.hpp"

namespace casimir {

struct CheckResult {
    std::string name;
    bool passed = false;   // skipped checks count as passed
    bool skipped = false;
    double measured = 0.0;   // worst observed deviation (units per check)
    double tolerance = 0.0;  // what the check allowed
    std::string message;     // skip reason or failure detail; may be empty
};

// Runs the full invariant suite against the configuration.  Exceptions
// raised by a check (for example a quadrature that cannot meet the
// requested tolerance) are captured as that check's failure, never
// propagated, so the report is always complete.
std::vector<CheckResult> run_config_checks(const ForceConfig& cfg);

// True when every non-skipped check passed.
bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace casimir
