#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace prodiff {

struct VerifyConfig {
    std::size_t order = 12;
    std::uint64_t seed = 7;
    /// Forces the first instance of the first check to be reported as failing,
    /// so the failure path of callers can be exercised.
    bool inject_fault = false;
};

/// group, operators, norms, freealg, all.
const std::vector<std::string>& suite_names();

/// Runs the randomized invariant checks of one suite. The report is
///   {"suite", "order", "seed", "passed", "checks": [{"name", "instances",
///    "passed", "repro"?}]}
/// and "all" nests the individual reports under "suites". Every check draws
/// from its own generator seeded by (seed, check name), so reports do not
/// depend on which suites ran before. Throws PreconditionError for an unknown
/// suite or order < 4.
nlohmann::json run_suite(const std::string& suite, const VerifyConfig& config);

}  // namespace prodiff
