#pragma once

#include <string>
#include <vector>

#include "ergokit/base.hpp"

namespace ergokit {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    json to_json() const;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool all_pass() const;
    json to_json() const;
};

std::vector<std::string> suite_names();

// Self-contained invariant suite for one module; spaces and measures are
// built programmatically, seeds fixed, so reports are deterministic.
SuiteReport run_suite(const std::string& name);

// "all" or a comma-free list of names; aggregates into one document.
json run_suites(const std::vector<std::string>& names);

}  // namespace ergokit
