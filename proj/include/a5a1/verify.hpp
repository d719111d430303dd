#pragma once

#include <string>
#include <vector>

namespace a5a1 {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Names of the acceptance checks, in run order.
std::vector<std::string> check_names();

// Runs one check by name; throws std::invalid_argument on unknown name.
CheckResult run_check(const std::string& name);

std::vector<CheckResult> run_all_checks();

}  // namespace a5a1
