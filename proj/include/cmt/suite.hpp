#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cmt {

struct SuiteConfig {
    uint64_t seed = 17;
};

struct CheckResult {
    std::string name;
    bool passed = true;
    long long cases = 0;
    double seconds = 0.0;
    std::string detail;  // first failure, when any
};

/// Names of all property checks, in running order.
std::vector<std::string> suite_check_names();

/// Runs one named check; throws Error on an unknown name.
CheckResult run_check(const std::string& name, const SuiteConfig& config);

/// Runs every check.
std::vector<CheckResult> run_suite(const SuiteConfig& config);

} // namespace cmt
