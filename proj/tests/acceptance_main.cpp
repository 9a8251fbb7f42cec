// Acceptance runner: one line per criterion, nonzero exit on any failure.

#include "cmt/suite.hpp"

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

namespace {

struct Criterion {
    const char* label;
    std::vector<const char*> checks;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> table = {
        {"1. worked-example reproduction (exact)", {"worked-examples"}},
        {"2. flatness and empty-team suites", {"flatness-exhaustive", "empty-team-random"}},
        {"3. normal-form oracle equivalence", {"normal-form-equivalence"}},
        {"4. contradictory-negation dichotomy", {"cneg-contradictoriness"}},
        {"5. mixed-statement theorem", {"mixed-statements"}},
        {"6. SEM bridge round trip and joint law", {"sem-bridge-roundtrip"}},
        {"7. rescaling suite",
         {"rescaling-invariance", "rescaling-commutation", "capture-lemmas",
          "theta-k-counterexample"}},
        {"8. definability at desk scale", {"definability-random-classes"}},
    };
    return table;
}

} // namespace

int main(int argc, char** argv) {
    cmt::SuiteConfig config;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            config.seed = std::stoull(argv[++i]);

    int failed = 0;
    for (const Criterion& criterion : criteria()) {
        bool passed = true;
        long long cases = 0;
        double seconds = 0;
        std::string detail;
        for (const char* name : criterion.checks) {
            cmt::CheckResult r = cmt::run_check(name, config);
            passed = passed && r.passed;
            cases += r.cases;
            seconds += r.seconds;
            if (!r.passed && detail.empty()) detail = r.name + ": " + r.detail;
        }
        std::printf("[%s] %-42s %10lld cases  %7.2f s%s%s\n", passed ? "PASS" : "FAIL",
                    criterion.label, cases, seconds, detail.empty() ? "" : "  ",
                    detail.c_str());
        std::fflush(stdout);
        if (!passed) ++failed;
    }
    std::printf("%zu criteria: %zu passed, %d failed\n", criteria().size(),
                criteria().size() - static_cast<size_t>(failed), failed);
    return failed;
}
