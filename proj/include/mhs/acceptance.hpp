#pragma once

// The thirteen acceptance criteria, each with its runtime budget pinned here.
// A criterion passes only if every check holds and it finishes within budget.

#include <string>
#include <vector>

namespace mhs {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool checks_pass = false;
    double elapsed_ms = 0.0;
    double limit_ms = 0.0;
    std::string detail;

    bool pass() const { return checks_pass && elapsed_ms < limit_ms; }
    std::string line() const;
};

inline constexpr int kCriterionCount = 13;

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();

}  // namespace mhs
