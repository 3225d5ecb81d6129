#pragma once

// The acceptance suite: one entry per contract criterion; a run prints one
// pass/fail line per criterion. Tolerances and trial counts are pinned in the
// implementation.

#include <ostream>
#include <string>
#include <vector>

namespace noiselab::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// runs all criteria (or the listed subset), streaming progress lines
std::vector<CriterionResult> run_all(std::ostream& progress, const std::vector<int>& only = {},
                                     int threads = 2);

}  // namespace noiselab::acceptance
