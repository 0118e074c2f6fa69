#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oplab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// runs the full quantitative suite; one entry per criterion, in order
std::vector<CriterionResult> run_acceptance();

// prints one pass/fail line per criterion; returns 0 when all pass, 1 otherwise
int report_acceptance(std::ostream& out);

}  // namespace oplab
