#pragma once

// Self-contained diagnostic battery behind the `selftest` command. Each
// check measures a discrepancy that the design froze on purpose (printed
// constants vs re-derived ones, approximants vs reference routines, branch
// choices of the inverse exponential integral) and compares it against a
// frozen tolerance. A fresh checkout passes every check; scaling the
// tolerances down (selftest_tol_scale < 1) is the supported way to study
// the margins, and makes the command exit nonzero.

#include "cellload/analytic.hpp"

#include <string>
#include <vector>

namespace cellload {

struct SelftestCheck {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct SelftestReport {
    std::vector<SelftestCheck> checks;
    bool all_pass = false;
};

SelftestReport run_selftest(const LoadModel& m, double tol_scale = 1.0);

std::string selftest_text(const SelftestReport& report);

}  // namespace cellload
