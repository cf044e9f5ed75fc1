// selftest.hpp — built-in exact-value checks runnable from the CLI.

#pragma once

#include <string>
#include <vector>

namespace ecga {

struct SelfCheck {
    std::string name;
    bool passed = false;
    std::string detail;  // expected/actual on failure
};

// Exact-value MDL checks, the hand-traced hillclimb, and the synthetic
// bisection oracle.  All pass on a correct build.
std::vector<SelfCheck> run_selftests();

}  // namespace ecga
