// Acceptance suite runner: one line per criterion, nonzero exit on failure.
// HYPK_ACCEPT_FAST=1 switches to the reduced-path budget.

#include <cstdio>
#include <cstdlib>

#include "hypk/acceptance.hpp"

int main() {
    using namespace hypk::acceptance;
    const bool fast = std::getenv("HYPK_ACCEPT_FAST") != nullptr;
    const Budget budget = fast ? Budget::fast() : Budget{};

    bool all_passed = true;
    run(Suite::All, budget, [&](const CriterionResult& r) {
        std::printf("criterion %d [%s]: %s (%s) [%.1f s]\n", r.id, r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.detail.c_str(), r.seconds);
        std::fflush(stdout);
        all_passed = all_passed && r.passed;
    });
    std::printf(all_passed ? "acceptance: all criteria passed\n"
                           : "acceptance: FAILURES present\n");
    return all_passed ? 0 : 1;
}
