#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hypk::acceptance {

// Monte Carlo budgets for the validation suite. The analytic criteria have
// no knobs. Step sizes differ per run: boundary detection on a discrete
// path shifts the effective boundary by about 0.583 sqrt(h), and each step
// below keeps that shift under one binomial standard error of its own
// tolerance check.
struct Budget {
    long kernel_paths = 50000;
    double kernel_step = 1e-4;
    long exit_paths = 100000;
    double exit_step_h2 = 7.5e-6;
    double exit_step_h3 = 7.5e-6;
    double exit_step_sphere = 2.5e-5;
    long escape_paths = 100000;
    double escape_step = 3e-5;
    std::uint64_t seed = 75247;

    // reduced-path smoke configuration; statistical tolerances scale with
    // the actual path counts, so the checks stay meaningful
    static Budget fast();
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

enum class Suite { Kernels, Exits, All };

// Runs the requested criteria; on_result (when set) is invoked after each
// criterion so drivers can stream progress.
std::vector<CriterionResult> run(Suite suite, const Budget& budget,
                                 const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace hypk::acceptance
