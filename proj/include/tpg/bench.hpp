#pragma once

#include <string>
#include <vector>

#include "tpg/model.hpp"

namespace tpg {

struct BenchRow {
    int n = 0;
    std::string variant;
    int locations = 0;
    int edges = 0;
    double wall_ms = 0.0;
    long recursion_calls = 0;
};

// Solves the scaling family for n in [n_lo, n_hi]; wall time is the median
// over `reps` runs of augment+solve.
std::vector<BenchRow> run_fig6_bench(int n_lo, int n_hi, BenchmarkVariant variant, int reps = 3);

// sqrt(SSR/SST) of the least-squares line y ~ a + b x; 0 for a perfect fit.
double linear_fit_residual_ratio(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace tpg
