#include "tpg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tpg/solver.hpp"

namespace tpg {

std::vector<BenchRow> run_fig6_bench(int n_lo, int n_hi, BenchmarkVariant variant, int reps) {
    std::vector<BenchRow> rows;
    for (int n = n_lo; n <= n_hi; ++n) {
        TGA g = gen_benchmark(n, variant);
        BenchRow row;
        row.n = n;
        row.variant = benchmark_variant_name(variant);
        row.locations = (int)g.locations.size();
        row.edges = (int)g.edges.size();
        std::vector<double> times;
        for (int r = 0; r < std::max(1, reps); ++r) {
            auto t0 = std::chrono::steady_clock::now();
            AugTGA aug = augment(g);
            SolveResult res = solve(aug);
            auto t1 = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            row.recursion_calls = res.stats.calls;
        }
        std::sort(times.begin(), times.end());
        row.wall_ms = times[times.size() / 2];
        rows.push_back(row);
    }
    return rows;
}

double linear_fit_residual_ratio(const std::vector<double>& xs, const std::vector<double>& ys) {
    size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    double b = denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
    double a = (sy - b * sx) / n;
    double ssr = 0, sst = 0, mean = sy / n;
    for (size_t i = 0; i < n; ++i) {
        double fit = a + b * xs[i];
        ssr += (ys[i] - fit) * (ys[i] - fit);
        sst += (ys[i] - mean) * (ys[i] - mean);
    }
    if (sst == 0) return 0.0;
    return std::sqrt(ssr / sst);
}

}  // namespace tpg
