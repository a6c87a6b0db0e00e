#pragma once

#include <optional>
#include <vector>

#include "abclust/graph.hpp"

namespace abclust {

/// Gradient-descent knobs. The stock heuristic ties them to the mean degree:
/// c = 1/k_bar, delta = c/10, epsilon = delta/10.
struct DescentParams {
    double c = 0.25;
    double delta = 0.025;
    double epsilon = 0.0025;
    long max_iters = 100000;
};

DescentParams default_descent_params(double avg_degree);

/// Soft-constrained objective over vectors pinned to 0 at the seed:
/// f(v) = 1/2 sum_{edges jk} (v_j - v_k)^2 + c/2 * (n - sum_j v_j^2).
double soft_objective(const Graph& g, int seed, const std::vector<double>& v, double c);

/// Analytic gradient: df/dv_j = -sum_{k~j} v_k + (deg j - c) v_j, with the
/// seed component pinned to 0.
std::vector<double> soft_gradient(const Graph& g, int seed, const std::vector<double>& v,
                                  double c);

enum class DescentStatus { converged, max_iters_exhausted, diverged };

/// Locally estimated per-vertex proximity profile: the seed is pinned at 0,
/// vertices the frontier never reached hold exactly 1.
struct FiedlerEstimate {
    int seed = -1;
    std::vector<double> v_tilde;
    std::vector<int> touched; // vertices updated at least once, sorted
    long iterations = 0;
    double final_objective = 0.0;
    DescentStatus status = DescentStatus::converged;
};

struct DescentTraceRow {
    long t = 0;
    double max_change = 0.0;
    long touched_count = 0;
    double objective = 0.0;
};

/// Synchronous sweeps of v_j += delta * (sum_{k~j} v_k - (deg j - c) v_j),
/// starting from all-ones (seed 0). A vertex is updated only while some
/// neighbour sits below 1, so the active region grows outward from the seed.
/// Stops when every per-vertex change falls below epsilon; flags divergence
/// if the iterate leaves [-1e3, 1e3] or max_iters runs out.
FiedlerEstimate descend(const Graph& g, int seed, const DescentParams& params,
                        std::vector<DescentTraceRow>* trace = nullptr);

/// Scores for downstream classification: 1 + c_prime * v_tilde when the
/// scale is known, v_tilde itself otherwise (classification is invariant
/// under positive affine maps, so the unscaled profile classifies the same).
/// The seed entry is 0 in both cases. Requires a converged estimate.
std::vector<double> estimate_absorption_from_local(const FiedlerEstimate& fe,
                                                   std::optional<double> c_prime = std::nullopt);

/// Least-squares scale fit of reference ~ 1 + c_prime * v_tilde over
/// non-seed vertices (diagnostic helper).
double fit_c_prime(const FiedlerEstimate& fe, const std::vector<double>& reference);

} // namespace abclust
