#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "abclust/graph.hpp"

namespace abclust {

/// Row-stochastic transition matrix in sparse row form.
struct TransitionMatrix {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> rows; // (column, probability)

    /// Max deviation of any row sum from 1.
    double max_row_sum_error() const;
};

/// Seed-deleted transition structure: the sub-stochastic matrix over the
/// n-1 non-seed vertices, plus the vertex <-> row bijection.
struct AbsorbingChain {
    int seed = -1;
    int n_total = 0;                                    // order of the source graph
    std::vector<int> vertex_of_row;                     // row -> vertex id
    std::vector<int> row_of_vertex;                     // vertex id -> row (-1 at seed)
    std::vector<std::vector<std::pair<int, double>>> q; // rows over non-seed vertices

    int dim() const { return static_cast<int>(vertex_of_row.size()); }

    /// y = Q x (sparse row-major product).
    std::vector<double> apply(const std::vector<double>& x) const;
};

/// Expected steps to absorption at `seed`, one entry per non-seed vertex,
/// aligned with vertex_of_row of the chain that produced it.
struct AbsorptionVector {
    int seed = -1;
    std::vector<int> vertex_of_row;
    std::vector<double> m;
};

/// Simple random walk: row i is 1/deg(i) on each neighbor.
TransitionMatrix transition_matrix(const Graph& g);

/// Half-lazy walk: 1/2 self-loop plus half of every original transition.
/// Maps every eigenvalue x to (1+x)/2 with unchanged eigenvectors.
TransitionMatrix lazy_walk(const TransitionMatrix& p);

AbsorbingChain absorbing_chain(const TransitionMatrix& p, int seed);
AbsorbingChain absorbing_chain(const Graph& g, int seed);

/// Solve (I - Q) m = 1 by sparse LU; the residual is checked to 1e-8.
AbsorptionVector absorption_exact(const AbsorbingChain& chain);

/// n x n matrix whose column j holds absorption times to seed j (0 on the
/// diagonal). `workers` > 1 solves seed columns concurrently; the result is
/// identical regardless of scheduling.
std::vector<std::vector<double>> absorption_matrix(const Graph& g, int workers = 1);

struct SimulationResult {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    long long completed = 0;
    long long truncated = 0;
};

/// Monte-Carlo oracle: independent random walks from `start` until they hit
/// `seed`. Walks longer than max_steps are dropped and counted as truncated.
/// Each walk uses its own RNG stream derived from (rng_seed, walk index), so
/// the result does not depend on execution order. With `lazy` set, every step
/// first flips a fair coin and stays put on heads.
SimulationResult simulate_absorption(const Graph& g, int seed, int start, long long walks,
                                     long long max_steps, std::uint64_t rng_seed,
                                     bool lazy = false);

} // namespace abclust
