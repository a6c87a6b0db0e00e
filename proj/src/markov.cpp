#include "abclust/markov.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <thread>

#include "abclust/errors.hpp"
#include "abclust/rng.hpp"

namespace abclust {

double TransitionMatrix::max_row_sum_error() const {
    double worst = 0.0;
    for (const auto& row : rows) {
        double sum = 0.0;
        for (auto [col, p] : row) sum += p;
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

std::vector<double> AbsorbingChain::apply(const std::vector<double>& x) const {
    std::vector<double> y(q.size(), 0.0);
    for (std::size_t r = 0; r < q.size(); ++r) {
        double acc = 0.0;
        for (auto [col, p] : q[r]) acc += p * x[col];
        y[r] = acc;
    }
    return y;
}

TransitionMatrix transition_matrix(const Graph& g) {
    TransitionMatrix p;
    p.n = g.order();
    p.rows.resize(p.n);
    for (int i = 0; i < p.n; ++i) {
        const int deg = g.degree(i);
        if (deg == 0)
            throw InputError("isolated vertex " + std::to_string(g.label_of(i)) +
                             " has no transitions");
        const double prob = 1.0 / deg;
        p.rows[i].reserve(deg);
        for (int j : g.neighbors(i)) p.rows[i].emplace_back(j, prob);
    }
    return p;
}

TransitionMatrix lazy_walk(const TransitionMatrix& p) {
    if (p.max_row_sum_error() > 1e-12)
        throw std::invalid_argument("lazy_walk: input is not row-stochastic");
    TransitionMatrix out;
    out.n = p.n;
    out.rows.resize(p.n);
    for (int i = 0; i < p.n; ++i) {
        double diagonal = 0.5;
        out.rows[i].reserve(p.rows[i].size() + 1);
        for (auto [col, prob] : p.rows[i]) {
            if (col == i)
                diagonal += 0.5 * prob;
            else
                out.rows[i].emplace_back(col, 0.5 * prob);
        }
        out.rows[i].emplace_back(i, diagonal);
        std::sort(out.rows[i].begin(), out.rows[i].end());
    }
    return out;
}

AbsorbingChain absorbing_chain(const TransitionMatrix& p, int seed) {
    if (seed < 0 || seed >= p.n) throw InputError("seed vertex out of range");
    AbsorbingChain chain;
    chain.seed = seed;
    chain.n_total = p.n;
    chain.row_of_vertex.assign(p.n, -1);
    chain.vertex_of_row.reserve(p.n - 1);
    for (int v = 0; v < p.n; ++v) {
        if (v == seed) continue;
        chain.row_of_vertex[v] = static_cast<int>(chain.vertex_of_row.size());
        chain.vertex_of_row.push_back(v);
    }
    chain.q.resize(chain.vertex_of_row.size());
    for (int r = 0; r < chain.dim(); ++r) {
        const int v = chain.vertex_of_row[r];
        for (auto [col, prob] : p.rows[v]) {
            if (col == seed) continue;
            chain.q[r].emplace_back(chain.row_of_vertex[col], prob);
        }
    }
    return chain;
}

AbsorbingChain absorbing_chain(const Graph& g, int seed) {
    return absorbing_chain(transition_matrix(g), seed);
}

AbsorptionVector absorption_exact(const AbsorbingChain& chain) {
    const int k = chain.dim();
    Eigen::SparseMatrix<double> system(k, k);
    std::vector<Eigen::Triplet<double>> triplets;
    for (int r = 0; r < k; ++r) {
        double diagonal = 1.0;
        for (auto [col, prob] : chain.q[r]) {
            if (col == r)
                diagonal -= prob;
            else
                triplets.emplace_back(r, col, -prob);
        }
        triplets.emplace_back(r, r, diagonal);
    }
    system.setFromTriplets(triplets.begin(), triplets.end());
    system.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.analyzePattern(system);
    solver.factorize(system);
    if (solver.info() != Eigen::Success)
        throw NumericError("absorption solve failed: I - Q is singular "
                           "(is the graph connected?)");
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(k);
    Eigen::VectorXd m = solver.solve(rhs);

    const double residual = (system * m - rhs).lpNorm<Eigen::Infinity>();
    if (!(residual <= 1e-8))
        throw NumericError("absorption residual " + std::to_string(residual) +
                           " exceeds contract");

    AbsorptionVector out;
    out.seed = chain.seed;
    out.vertex_of_row = chain.vertex_of_row;
    out.m.assign(m.data(), m.data() + k);
    return out;
}

std::vector<std::vector<double>> absorption_matrix(const Graph& g, int workers) {
    const int n = g.order();
    std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
    const TransitionMatrix p = transition_matrix(g);

    auto solve_column = [&](int seed) {
        AbsorptionVector column = absorption_exact(absorbing_chain(p, seed));
        for (int r = 0; r < static_cast<int>(column.m.size()); ++r)
            matrix[column.vertex_of_row[r]][seed] = column.m[r];
    };

    if (workers <= 1) {
        for (int seed = 0; seed < n; ++seed) solve_column(seed);
        return matrix;
    }
    std::vector<std::thread> pool;
    const int count = std::min(workers, n);
    pool.reserve(count);
    for (int w = 0; w < count; ++w)
        pool.emplace_back([&, w] {
            for (int seed = w; seed < n; seed += count) solve_column(seed);
        });
    for (auto& t : pool) t.join();
    return matrix;
}

SimulationResult simulate_absorption(const Graph& g, int seed, int start, long long walks,
                                     long long max_steps, std::uint64_t rng_seed, bool lazy) {
    if (seed < 0 || seed >= g.order()) throw InputError("seed vertex out of range");
    if (start < 0 || start >= g.order()) throw InputError("start vertex out of range");
    if (start == seed) throw InputError("start vertex must differ from the seed");
    if (walks < 1) throw InputError("need at least one walk");

    SimulationResult result;
    double sum = 0.0, sum_sq = 0.0;
    for (long long w = 0; w < walks; ++w) {
        Xoshiro256ss rng(derive_stream_seed(rng_seed, static_cast<std::uint64_t>(w)));
        int position = start;
        long long steps = 0;
        while (position != seed && steps < max_steps) {
            ++steps;
            if (lazy && rng.uniform() < 0.5) continue;
            auto nbrs = g.neighbors(position);
            position = nbrs[rng.uniform_index(static_cast<std::uint32_t>(nbrs.size()))];
        }
        if (position != seed) {
            ++result.truncated;
            continue;
        }
        ++result.completed;
        sum += static_cast<double>(steps);
        sum_sq += static_cast<double>(steps) * static_cast<double>(steps);
    }
    if (result.completed > 0) {
        const auto k = static_cast<double>(result.completed);
        result.mean = sum / k;
        if (result.completed > 1) {
            const double variance = std::max(0.0, (sum_sq - k * result.mean * result.mean) / (k - 1.0));
            result.stderr_of_mean = std::sqrt(variance / k);
        }
    }
    return result;
}

} // namespace abclust
