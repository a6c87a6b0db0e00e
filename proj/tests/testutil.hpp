#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

#include "abclust/graph.hpp"
#include "abclust/markov.hpp"
#include "abclust/rng.hpp"

namespace abclust::testutil {

inline Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    return Graph::from_edges(n, edges);
}

inline Graph path3() { return make_graph(3, {{0, 1}, {1, 2}}); }
inline Graph k4() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
inline Graph c4() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
inline Graph star(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return make_graph(leaves + 1, edges);
}

/// Independent dense route to absorption times: form I - Q densely and run a
/// full-pivoting LU, no sparse machinery shared with the production solver.
inline std::vector<double> dense_absorption_oracle(const Graph& g, int seed) {
    const int n = g.order();
    std::vector<int> vertex_of_row;
    std::vector<int> row_of_vertex(n, -1);
    for (int v = 0; v < n; ++v)
        if (v != seed) {
            row_of_vertex[v] = static_cast<int>(vertex_of_row.size());
            vertex_of_row.push_back(v);
        }
    const int k = n - 1;
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(k, k);
    for (int r = 0; r < k; ++r) {
        const int v = vertex_of_row[r];
        const double p = 1.0 / g.degree(v);
        for (int w : g.neighbors(v))
            if (w != seed) system(r, row_of_vertex[w]) -= p;
    }
    Eigen::VectorXd m = Eigen::FullPivLU<Eigen::MatrixXd>(system).solve(Eigen::VectorXd::Ones(k));
    return {m.data(), m.data() + k};
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

/// Connected random graph: a random spanning tree plus extra random edges.
inline Graph random_connected_graph(int n, double extra_edge_prob, Xoshiro256ss& rng) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_index(static_cast<std::uint32_t>(i + 1))]);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) {
        const int parent = order[rng.uniform_index(static_cast<std::uint32_t>(i))];
        edges.emplace_back(order[i], parent);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < extra_edge_prob) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

/// Brute-force optimal 1-D 2-means: tries every sorted split and recomputes
/// class sums directly.
inline std::pair<std::vector<int>, double> brute_force_two_means(std::vector<double> values) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    double best = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (sorted[k - 1] == sorted[k]) continue;
        double mean_lo = 0.0, mean_hi = 0.0;
        for (std::size_t i = 0; i < k; ++i) mean_lo += sorted[i];
        for (std::size_t i = k; i < n; ++i) mean_hi += sorted[i];
        mean_lo /= k;
        mean_hi /= (n - k);
        double sse = 0.0;
        for (std::size_t i = 0; i < k; ++i) sse += (sorted[i] - mean_lo) * (sorted[i] - mean_lo);
        for (std::size_t i = k; i < n; ++i) sse += (sorted[i] - mean_hi) * (sorted[i] - mean_hi);
        if (best < 0.0 || sse < best) {
            best = sse;
            best_k = k;
        }
    }
    const double threshold = 0.5 * (sorted[best_k - 1] + sorted[best_k]);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = values[i] > threshold ? 1 : 0;
    return {labels, threshold};
}

} // namespace abclust::testutil
