#include "abclust/descent.hpp"

#include <algorithm>
#include <cmath>

#include "abclust/errors.hpp"

namespace abclust {

DescentParams default_descent_params(double avg_degree) {
    if (!(avg_degree > 0.0)) throw InputError("average degree must be positive");
    DescentParams params;
    params.c = 1.0 / avg_degree;
    params.delta = params.c / 10.0;
    params.epsilon = params.delta / 10.0;
    params.max_iters = 100000;
    return params;
}

namespace {

void check_pinned(const Graph& g, int seed, const std::vector<double>& v) {
    if (seed < 0 || seed >= g.order()) throw std::invalid_argument("seed out of range");
    if (v.size() != static_cast<std::size_t>(g.order()))
        throw std::invalid_argument("value vector length mismatch");
    if (v[seed] != 0.0) throw std::invalid_argument("seed value must be pinned to 0");
}

} // namespace

double soft_objective(const Graph& g, int seed, const std::vector<double>& v, double c) {
    check_pinned(g, seed, v);
    double edge_term = 0.0;
    double norm = 0.0;
    for (int j = 0; j < g.order(); ++j) {
        norm += v[j] * v[j];
        for (int k : g.neighbors(j))
            if (j < k) {
                const double diff = v[j] - v[k];
                edge_term += diff * diff;
            }
    }
    return 0.5 * edge_term + 0.5 * c * (static_cast<double>(g.order()) - norm);
}

std::vector<double> soft_gradient(const Graph& g, int seed, const std::vector<double>& v,
                                  double c) {
    check_pinned(g, seed, v);
    std::vector<double> grad(g.order(), 0.0);
    for (int j = 0; j < g.order(); ++j) {
        if (j == seed) continue;
        double neighbor_sum = 0.0;
        for (int k : g.neighbors(j)) neighbor_sum += v[k];
        grad[j] = -neighbor_sum + (g.degree(j) - c) * v[j];
    }
    return grad;
}

FiedlerEstimate descend(const Graph& g, int seed, const DescentParams& params,
                        std::vector<DescentTraceRow>* trace) {
    if (seed < 0 || seed >= g.order()) throw InputError("seed out of range");
    if (!(params.c > 0.0 && params.delta > 0.0 && params.epsilon > 0.0) || params.max_iters < 1)
        throw InputError("descent parameters must be positive");

    const int n = g.order();
    FiedlerEstimate fe;
    fe.seed = seed;
    fe.v_tilde.assign(n, 1.0);
    fe.v_tilde[seed] = 0.0;
    std::vector<char> touched(n, 0);
    std::vector<double> next = fe.v_tilde;
    fe.status = DescentStatus::max_iters_exhausted;

    for (long t = 1; t <= params.max_iters; ++t) {
        double max_change = 0.0;
        double max_abs = 0.0;
        long touched_count = 0;
        for (int j = 0; j < n; ++j) {
            if (j == seed) continue;
            bool active = false;
            double neighbor_sum = 0.0;
            for (int k : g.neighbors(j)) {
                neighbor_sum += fe.v_tilde[k];
                active |= fe.v_tilde[k] < 1.0;
            }
            if (!active) {
                next[j] = fe.v_tilde[j];
                continue;
            }
            touched[j] = 1;
            next[j] = fe.v_tilde[j] +
                      params.delta * (neighbor_sum - (g.degree(j) - params.c) * fe.v_tilde[j]);
            max_change = std::max(max_change, std::abs(next[j] - fe.v_tilde[j]));
        }
        fe.v_tilde.swap(next);
        fe.iterations = t;
        for (int j = 0; j < n; ++j) {
            max_abs = std::max(max_abs, std::abs(fe.v_tilde[j]));
            touched_count += touched[j];
        }
        if (trace) {
            DescentTraceRow row;
            row.t = t;
            row.max_change = max_change;
            row.touched_count = touched_count;
            row.objective = soft_objective(g, seed, fe.v_tilde, params.c);
            trace->push_back(row);
        }
        if (max_abs > 1e3) {
            fe.status = DescentStatus::diverged;
            break;
        }
        if (max_change < params.epsilon) {
            fe.status = DescentStatus::converged;
            break;
        }
    }

    for (int j = 0; j < n; ++j)
        if (touched[j]) fe.touched.push_back(j);
    fe.final_objective = soft_objective(g, seed, fe.v_tilde, params.c);
    return fe;
}

std::vector<double> estimate_absorption_from_local(const FiedlerEstimate& fe,
                                                   std::optional<double> c_prime) {
    if (fe.status != DescentStatus::converged)
        throw std::invalid_argument("local estimate requires a converged descent");
    std::vector<double> scores = fe.v_tilde;
    if (c_prime) {
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (static_cast<int>(j) == fe.seed) continue;
            scores[j] = 1.0 + *c_prime * scores[j];
        }
    }
    scores[fe.seed] = 0.0;
    return scores;
}

double fit_c_prime(const FiedlerEstimate& fe, const std::vector<double>& reference) {
    if (reference.size() != fe.v_tilde.size())
        throw std::invalid_argument("reference vector length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < fe.v_tilde.size(); ++j) {
        if (static_cast<int>(j) == fe.seed) continue;
        num += fe.v_tilde[j] * (reference[j] - 1.0);
        den += fe.v_tilde[j] * fe.v_tilde[j];
    }
    if (den <= 0.0) throw NumericError("cannot fit scale to an all-zero profile");
    return num / den;
}

} // namespace abclust
