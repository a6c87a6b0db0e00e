#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "abclust/errors.hpp"
#include "abclust/markov.hpp"
#include "testutil.hpp"

using namespace abclust;
using namespace abclust::testutil;

namespace {

double entry(const TransitionMatrix& p, int i, int j) {
    for (auto [col, prob] : p.rows[i])
        if (col == j) return prob;
    return 0.0;
}

double q_entry(const AbsorbingChain& chain, int r, int c) {
    for (auto [col, prob] : chain.q[r])
        if (col == c) return prob;
    return 0.0;
}

std::vector<double> residual(const AbsorbingChain& chain, const std::vector<double>& m) {
    std::vector<double> qm = chain.apply(m);
    std::vector<double> r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = m[i] - qm[i] - 1.0;
    return r;
}

} // namespace

TEST_CASE("transition matrix entries") {
    const TransitionMatrix edge = transition_matrix(make_graph(2, {{0, 1}}));
    CHECK(entry(edge, 0, 1) == 1.0);
    CHECK(entry(edge, 1, 0) == 1.0);
    CHECK(entry(edge, 0, 0) == 0.0);

    const TransitionMatrix path = transition_matrix(path3());
    CHECK(entry(path, 1, 0) == doctest::Approx(0.5));
    CHECK(entry(path, 1, 2) == doctest::Approx(0.5));
    CHECK(entry(path, 1, 1) == 0.0);

    const TransitionMatrix complete = transition_matrix(k4());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(entry(complete, i, j) == doctest::Approx(i == j ? 0.0 : 1.0 / 3.0));

    CHECK_THROWS_AS(transition_matrix(make_graph(3, {{0, 1}})), InputError); // isolated vertex
}

TEST_CASE("lazy walk") {
    const TransitionMatrix edge = transition_matrix(make_graph(2, {{0, 1}}));
    const TransitionMatrix lazy = lazy_walk(edge);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(entry(lazy, i, j) == doctest::Approx(0.5));
    CHECK(lazy.max_row_sum_error() <= 1e-12);

    const TransitionMatrix twice = lazy_walk(lazy);
    CHECK(entry(twice, 0, 0) >= 0.75);
    CHECK(entry(twice, 1, 1) >= 0.75);
    CHECK(twice.max_row_sum_error() <= 1e-12);
}

TEST_CASE("lazy walk maps the K4 eigenvalue -1/3 to 1/3") {
    // K4 is regular, so the walk matrix itself is symmetric and we can read
    // the spectrum off a dense symmetric solve.
    const TransitionMatrix lazy = lazy_walk(transition_matrix(k4()));
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        for (auto [j, prob] : lazy.rows[i]) dense(i, j) = prob;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    CHECK(solver.eigenvalues()[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(solver.eigenvalues()[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("absorbing chain structure") {
    // path 1-2-3 with seed 3: remaining walk is over {1,2}
    const AbsorbingChain chain = absorbing_chain(path3(), 2);
    CHECK(chain.dim() == 2);
    CHECK(q_entry(chain, 0, 1) == doctest::Approx(1.0));
    CHECK(q_entry(chain, 1, 0) == doctest::Approx(0.5));
    CHECK(q_entry(chain, 0, 0) == 0.0);
    CHECK(q_entry(chain, 1, 1) == 0.0);

    const AbsorbingChain k4_chain = absorbing_chain(k4(), 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(q_entry(k4_chain, r, c) == doctest::Approx(r == c ? 0.0 : 1.0 / 3.0));

    const AbsorbingChain star_chain = absorbing_chain(star(5), 0);
    for (const auto& row : star_chain.q) CHECK(row.empty());

    CHECK_THROWS_AS(absorbing_chain(k4(), 7), InputError);

    // index map is a bijection over non-seed vertices
    std::map<int, int> seen;
    for (int r = 0; r < k4_chain.dim(); ++r) seen[k4_chain.vertex_of_row[r]] = r;
    CHECK(seen.size() == 3);
    for (auto [v, r] : seen) CHECK(k4_chain.row_of_vertex[v] == r);
    CHECK(k4_chain.row_of_vertex[3] == -1);
}

TEST_CASE("seed-deleted rows are sub-stochastic, strictly so next to the seed") {
    Xoshiro256ss rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(28));
        const Graph g = random_connected_graph(n, 0.2, rng);
        const int seed = static_cast<int>(rng.uniform_index(n));
        const AbsorbingChain chain = absorbing_chain(g, seed);
        int deficient_rows = 0;
        for (int r = 0; r < chain.dim(); ++r) {
            double row_sum = 0.0;
            for (auto [col, prob] : chain.q[r]) row_sum += prob;
            CHECK(row_sum <= 1.0 + 1e-12);
            const bool next_to_seed = g.has_edge(chain.vertex_of_row[r], seed);
            if (next_to_seed) CHECK(row_sum < 1.0);
            deficient_rows += row_sum < 1.0;
        }
        CHECK(deficient_rows >= 1);
    }
}

TEST_CASE("exact absorption times") {
    const AbsorptionVector path_m = absorption_exact(absorbing_chain(path3(), 2));
    CHECK(path_m.m[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(path_m.m[1] == doctest::Approx(3.0).epsilon(1e-12));

    const AbsorptionVector k4_m = absorption_exact(absorbing_chain(k4(), 3));
    for (double v : k4_m.m) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));

    const AbsorptionVector c4_m = absorption_exact(absorbing_chain(c4(), 3));
    // classical k(n-k) for a cycle: neighbors take 3 steps, the far vertex 4
    CHECK(c4_m.m[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(c4_m.m[1] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(c4_m.m[2] == doctest::Approx(3.0).epsilon(1e-12));

    const AbsorptionVector star_m = absorption_exact(absorbing_chain(star(6), 0));
    for (double v : star_m.m) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("absorption solver honors the residual contract") {
    Xoshiro256ss rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_index(27));
        const Graph g = random_connected_graph(n, 0.15, rng);
        const int seed = static_cast<int>(rng.uniform_index(n));
        const AbsorbingChain chain = absorbing_chain(g, seed);
        const AbsorptionVector m = absorption_exact(chain);
        for (double r : residual(chain, m.m)) CHECK(std::abs(r) <= 1e-8);
        for (double v : m.m) CHECK(v >= 1.0 - 1e-9);
        // independent dense oracle
        const std::vector<double> oracle = dense_absorption_oracle(g, seed);
        for (std::size_t i = 0; i < oracle.size(); ++i)
            CHECK(m.m[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
    }
}

TEST_CASE("disconnected input is rejected by the solver") {
    const Graph disjoint = make_graph(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(absorption_exact(absorbing_chain(disjoint, 0)), NumericError);
}

TEST_CASE("absorption matrix layout") {
    const Graph g = gen_caveman(3, 4);
    const auto matrix = absorption_matrix(g);
    for (int i = 0; i < g.order(); ++i) CHECK(matrix[i][i] == 0.0);
    const AbsorptionVector column = absorption_exact(absorbing_chain(g, 5));
    for (int r = 0; r < static_cast<int>(column.m.size()); ++r)
        CHECK(matrix[column.vertex_of_row[r]][5] == column.m[r]);

    const auto parallel = absorption_matrix(g, 3);
    CHECK(parallel == matrix);
}

TEST_CASE("laziness exactly doubles absorption times") {
    for (const Graph& g : {path3(), k4(), c4()}) {
        for (int seed = 0; seed < g.order(); ++seed) {
            const TransitionMatrix p = transition_matrix(g);
            const AbsorptionVector plain = absorption_exact(absorbing_chain(p, seed));
            const AbsorptionVector lazy = absorption_exact(absorbing_chain(lazy_walk(p), seed));
            for (std::size_t i = 0; i < plain.m.size(); ++i)
                CHECK(lazy.m[i] == doctest::Approx(2.0 * plain.m[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("row stochasticity on random graphs") {
    Xoshiro256ss rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(28));
        const Graph g = random_connected_graph(n, 0.2, rng);
        CHECK(transition_matrix(g).max_row_sum_error() <= 1e-12);
        CHECK(lazy_walk(transition_matrix(g)).max_row_sum_error() <= 1e-12);
    }
}

TEST_CASE("monte carlo simulation") {
    const SimulationResult leaf = simulate_absorption(star(5), 0, 1, 2000, 1000000, 9);
    CHECK(leaf.mean == 1.0);
    CHECK(leaf.stderr_of_mean == 0.0);
    CHECK(leaf.truncated == 0);
    CHECK(leaf.completed == 2000);

    const SimulationResult k4_sim = simulate_absorption(k4(), 3, 0, 100000, 1000000, 7);
    CHECK(k4_sim.truncated == 0);
    CHECK(std::abs(k4_sim.mean - 3.0) <= 4.0 * k4_sim.stderr_of_mean);

    const SimulationResult path_sim = simulate_absorption(path3(), 2, 0, 100000, 1000000, 7);
    CHECK(std::abs(path_sim.mean - 4.0) <= 4.0 * path_sim.stderr_of_mean);

    // deterministic under a fixed seed, and the seed matters
    const SimulationResult again = simulate_absorption(k4(), 3, 0, 100000, 1000000, 7);
    CHECK(again.mean == k4_sim.mean);
    CHECK(again.stderr_of_mean == k4_sim.stderr_of_mean);

    CHECK_THROWS_AS(simulate_absorption(k4(), 3, 3, 10, 100, 1), InputError);
}

TEST_CASE("lazy simulation doubles expected absorption") {
    // leaf -> hub under the lazy walk: geometric number of coin flips, mean 2
    const SimulationResult lazy_leaf =
        simulate_absorption(star(5), 0, 1, 50000, 1000000, 13, /*lazy=*/true);
    CHECK(std::abs(lazy_leaf.mean - 2.0) <= 4.0 * lazy_leaf.stderr_of_mean);

    const SimulationResult lazy_k4 =
        simulate_absorption(k4(), 3, 0, 50000, 1000000, 13, /*lazy=*/true);
    CHECK(std::abs(lazy_k4.mean - 6.0) <= 4.0 * lazy_k4.stderr_of_mean);
}

TEST_CASE("truncation is reported, not dropped silently") {
    // a 2-step cap on the path forces some walks from the far end to truncate
    const SimulationResult sim = simulate_absorption(path3(), 2, 0, 5000, 2, 21);
    CHECK(sim.truncated > 0);
    CHECK(sim.completed + sim.truncated == 5000);
    // completed walks from vertex 1 need exactly 2 steps: 1 -> 2 -> 3
    CHECK(sim.mean == 2.0);
}
