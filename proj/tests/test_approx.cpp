#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "abclust/approx.hpp"
#include "abclust/errors.hpp"
#include "testutil.hpp"

using namespace abclust;
using namespace abclust::testutil;

TEST_CASE("series partial sums, hand-checked") {
    const AbsorbingChain chain = absorbing_chain(path3(), 2);
    const SeriesEstimate t0 = absorption_series(chain, 0);
    CHECK(t0.partial[0] == doctest::Approx(1.0));
    CHECK(t0.partial[1] == doctest::Approx(1.0));
    const SeriesEstimate t1 = absorption_series(chain, 1);
    CHECK(t1.partial[0] == doctest::Approx(2.0));
    CHECK(t1.partial[1] == doctest::Approx(1.5));
    const SeriesEstimate t2 = absorption_series(chain, 2);
    CHECK(t2.partial[0] == doctest::Approx(2.5));
    CHECK(t2.partial[1] == doctest::Approx(2.0));

    const AbsorbingChain hub = absorbing_chain(star(5), 0);
    for (long cutoff : {0L, 3L, 50L})
        for (double v : absorption_series(hub, cutoff).partial) CHECK(v == 1.0);

    CHECK_THROWS_AS(absorption_series(chain, -1), InputError);
}

TEST_CASE("series is monotone and converges to the exact times") {
    Xoshiro256ss rng(13);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_index(20));
        const Graph g = random_connected_graph(n, 0.25, rng);
        const int seed = static_cast<int>(rng.uniform_index(n));
        const AbsorbingChain chain = absorbing_chain(g, seed);
        const AbsorptionVector exact = absorption_exact(chain);

        std::vector<double> term(chain.dim(), 1.0);
        std::vector<double> partial = term;
        for (long t = 1; t <= 200; ++t) {
            term = chain.apply(term);
            for (std::size_t i = 0; i < term.size(); ++i) {
                CHECK(term[i] >= 0.0);
                partial[i] += term[i];
                CHECK(partial[i] <= exact.m[i] + 1e-9);
            }
        }
    }
}

TEST_CASE("series reaches the exact vector within 1e-6 by T <= 1e4") {
    const Graph graphs[] = {gen_caveman(6, 5), builtin_karate().first, gen_gnp(100, 0.1, 7)};
    for (const Graph& g : graphs) {
        const AbsorbingChain chain = absorbing_chain(g, g.order() - 1);
        const AbsorptionVector exact = absorption_exact(chain);
        std::vector<double> term(chain.dim(), 1.0);
        std::vector<double> partial = term;
        long reached = -1;
        for (long t = 1; t <= 10000 && reached < 0; ++t) {
            term = chain.apply(term);
            double gap = 0.0;
            for (std::size_t i = 0; i < term.size(); ++i) {
                partial[i] += term[i];
                gap = std::max(gap, exact.m[i] - partial[i]);
            }
            if (gap <= 1e-6) reached = t;
        }
        CHECK(reached > 0);
    }
}

TEST_CASE("rank-1 estimate on symmetric cases") {
    const Rank1Estimate k4_est = absorption_rank1(dirichlet_fiedler_exact(k4(), 3), k4());
    // the non-principal directions carry no weight here, so the estimate is exact
    for (double v : k4_est.estimate) CHECK(v == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(k4_est.c_prime == doctest::Approx(2.0 * k4_est.c1).epsilon(1e-10));

    const Rank1Estimate star_est = absorption_rank1(dirichlet_fiedler_exact(star(5), 0), star(5));
    for (double v : star_est.estimate) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    DirichletFiedler fake;
    fake.lambda1 = 1.0;
    fake.v = Eigen::VectorXd::Ones(3);
    fake.vertex_of_row = {0, 1, 2};
    CHECK_THROWS_AS(absorption_rank1(fake, std::vector<double>{1.0, 1.0, 1.0}), NumericError);
}

TEST_CASE("rank-1 estimates stay above 1 and are exactly rank one") {
    Xoshiro256ss rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_index(20));
        const Graph g = random_connected_graph(n, 0.25, rng);
        const int seed = static_cast<int>(rng.uniform_index(n));
        const DirichletFiedler df = dirichlet_fiedler_exact(g, seed);
        const Rank1Estimate est = absorption_rank1(df, g);
        for (double v : est.estimate) CHECK(v >= 1.0 - 1e-10);
        // (est_j - 1) / (est_k - 1) must match v_j / v_k wherever defined
        int anchor = -1;
        for (int r = 0; r < df.v.size(); ++r)
            if (std::abs(df.v[r]) > 1e-8) {
                anchor = r;
                break;
            }
        REQUIRE(anchor >= 0);
        for (int r = 0; r < df.v.size(); ++r) {
            const double lhs = (est.estimate[r] - 1.0) * df.v[anchor];
            const double rhs = (est.estimate[anchor] - 1.0) * df.v[r];
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
    }
}

TEST_CASE("rank-1 correlation floor on the experiment graphs") {
    const Graph caveman = gen_caveman(6, 5);
    for (int seed = 0; seed < caveman.order(); ++seed) {
        const AbsorptionVector exact = absorption_exact(absorbing_chain(caveman, seed));
        const Rank1Estimate est = absorption_rank1(dirichlet_fiedler_exact(caveman, seed), caveman);
        CHECK(*compare(exact.m, est.estimate).pearson >= 0.99);
    }
    const auto [karate, truth] = builtin_karate();
    for (int seed : {0, 33, 16}) {
        const AbsorptionVector exact = absorption_exact(absorbing_chain(karate, seed));
        const Rank1Estimate est = absorption_rank1(dirichlet_fiedler_exact(karate, seed), karate);
        CHECK(*compare(exact.m, est.estimate).pearson >= 0.99);
    }
}

TEST_CASE("compare report") {
    const std::vector<double> exact{3.0, 4.0, 5.0, 6.0};
    const CompareReport same = compare(exact, exact);
    CHECK(*same.pearson == doctest::Approx(1.0));
    CHECK(same.sse_per_vertex == 0.0);
    CHECK(same.max_abs_diff == 0.0);

    std::vector<double> doubled;
    for (double v : exact) doubled.push_back(2.0 * v);
    const CompareReport scaled = compare(exact, doubled);
    CHECK(*scaled.pearson == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scaled.sse_per_vertex > 0.0);
    // normalization is by graph order = vector length + 1
    CHECK(scaled.sse_per_vertex ==
          doctest::Approx((9.0 + 16.0 + 25.0 + 36.0) / 5.0).epsilon(1e-12));
    CHECK(scaled.max_abs_diff == doctest::Approx(6.0));

    const CompareReport flat = compare({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0});
    CHECK_FALSE(flat.pearson.has_value());

    CHECK_THROWS_AS(compare({1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(compare({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("series trace matches per-cutoff comparisons") {
    const AbsorbingChain chain = absorbing_chain(path3(), 2);
    const AbsorptionVector exact = absorption_exact(chain);
    const auto rows = series_trace(chain, exact.m, 5);
    REQUIRE(rows.size() == 6);
    for (long t = 0; t <= 5; ++t) {
        const SeriesEstimate est = absorption_series(chain, t);
        const CompareReport report = compare(exact.m, est.partial);
        CHECK(rows[t].cutoff == t);
        CHECK(rows[t].sse_per_vertex == doctest::Approx(report.sse_per_vertex).epsilon(1e-12));
    }
    // error shrinks monotonically on the way to the exact vector
    for (std::size_t t = 1; t < rows.size(); ++t)
        CHECK(rows[t].sse_per_vertex <= rows[t - 1].sse_per_vertex + 1e-12);
}

TEST_CASE("caveman absorbing spectrum has its notable gap after the top six") {
    const Graph caveman = gen_caveman(6, 5);
    for (int seed : {0, 7, 13, 22, 29}) {
        const auto spectrum = spectrum_profile(absorbing_chain(caveman, seed), caveman);
        double intra_top6 = 0.0;
        for (int i = 0; i + 1 < 6; ++i) intra_top6 = std::max(intra_top6, spectrum[i] - spectrum[i + 1]);
        const double after_top6 = spectrum[5] - spectrum[6];
        CHECK(after_top6 > 2.0 * intra_top6);
    }
}
