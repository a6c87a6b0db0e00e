#pragma once

#include <optional>
#include <vector>

#include "abclust/markov.hpp"
#include "abclust/spectral.hpp"

namespace abclust {

/// Truncated series of expected visit counts: sum_{t=0..T} Q^t 1, evaluated
/// by repeated sparse products. Componentwise nondecreasing in T and bounded
/// above by the exact absorption times.
struct SeriesEstimate {
    int seed = -1;
    long cutoff = 0;
    std::vector<int> vertex_of_row;
    std::vector<double> partial;
};

SeriesEstimate absorption_series(const AbsorbingChain& chain, long cutoff);

/// Rank-1 closed form 1 + lambda1/(1-lambda1) * v1 (v1 . d), built from the
/// principal seed-deleted eigenpair. c_prime is lambda1/(1-lambda1) * (v1 . d),
/// making the per-component form 1 + c_prime * v1_k.
struct Rank1Estimate {
    int seed = -1;
    double lambda1 = 0.0;
    double c1 = 0.0;      // v1 . d
    double c_prime = 0.0; // lambda1/(1-lambda1) * c1
    std::vector<int> vertex_of_row;
    std::vector<double> estimate;
};

/// `degrees` must be aligned with df.vertex_of_row. Rejects lambda1 >= 1.
Rank1Estimate absorption_rank1(const DirichletFiedler& df, const std::vector<double>& degrees);
Rank1Estimate absorption_rank1(const DirichletFiedler& df, const Graph& g);

/// Pearson correlation, sum of squared differences normalized by the graph
/// order (vector length + 1: vectors run over non-seed vertices only), and
/// max absolute difference. A constant exact vector leaves pearson unset.
struct CompareReport {
    std::optional<double> pearson;
    double sse_per_vertex = 0.0;
    double max_abs_diff = 0.0;
};

CompareReport compare(const std::vector<double>& exact, const std::vector<double>& estimate);

/// Per-cutoff comparison rows of the series against the exact vector.
struct SeriesTraceRow {
    long cutoff = 0;
    double sse_per_vertex = 0.0;
    std::optional<double> pearson;
};

std::vector<SeriesTraceRow> series_trace(const AbsorbingChain& chain,
                                         const std::vector<double>& exact, long max_cutoff);

/// Eigenvalues of the absorbing walk matrix in decreasing order: 1 followed
/// by the seed-deleted spectrum.
std::vector<double> spectrum_profile(const AbsorbingChain& chain, const Graph& g);

} // namespace abclust
