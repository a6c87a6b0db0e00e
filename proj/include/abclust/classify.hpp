#pragma once

#include <span>
#include <string>
#include <vector>

#include "abclust/descent.hpp"
#include "abclust/graph.hpp"

namespace abclust {

/// Optimal 1-D 2-means split (minimum total within-class sum of squares over
/// all sorted split points). Label 0 marks the low-mean class ("cluster").
/// Invariant under positive affine transforms of the scores.
struct TwoMeansResult {
    std::vector<int> labels;
    double threshold = 0.0; // midpoint of the boundary pair
};

TwoMeansResult two_means_1d(std::span<const double> values);

/// Bipartition with quality metrics. `members` holds internal vertex ids.
/// low_quality marks cuts with no real cluster structure behind them
/// (singleton cluster, or normalized cut >= 1).
struct CutResult {
    std::vector<int> members;
    long long capacity = 0;
    double vol_s = 0.0;
    double vol_sbar = 0.0;
    double ncut = 0.0;
    double threshold = 0.0;
    bool low_quality = false;
    std::string method;
    std::string classifier;
};

/// Edges crossing the cut; s_set must be a nonempty proper subset.
long long cut_capacity(const Graph& g, const std::vector<int>& s_set);

/// capacity/vol(S) + capacity/vol(complement); always in [0, 2].
double normalized_cut(const Graph& g, const std::vector<int>& s_set);

/// Classic spectral bisection: S = components above the median, values at
/// the median join the smaller side. Degenerate when one side ends empty.
CutResult bipartition_by_median(const Graph& g, std::span<const double> fiedler_values);

enum class ScoreMethod { exact_absorption, rank1, series, local_descent };
enum class ScoreClassifier { kmeans, median };

struct LocalClusterOptions {
    long series_cutoff = 100;           // for ScoreMethod::series
    DescentParams descent;              // for ScoreMethod::local_descent
    bool descent_params_set = false;    // false -> heuristic from mean degree
};

/// End-to-end pipeline: score every vertex by proximity to the seed (the
/// seed itself scored 0), two-classify, and return the low-score side with
/// the seed forced in. Throws DegenerateError when the non-seed scores carry
/// no information (all equal).
CutResult local_cluster(const Graph& g, int seed, ScoreMethod method,
                        ScoreClassifier classifier, const LocalClusterOptions& options = {});

/// Score vector used by local_cluster (seed entry 0).
std::vector<double> cluster_scores(const Graph& g, int seed, ScoreMethod method,
                                   const LocalClusterOptions& options = {});

const char* to_string(ScoreMethod method);
const char* to_string(ScoreClassifier classifier);

} // namespace abclust
