#include "abclust/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "abclust/approx.hpp"
#include "abclust/errors.hpp"
#include "abclust/markov.hpp"

namespace abclust {

TwoMeansResult two_means_1d(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("two_means_1d: need at least two values");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        throw DegenerateError("two_means_1d: all values equal, no split exists");

    // Prefix sums make every split's within-class sum of squares O(1):
    // SS(first k) = sum x^2 - (sum x)^2 / k.
    std::vector<double> prefix(n + 1, 0.0), prefix_sq(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        prefix[i + 1] = prefix[i] + sorted[i];
        prefix_sq[i + 1] = prefix_sq[i] + sorted[i] * sorted[i];
    }
    double best_sse = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (sorted[k - 1] == sorted[k]) continue; // split must separate distinct values
        const double low = prefix_sq[k] - prefix[k] * prefix[k] / static_cast<double>(k);
        const double high_sum = prefix[n] - prefix[k];
        const double high =
            prefix_sq[n] - prefix_sq[k] - high_sum * high_sum / static_cast<double>(n - k);
        const double sse = low + high;
        if (sse < best_sse) {
            best_sse = sse;
            best_k = k;
        }
    }

    TwoMeansResult result;
    result.threshold = 0.5 * (sorted[best_k - 1] + sorted[best_k]);
    result.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.labels[i] = values[i] > result.threshold ? 1 : 0;
    return result;
}

namespace {

std::vector<char> membership_mask(const Graph& g, const std::vector<int>& s_set) {
    std::vector<char> in_s(g.order(), 0);
    for (int v : s_set) {
        if (v < 0 || v >= g.order()) throw std::invalid_argument("vertex id out of range");
        in_s[v] = 1;
    }
    int size = 0;
    for (char f : in_s) size += f;
    if (size == 0 || size == g.order())
        throw std::invalid_argument("cut side must be a nonempty proper subset");
    return in_s;
}

struct CutMetrics {
    long long capacity = 0;
    double vol_s = 0.0;
    double vol_sbar = 0.0;
    double ncut = 0.0;
};

CutMetrics cut_metrics(const Graph& g, const std::vector<char>& in_s) {
    CutMetrics metrics;
    for (int u = 0; u < g.order(); ++u) {
        if (in_s[u])
            metrics.vol_s += g.degree(u);
        else
            metrics.vol_sbar += g.degree(u);
        for (int v : g.neighbors(u))
            if (u < v && in_s[u] != in_s[v]) ++metrics.capacity;
    }
    metrics.ncut = static_cast<double>(metrics.capacity) / metrics.vol_s +
                   static_cast<double>(metrics.capacity) / metrics.vol_sbar;
    return metrics;
}

} // namespace

long long cut_capacity(const Graph& g, const std::vector<int>& s_set) {
    return cut_metrics(g, membership_mask(g, s_set)).capacity;
}

double normalized_cut(const Graph& g, const std::vector<int>& s_set) {
    return cut_metrics(g, membership_mask(g, s_set)).ncut;
}

namespace {

CutResult build_cut(const Graph& g, const std::vector<char>& in_s, double threshold) {
    CutResult cut;
    for (int v = 0; v < g.order(); ++v)
        if (in_s[v]) cut.members.push_back(v);
    if (cut.members.empty() || static_cast<int>(cut.members.size()) == g.order())
        throw DegenerateError("classification produced an empty or full cluster");
    const CutMetrics metrics = cut_metrics(g, in_s);
    cut.capacity = metrics.capacity;
    cut.vol_s = metrics.vol_s;
    cut.vol_sbar = metrics.vol_sbar;
    cut.ncut = metrics.ncut;
    cut.threshold = threshold;
    cut.low_quality = cut.members.size() <= 1 || cut.ncut >= 1.0;
    return cut;
}

} // namespace

CutResult bipartition_by_median(const Graph& g, std::span<const double> fiedler_values) {
    if (fiedler_values.size() != static_cast<std::size_t>(g.order()))
        throw std::invalid_argument("value vector length mismatch");
    if (g.order() < 2) throw std::invalid_argument("need at least two vertices");

    std::vector<double> sorted(fiedler_values.begin(), fiedler_values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median =
        (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    int above = 0, below = 0;
    for (double v : fiedler_values) {
        if (v > median) ++above;
        if (v < median) ++below;
    }
    const bool ties_join_above = above < below; // ties go to the smaller side
    std::vector<char> in_s(g.order(), 0);
    for (int v = 0; v < g.order(); ++v) {
        if (fiedler_values[v] > median)
            in_s[v] = 1;
        else if (fiedler_values[v] == median && ties_join_above)
            in_s[v] = 1;
    }
    return build_cut(g, in_s, median);
}

std::vector<double> cluster_scores(const Graph& g, int seed, ScoreMethod method,
                                   const LocalClusterOptions& options) {
    if (seed < 0 || seed >= g.order()) throw InputError("seed out of range");
    std::vector<double> scores(g.order(), 0.0);
    auto scatter = [&](const std::vector<int>& vertex_of_row, const std::vector<double>& values) {
        for (std::size_t r = 0; r < values.size(); ++r) scores[vertex_of_row[r]] = values[r];
    };
    switch (method) {
        case ScoreMethod::exact_absorption: {
            const AbsorptionVector m = absorption_exact(absorbing_chain(g, seed));
            scatter(m.vertex_of_row, m.m);
            break;
        }
        case ScoreMethod::rank1: {
            const Rank1Estimate est = absorption_rank1(dirichlet_fiedler_exact(g, seed), g);
            scatter(est.vertex_of_row, est.estimate);
            break;
        }
        case ScoreMethod::series: {
            const SeriesEstimate est =
                absorption_series(absorbing_chain(g, seed), options.series_cutoff);
            scatter(est.vertex_of_row, est.partial);
            break;
        }
        case ScoreMethod::local_descent: {
            const DescentParams params = options.descent_params_set
                                             ? options.descent
                                             : default_descent_params(g.average_degree());
            const FiedlerEstimate fe = descend(g, seed, params);
            if (fe.status == DescentStatus::diverged)
                throw NumericError("gradient descent diverged");
            scores = fe.v_tilde; // seed already 0
            break;
        }
    }
    scores[seed] = 0.0;
    return scores;
}

CutResult local_cluster(const Graph& g, int seed, ScoreMethod method,
                        ScoreClassifier classifier, const LocalClusterOptions& options) {
    const std::vector<double> scores = cluster_scores(g, seed, method, options);

    // No spread among non-seed scores means nothing to classify.
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int v = 0; v < g.order(); ++v) {
        if (v == seed) continue;
        lo = std::min(lo, scores[v]);
        hi = std::max(hi, scores[v]);
    }
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi)))
        throw DegenerateError("all non-seed scores are equal");

    std::vector<char> in_s(g.order(), 0);
    double threshold = 0.0;
    if (classifier == ScoreClassifier::kmeans) {
        const TwoMeansResult split = two_means_1d(scores);
        threshold = split.threshold;
        for (int v = 0; v < g.order(); ++v) in_s[v] = split.labels[v] == 0;
    } else {
        std::vector<double> sorted(scores.begin(), scores.end());
        std::sort(sorted.begin(), sorted.end());
        const std::size_t n = sorted.size();
        threshold = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
        int below = 0, above = 0;
        for (double v : scores) {
            if (v < threshold) ++below;
            if (v > threshold) ++above;
        }
        const bool ties_join_low = below < above; // ties go to the smaller side
        for (int v = 0; v < g.order(); ++v) {
            if (scores[v] < threshold)
                in_s[v] = 1;
            else if (scores[v] == threshold && ties_join_low)
                in_s[v] = 1;
        }
    }
    in_s[seed] = 1; // the seed belongs to its own cluster no matter what

    CutResult cut = build_cut(g, in_s, threshold);
    cut.method = to_string(method);
    cut.classifier = to_string(classifier);
    return cut;
}

const char* to_string(ScoreMethod method) {
    switch (method) {
        case ScoreMethod::exact_absorption: return "exact-absorption";
        case ScoreMethod::rank1: return "rank1";
        case ScoreMethod::series: return "series";
        case ScoreMethod::local_descent: return "local-descent";
    }
    return "?";
}

const char* to_string(ScoreClassifier classifier) {
    return classifier == ScoreClassifier::kmeans ? "kmeans" : "median";
}

} // namespace abclust
