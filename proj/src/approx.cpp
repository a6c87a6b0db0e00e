#include "abclust/approx.hpp"

#include <algorithm>
#include <cmath>

#include "abclust/errors.hpp"

namespace abclust {

SeriesEstimate absorption_series(const AbsorbingChain& chain, long cutoff) {
    if (cutoff < 0) throw InputError("series cutoff must be nonnegative");
    SeriesEstimate out;
    out.seed = chain.seed;
    out.cutoff = cutoff;
    out.vertex_of_row = chain.vertex_of_row;
    std::vector<double> term(chain.dim(), 1.0); // Q^0 1
    out.partial = term;
    for (long t = 1; t <= cutoff; ++t) {
        term = chain.apply(term);
        for (std::size_t i = 0; i < term.size(); ++i) out.partial[i] += term[i];
    }
    return out;
}

Rank1Estimate absorption_rank1(const DirichletFiedler& df, const std::vector<double>& degrees) {
    if (degrees.size() != static_cast<std::size_t>(df.v.size()))
        throw std::invalid_argument("degree vector length mismatch");
    if (df.lambda1 >= 1.0 - 1e-12)
        throw NumericError("principal eigenvalue is not below 1; chain is not absorbing");

    Rank1Estimate out;
    out.seed = df.seed;
    out.lambda1 = df.lambda1;
    out.vertex_of_row = df.vertex_of_row;
    double c1 = 0.0;
    for (Eigen::Index i = 0; i < df.v.size(); ++i) c1 += df.v[i] * degrees[i];
    out.c1 = c1;
    out.c_prime = df.lambda1 / (1.0 - df.lambda1) * c1;
    out.estimate.resize(df.v.size());
    for (Eigen::Index i = 0; i < df.v.size(); ++i) out.estimate[i] = 1.0 + out.c_prime * df.v[i];
    return out;
}

Rank1Estimate absorption_rank1(const DirichletFiedler& df, const Graph& g) {
    std::vector<double> degrees(df.vertex_of_row.size());
    for (std::size_t i = 0; i < degrees.size(); ++i)
        degrees[i] = g.degree(df.vertex_of_row[i]);
    return absorption_rank1(df, degrees);
}

namespace {

std::optional<double> pearson_of(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

CompareReport compare(const std::vector<double>& exact, const std::vector<double>& estimate) {
    if (exact.size() != estimate.size())
        throw std::invalid_argument("compare: vector lengths differ");
    if (exact.size() < 2) throw std::invalid_argument("compare: need at least two components");

    CompareReport report;
    double sse = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const double diff = estimate[i] - exact[i];
        sse += diff * diff;
        report.max_abs_diff = std::max(report.max_abs_diff, std::abs(diff));
    }
    report.sse_per_vertex = sse / static_cast<double>(exact.size() + 1);
    report.pearson = pearson_of(exact, estimate);
    return report;
}

std::vector<SeriesTraceRow> series_trace(const AbsorbingChain& chain,
                                         const std::vector<double>& exact, long max_cutoff) {
    if (exact.size() != static_cast<std::size_t>(chain.dim()))
        throw std::invalid_argument("series_trace: exact vector length mismatch");
    std::vector<SeriesTraceRow> rows;
    rows.reserve(max_cutoff + 1);
    std::vector<double> term(chain.dim(), 1.0);
    std::vector<double> partial = term;
    const double order = static_cast<double>(chain.n_total);
    for (long t = 0; t <= max_cutoff; ++t) {
        if (t > 0) {
            term = chain.apply(term);
            for (std::size_t i = 0; i < term.size(); ++i) partial[i] += term[i];
        }
        SeriesTraceRow row;
        row.cutoff = t;
        double sse = 0.0;
        for (std::size_t i = 0; i < partial.size(); ++i) {
            const double diff = partial[i] - exact[i];
            sse += diff * diff;
        }
        row.sse_per_vertex = sse / order;
        row.pearson = pearson_of(exact, partial);
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> spectrum_profile(const AbsorbingChain& chain, const Graph& g) {
    const Eigen::MatrixXd cq = symmetrized_seed_deleted_walk(g, chain);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cq);
    if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver failed");
    std::vector<double> spectrum(solver.eigenvalues().data(),
                                 solver.eigenvalues().data() + chain.dim());
    spectrum.push_back(1.0);
    std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
    return spectrum;
}

} // namespace abclust
