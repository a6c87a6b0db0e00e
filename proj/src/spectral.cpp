#include "abclust/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "abclust/errors.hpp"

namespace abclust {

void canonicalize_sign(Eigen::VectorXd& v) {
    const double scale = v.lpNorm<Eigen::Infinity>();
    if (scale == 0.0) return;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12 * scale) {
            if (v[i] < 0.0) v = -v;
            return;
        }
    }
}

Eigen::MatrixXd laplacian(const Graph& g) {
    const int n = g.order();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        l(i, i) = g.degree(i);
        for (int j : g.neighbors(i)) l(i, j) = -1.0;
    }
    return l;
}

Eigen::MatrixXd normalized_laplacian(const Graph& g) {
    const int n = g.order();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        if (g.degree(i) == 0)
            throw InputError("normalized Laplacian undefined for isolated vertex " +
                             std::to_string(g.label_of(i)));
    for (int i = 0; i < n; ++i) {
        l(i, i) = 1.0;
        const double di = g.degree(i);
        for (int j : g.neighbors(i)) l(i, j) = -1.0 / std::sqrt(di * g.degree(j));
    }
    return l;
}

std::vector<SpectralPair> eig_symmetric(const Eigen::MatrixXd& m, OperatorTag tag) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eig_symmetric: matrix not square");
    const double asym = (m - m.transpose()).lpNorm<Eigen::Infinity>();
    if (asym > 1e-10)
        throw std::invalid_argument("eig_symmetric: matrix asymmetric by " + std::to_string(asym));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver failed");

    const Eigen::Index n = m.rows();
    std::vector<SpectralPair> pairs;
    pairs.reserve(n);
    for (Eigen::Index i = n - 1; i >= 0; --i) { // solver sorts ascending
        SpectralPair pair;
        pair.value = solver.eigenvalues()[i];
        pair.vector = solver.eigenvectors().col(i);
        pair.tag = tag;
        canonicalize_sign(pair.vector);
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

Eigen::MatrixXd symmetrized_seed_deleted_walk(const Graph& g, const AbsorbingChain& chain) {
    const int k = chain.dim();
    Eigen::MatrixXd cq = Eigen::MatrixXd::Zero(k, k);
    for (int r = 0; r < k; ++r) {
        const double dr = g.degree(chain.vertex_of_row[r]);
        for (auto [col, prob] : chain.q[r]) {
            const double dc = g.degree(chain.vertex_of_row[col]);
            cq(r, col) = prob * std::sqrt(dr / dc);
        }
    }
    // symmetric up to roundoff by construction; make it exact for the solver
    return 0.5 * (cq + cq.transpose());
}

SpectrumIdentityReport spectrum_identity_check(const Graph& g, int seed) {
    const int n = g.order();
    const TransitionMatrix p = transition_matrix(g);
    const AbsorbingChain chain = absorbing_chain(p, seed);

    // Absorbing walk matrix: seed row becomes the unit row.
    Eigen::MatrixXd p_hat = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (auto [j, prob] : p.rows[i]) p_hat(i, j) = prob;
    p_hat.row(seed).setZero();
    p_hat(seed, seed) = 1.0;

    SpectrumIdentityReport report;

    Eigen::EigenSolver<Eigen::MatrixXd> general(p_hat, /*computeEigenvectors=*/false);
    if (general.info() != Eigen::Success) throw NumericError("general eigensolver failed");
    std::vector<double> spec_hat;
    spec_hat.reserve(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        report.max_imaginary_part =
            std::max(report.max_imaginary_part, std::abs(general.eigenvalues()[i].imag()));
        spec_hat.push_back(general.eigenvalues()[i].real());
    }
    std::sort(spec_hat.begin(), spec_hat.end());

    const Eigen::MatrixXd cq = symmetrized_seed_deleted_walk(g, chain);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sym(cq);
    std::vector<double> spec_q(sym.eigenvalues().data(), sym.eigenvalues().data() + chain.dim());
    spec_q.push_back(1.0);
    std::sort(spec_q.begin(), spec_q.end());

    for (std::size_t i = 0; i < spec_hat.size(); ++i)
        report.max_value_discrepancy =
            std::max(report.max_value_discrepancy, std::abs(spec_hat[i] - spec_q[i]));

    // Zero-extended eigenvectors of the seed-deleted matrix must still be
    // eigenvectors of the absorbing matrix.
    for (int i = 0; i < chain.dim(); ++i) {
        const double lambda = sym.eigenvalues()[i];
        Eigen::VectorXd extended = Eigen::VectorXd::Zero(n);
        for (int r = 0; r < chain.dim(); ++r) {
            const int v = chain.vertex_of_row[r];
            extended[v] = sym.eigenvectors()(r, i) / std::sqrt(static_cast<double>(g.degree(v)));
        }
        const double norm = extended.lpNorm<Eigen::Infinity>();
        const double residual = (p_hat * extended - lambda * extended).lpNorm<Eigen::Infinity>();
        report.max_extension_residual =
            std::max(report.max_extension_residual, residual / std::max(norm, 1e-300));
    }
    return report;
}

Eigen::VectorXd global_fiedler(const Graph& g, bool normalized) {
    const Eigen::MatrixXd l = normalized ? normalized_laplacian(g) : laplacian(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
    if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver failed");
    if (l.rows() < 2) throw InputError("Fiedler vector needs at least two vertices");
    const double second = solver.eigenvalues()[1];
    if (second <= 1e-9)
        throw NumericError("Laplacian kernel has dimension > 1 (graph disconnected)");
    Eigen::VectorXd fiedler = solver.eigenvectors().col(1);
    canonicalize_sign(fiedler);
    return fiedler;
}

double dirichlet_rayleigh(const Graph& g, int seed, const std::vector<double>& values) {
    if (values.size() != static_cast<std::size_t>(g.order()))
        throw std::invalid_argument("value vector length mismatch");
    if (values[seed] != 0.0) throw std::invalid_argument("seed value must be pinned to 0");
    double numerator = 0.0, denominator = 0.0;
    for (int u = 0; u < g.order(); ++u) {
        denominator += g.degree(u) * values[u] * values[u];
        for (int v : g.neighbors(u))
            if (u < v) numerator += (values[u] - values[v]) * (values[u] - values[v]);
    }
    if (denominator <= 0.0) throw NumericError("quotient undefined for the zero vector");
    return numerator / denominator;
}

DirichletFiedler dirichlet_fiedler_exact(const Graph& g, int seed) {
    const AbsorbingChain chain = absorbing_chain(g, seed);
    const Eigen::MatrixXd cq = symmetrized_seed_deleted_walk(g, chain);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cq);
    if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver failed");

    DirichletFiedler out;
    out.seed = seed;
    out.vertex_of_row = chain.vertex_of_row;
    const int k = chain.dim();
    out.lambda1 = solver.eigenvalues()[k - 1];
    out.u = solver.eigenvectors().col(k - 1);
    out.degenerate = out.lambda1 <= 1e-12;

    // Principal eigenvector of a nonnegative matrix: orient it nonnegative.
    if (out.u.sum() < 0.0) out.u = -out.u;
    out.v.resize(k);
    for (int r = 0; r < k; ++r)
        out.v[r] = out.u[r] / std::sqrt(static_cast<double>(g.degree(chain.vertex_of_row[r])));
    if (!out.degenerate && out.v.minCoeff() < -1e-10)
        throw NumericError("principal eigenvector is not entrywise nonnegative");
    return out;
}

} // namespace abclust
