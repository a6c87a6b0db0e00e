#pragma once

#include <Eigen/Dense>

#include <vector>

#include "abclust/graph.hpp"
#include "abclust/markov.hpp"

namespace abclust {

/// Which operator a spectral pair belongs to.
enum class OperatorTag {
    generic,
    laplacian,                 // D - A
    normalized_laplacian,      // I - D^{-1/2} A D^{-1/2}
    walk,                      // D^{-1} A
    symmetrized_walk,          // D^{-1/2} A D^{-1/2}
    seed_deleted_walk,         // walk matrix minus seed row/column
    symmetrized_seed_deleted_walk,
    dirichlet_laplacian,       // Laplacian minus seed row/column
    normalized_dirichlet_laplacian,
};

struct SpectralPair {
    double value = 0.0;
    Eigen::VectorXd vector; // unit 2-norm, first nonzero component positive
    OperatorTag tag = OperatorTag::generic;
};

/// Combinatorial Laplacian D - A as a dense matrix.
Eigen::MatrixXd laplacian(const Graph& g);

/// Normalized Laplacian I - D^{-1/2} A D^{-1/2}; rejects isolated vertices.
Eigen::MatrixXd normalized_laplacian(const Graph& g);

/// Dense symmetric eigendecomposition, pairs sorted by descending eigenvalue.
/// Rejects matrices that are asymmetric beyond 1e-10. The returned system
/// reconstructs the input to 1e-7 in max norm.
std::vector<SpectralPair> eig_symmetric(const Eigen::MatrixXd& m,
                                        OperatorTag tag = OperatorTag::generic);

/// Evidence that deleting the seed row/column only removes the eigenvalue 1:
/// compares the spectrum of the absorbing walk matrix (general dense solver)
/// against {1} plus the seed-deleted spectrum (symmetric solver), and checks
/// that every seed-deleted eigenvector, zero-extended at the seed, is still
/// an eigenvector of the absorbing matrix.
struct SpectrumIdentityReport {
    double max_value_discrepancy = 0.0; // sorted multiset mismatch
    double max_imaginary_part = 0.0;    // from the general solver
    double max_extension_residual = 0.0;
    bool matches(double tol = 1e-7) const {
        return max_value_discrepancy <= tol && max_imaginary_part <= tol &&
               max_extension_residual <= tol;
    }
};

SpectrumIdentityReport spectrum_identity_check(const Graph& g, int seed);

/// Eigenvector for the smallest nonzero eigenvalue of the (normalized)
/// Laplacian; sign fixed so the first nonzero component is positive.
/// Rejects disconnected graphs (kernel dimension > 1).
Eigen::VectorXd global_fiedler(const Graph& g, bool normalized);

/// Principal eigenpair of the seed-deleted symmetrized walk matrix:
/// u is its unit eigenvector, v = D^{-1/2} u the corresponding eigenvector
/// of the seed-deleted walk matrix, sign-normalized entrywise nonnegative.
/// `degenerate` marks lambda1 == 0 (seed absorbs in one forced step).
struct DirichletFiedler {
    int seed = -1;
    double lambda1 = 0.0;
    std::vector<int> vertex_of_row;
    Eigen::VectorXd u;
    Eigen::VectorXd v;
    bool degenerate = false;
};

DirichletFiedler dirichlet_fiedler_exact(const Graph& g, int seed);

/// Degree-weighted Rayleigh quotient sum_{edges jk} (v_j - v_k)^2 over
/// sum_j deg(j) v_j^2 for a per-vertex vector with v[seed] = 0. Evaluates to
/// 1 - lambda1 at the exact Dirichlet-Fiedler vector; useful for judging how
/// close a locally computed profile comes to that optimum.
double dirichlet_rayleigh(const Graph& g, int seed, const std::vector<double>& values);

/// Dense symmetrized seed-deleted walk matrix (rows follow chain ordering).
Eigen::MatrixXd symmetrized_seed_deleted_walk(const Graph& g, const AbsorbingChain& chain);

/// Flip the sign so the first component above 1e-12 * ||v||_inf is positive.
void canonicalize_sign(Eigen::VectorXd& v);

} // namespace abclust
