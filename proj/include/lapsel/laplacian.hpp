#pragma once

#include <Eigen/Sparse>

#include "lapsel/boundary.hpp"
#include "lapsel/cochain.hpp"
#include "lapsel/complex.hpp"

namespace lapsel {

enum class LaplacianParts { Up, Down, Both };

/**
 * Combinatorial Laplacian at dimension q, self-adjoint in the weighted
 * inner product <f, g>_K = f^T W g.
 *
 * Internally holds the symmetric positive semidefinite form matrix
 * M = W L (so L = W^{-1} M), which is what scores and eigensolvers need:
 *   <f, L f>_K = f^T M f,   W^{1/2} L W^{-1/2} = W^{-1/2} M W^{-1/2}.
 */
class LaplacianOperator {
public:
    LaplacianOperator(int q, Eigen::SparseMatrix<double> form, Eigen::VectorXd weights);

    int q() const { return q_; }
    Eigen::Index size() const { return form_.rows(); }

    /// M = W L, symmetric PSD.
    const Eigen::SparseMatrix<double>& form_matrix() const { return form_; }

    /// Weights w_q of the underlying q-simplices.
    const Eigen::VectorXd& simplex_weights() const { return weights_; }

    /// L f = W^{-1} (M f).
    Eigen::VectorXd apply(const Eigen::VectorXd& f) const;
    Cochain apply(const Cochain& f) const;

    /// f^T M f = <f, L f>_K.
    double quadratic_form(const Eigen::VectorXd& f) const;

    /// f^T W f = <f, f>_K.
    double weighted_norm2(const Eigen::VectorXd& f) const;

    /// The operator matrix L = W^{-1} M (built on demand).
    Eigen::SparseMatrix<double> operator_matrix() const;

    /// Symmetrized operator W^{-1/2} M W^{-1/2} = W^{1/2} L W^{-1/2}.
    Eigen::SparseMatrix<double> symmetrized_matrix() const;

private:
    int q_;
    Eigen::SparseMatrix<double> form_;
    Eigen::VectorXd weights_;
};

/**
 * Assembles L^(q) from sparse boundary matrices and diagonal weights:
 *   up part   W_q^{-1} B_{q+1} W_{q+1} B_{q+1}^T
 *   down part B_q^T W_{q-1}^{-1} B_q W_q
 * The up part is the zero operator when S_{q+1} is empty; the down part
 * requires q >= 1. Requires computed weights (MissingWeights) and a
 * nonempty S_q (NoSimplicesAtDimension).
 */
LaplacianOperator assemble_laplacian(const SimplicialComplex& k, int q,
                                     LaplacianParts parts = LaplacianParts::Both);

/**
 * Applies L^(q) to f term by term over face/coface incidences, without any
 * assembled matrix. Exists as an independent route so assembly and the
 * elementwise definition can cross-check each other; same contract as
 * multiplying by the assembled operator.
 */
Cochain apply_laplacian_direct(const SimplicialComplex& k, int q, const Cochain& f,
                               LaplacianParts parts = LaplacianParts::Both);

/**
 * Combinatorial Laplacian score <f~, L f~>_K / <f~, f~>_K where f~ is the
 * centered cochain. Throws ZeroVarianceFeature when the centered norm falls
 * below the 1e-12 relative threshold (constant feature). The value always
 * lies between the smallest and largest eigenvalues of L.
 */
double rayleigh_score(const Cochain& f, const LaplacianOperator& L, const SimplicialComplex& k);

} // namespace lapsel
