#pragma once

#include <Eigen/Dense>

#include "lapsel/cochain.hpp"
#include "lapsel/laplacian.hpp"

namespace lapsel {

/**
 * The m smallest eigenpairs of a combinatorial Laplacian. Eigenvalues are
 * ascending; eigenvector columns are orthonormal in the weighted inner
 * product and sign-fixed so the entry of largest magnitude is positive.
 */
struct Spectrum {
    int q = 0;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd vectors; // one column per eigenpair

    Cochain eigenvector(Eigen::Index i) const { return {q, vectors.col(i)}; }
};

struct EigsOptions {
    /// Problems of size <= dense_cutoff use a dense solver, larger ones a
    /// shift-invert Lanczos iteration; both honor the same residual bound.
    Eigen::Index dense_cutoff = 512;
    double residual_tol = 1e-8;
    int max_lanczos_dim = 600;
};

/**
 * The m smallest eigenpairs of L, solved on the symmetrized operator
 * W^{1/2} L W^{-1/2} so standard symmetric methods apply. Eigenvectors are
 * returned in cochain coordinates (y = W^{-1/2} u). Requires 1 <= m <= |S_q|;
 * throws ConvergenceFailure with residuals if tolerances cannot be met.
 */
Spectrum eigendecompose(const LaplacianOperator& L, int m, const SimplicialComplex& k,
                        const EigsOptions& options = {});

/**
 * Coordinates of the m-dimensional Laplacian eigenmap for q-simplices:
 * row per simplex, column i holding y_i(tau). With drop_first the leading
 * eigenvector is skipped and columns are y_2 ... y_{m+1}, the convention of
 * graph Laplacian eigenmaps that discards the trivial constant direction.
 */
Eigen::MatrixXd eigenmap(const SimplicialComplex& k, int q, int m, bool drop_first = false,
                         const EigsOptions& options = {});

} // namespace lapsel
