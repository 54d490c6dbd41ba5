#include "lapsel/spectrum.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <string>

#include "lapsel/rng.hpp"

namespace lapsel {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

// Fixed pseudo-random start vector so iterative results are reproducible
// across runs, platforms, and thread counts.
Eigen::VectorXd deterministic_vector(Eigen::Index n, std::uint64_t salt) {
    std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ (salt * 0xda942042e4dd58b5ULL + 0x9441de4225eull) ^
                          static_cast<std::uint64_t>(n);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53 - 0.5;
    }
    return v;
}

struct SymmetricEigs {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // orthonormal columns
};

// m smallest eigenpairs of sparse symmetric PSD S by shift-invert Lanczos
// with full reorthogonalization. Deterministic; throws ConvergenceFailure
// when the residual bound cannot be met within the Krylov budget.
SymmetricEigs lanczos_smallest(const SpMat& s, int m, const EigsOptions& options) {
    const Eigen::Index n = s.rows();
    double max_diag = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(s.coeff(i, i)));
    const double sigma = std::max(1e-8, 1e-3 * max_diag);

    SpMat shifted = s;
    SpMat identity(n, n);
    identity.setIdentity();
    shifted += sigma * identity;
    Eigen::SimplicialLDLT<SpMat> solver;
    solver.compute(shifted);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("LDLT factorization failed in the eigensolver");
    }

    const int k_cap = static_cast<int>(
        std::min<Eigen::Index>(n, std::max<Eigen::Index>(options.max_lanczos_dim, 2 * m + 20)));
    int k_dim = std::min<int>(k_cap, std::max(2 * m + 16, 36));
    double worst_residual = 0.0;

    for (;;) {
        Eigen::MatrixXd basis(n, k_dim);
        Eigen::VectorXd alpha = Eigen::VectorXd::Zero(k_dim);
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(k_dim); // beta[j] couples j and j+1
        std::uint64_t restart_salt = 1;

        Eigen::VectorXd v = deterministic_vector(n, 0);
        v.normalize();
        basis.col(0) = v;

        for (int j = 0; j < k_dim; ++j) {
            Eigen::VectorXd w = solver.solve(basis.col(j));
            alpha[j] = basis.col(j).dot(w);
            // Full reorthogonalization, applied twice.
            auto active = basis.leftCols(j + 1);
            w -= active * (active.transpose() * w);
            w -= active * (active.transpose() * w);
            if (j + 1 == k_dim) break;
            double norm = w.norm();
            if (norm < 1e-13) {
                // Invariant subspace exhausted: restart with a fresh
                // deterministic direction (block boundary, beta stays 0).
                do {
                    w = deterministic_vector(n, restart_salt++);
                    w -= active * (active.transpose() * w);
                    w -= active * (active.transpose() * w);
                    norm = w.norm();
                } while (norm < 1e-13);
                beta[j] = 0.0;
            } else {
                beta[j] = norm;
            }
            basis.col(j + 1) = w / norm;
        }

        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k_dim, k_dim);
        for (int j = 0; j < k_dim; ++j) {
            tri(j, j) = alpha[j];
            if (j + 1 < k_dim && beta[j] != 0.0) {
                tri(j, j + 1) = beta[j];
                tri(j + 1, j) = beta[j];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri_eigs(tri);

        // Largest Ritz values of (S + sigma I)^{-1} give the smallest of S.
        SymmetricEigs out;
        out.values.resize(m);
        out.vectors.resize(n, m);
        bool converged = true;
        worst_residual = 0.0;
        for (int i = 0; i < m; ++i) {
            const int col = k_dim - 1 - i;
            const double theta = tri_eigs.eigenvalues()[col];
            double lambda = theta > 0.0 ? 1.0 / theta - sigma : 1.0 / std::max(theta, 1e-300);
            Eigen::VectorXd u = basis * tri_eigs.eigenvectors().col(col);
            u.normalize();
            // Rayleigh refinement of the eigenvalue in the original problem.
            lambda = u.dot(s * u);
            const double residual = (s * u - lambda * u).norm();
            worst_residual = std::max(worst_residual, residual);
            if (residual > options.residual_tol * std::max(1.0, std::abs(lambda))) {
                converged = false;
            }
            out.values[m - 1 - i] = lambda;
            out.vectors.col(m - 1 - i) = u;
        }
        if (converged) {
            // Ascending by construction up to degeneracies; enforce exactly.
            std::vector<int> order(m);
            for (int i = 0; i < m; ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return out.values[a] < out.values[b]; });
            SymmetricEigs sorted;
            sorted.values.resize(m);
            sorted.vectors.resize(n, m);
            for (int i = 0; i < m; ++i) {
                sorted.values[i] = out.values[order[i]];
                sorted.vectors.col(i) = out.vectors.col(order[i]);
            }
            return sorted;
        }
        if (k_dim >= k_cap) {
            throw ConvergenceFailure(
                "eigensolver did not converge: worst residual " + std::to_string(worst_residual) +
                " with Krylov dimension " + std::to_string(k_dim));
        }
        k_dim = std::min(k_cap, k_dim * 2);
    }
}

} // namespace

Spectrum eigendecompose(const LaplacianOperator& L, int m, const SimplicialComplex& k,
                        const EigsOptions& options) {
    const Eigen::Index n = L.size();
    if (m < 1 || m > n) {
        throw InvalidArgument("eigendecompose: m must satisfy 1 <= m <= " + std::to_string(n));
    }
    if (k.simplex_count(L.q()) != n) {
        throw DimensionMismatch("operator does not match the complex");
    }

    const Eigen::VectorXd inv_sqrt_w = L.simplex_weights().cwiseSqrt().cwiseInverse();

    Eigen::VectorXd values;
    Eigen::MatrixXd sym_vectors;
    if (n <= options.dense_cutoff || 3 * m >= n) {
        Eigen::MatrixXd dense(L.symmetrized_matrix());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigs(dense);
        if (eigs.info() != Eigen::Success) {
            throw ConvergenceFailure("dense symmetric eigensolver failed");
        }
        values = eigs.eigenvalues().head(m);
        sym_vectors = eigs.eigenvectors().leftCols(m);
    } else {
        SymmetricEigs eigs = lanczos_smallest(L.symmetrized_matrix(), m, options);
        values = std::move(eigs.values);
        sym_vectors = std::move(eigs.vectors);
    }

    Spectrum spectrum;
    spectrum.q = L.q();
    spectrum.eigenvalues = std::move(values);
    spectrum.vectors.resize(n, m);
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd y = inv_sqrt_w.asDiagonal() * sym_vectors.col(i);
        // Deterministic sign: the entry of largest magnitude is positive.
        Eigen::Index arg_max = 0;
        y.cwiseAbs().maxCoeff(&arg_max);
        if (y[arg_max] < 0.0) y = -y;
        spectrum.vectors.col(i) = y;
    }
    return spectrum;
}

Eigen::MatrixXd eigenmap(const SimplicialComplex& k, int q, int m, bool drop_first,
                         const EigsOptions& options) {
    const std::int64_t count = k.simplex_count(q);
    const int need = m + (drop_first ? 1 : 0);
    if (m < 1 || need > count) {
        throw InvalidArgument("eigenmap: need " + std::to_string(need) +
                              " eigenvectors but |S_" + std::to_string(q) + "| = " +
                              std::to_string(count));
    }
    LaplacianOperator L = assemble_laplacian(k, q, LaplacianParts::Both);
    Spectrum spectrum = eigendecompose(L, need, k, options);
    return spectrum.vectors.middleCols(drop_first ? 1 : 0, m);
}

} // namespace lapsel
