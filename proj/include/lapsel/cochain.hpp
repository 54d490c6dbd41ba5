#pragma once

#include <Eigen/Dense>

#include "lapsel/complex.hpp"

namespace lapsel {

/**
 * Discrete q-form: one scalar per q-simplex, ordered as the complex's
 * canonical S_q list.
 */
struct Cochain {
    int q = 0;
    Eigen::VectorXd values;

    Cochain() = default;
    Cochain(int dim, Eigen::VectorXd v) : q(dim), values(std::move(v)) {}
    Eigen::Index size() const { return values.size(); }
};

/// The unit q-form 1^(q).
Cochain unit_cochain(const SimplicialComplex& k, int q);

/// Weighted inner product sum_tau w(tau) f(tau) g(tau) over S_q.
double inner_product(const Cochain& f, const Cochain& g, const SimplicialComplex& k);

/**
 * Subtracts the weighted mean times the unit form:
 * f - (<f, 1>_K / <1, 1>_K) 1, so the result is orthogonal to 1^(q)
 * under the weighted inner product.
 */
Cochain center_cochain(const Cochain& f, const SimplicialComplex& k);

} // namespace lapsel
