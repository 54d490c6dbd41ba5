#pragma once

#include <Eigen/Sparse>

#include "lapsel/complex.hpp"

namespace lapsel {

/**
 * Signed incidence matrix of the boundary operator at dimension q:
 * rows are (q-1)-simplices, columns q-simplices, entries sgn(tau, d sigma).
 * Each column has exactly q+1 nonzeros and B_q * B_{q+1} = 0.
 */
struct BoundaryMatrix {
    int q = 0;
    Eigen::SparseMatrix<double> matrix;
};

/// Requires 1 <= q <= top dimension; throws NoSimplicesAtDimension otherwise.
BoundaryMatrix assemble_boundary(const SimplicialComplex& k, int q);

} // namespace lapsel
