#include "lapsel/boundary.hpp"

#include <vector>

namespace lapsel {

BoundaryMatrix assemble_boundary(const SimplicialComplex& k, int q) {
    if (q < 1 || k.simplex_count(q) == 0) {
        throw NoSimplicesAtDimension("no boundary operator at dimension " + std::to_string(q));
    }
    const std::int64_t rows = k.simplex_count(q - 1);
    const std::int64_t cols = k.simplex_count(q);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(cols) * (q + 1));
    for (std::int64_t j = 0; j < cols; ++j) {
        for (const auto& f : k.faces(q, j)) {
            triplets.emplace_back(static_cast<int>(f.index), static_cast<int>(j),
                                  static_cast<double>(f.sign));
        }
    }
    Eigen::SparseMatrix<double> b(static_cast<int>(rows), static_cast<int>(cols));
    b.setFromTriplets(triplets.begin(), triplets.end());
    b.makeCompressed();
    return {q, std::move(b)};
}

} // namespace lapsel
