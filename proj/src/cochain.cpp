#include "lapsel/cochain.hpp"

namespace lapsel {

namespace {

void check_against_complex(const Cochain& f, const SimplicialComplex& k) {
    if (f.size() != k.simplex_count(f.q)) {
        throw DimensionMismatch("cochain length " + std::to_string(f.size()) +
                                " does not match |S_" + std::to_string(f.q) + "| = " +
                                std::to_string(k.simplex_count(f.q)));
    }
}

} // namespace

Cochain unit_cochain(const SimplicialComplex& k, int q) {
    if (k.simplex_count(q) == 0) {
        throw NoSimplicesAtDimension("no simplices at dimension " + std::to_string(q));
    }
    return {q, Eigen::VectorXd::Ones(k.simplex_count(q))};
}

double inner_product(const Cochain& f, const Cochain& g, const SimplicialComplex& k) {
    if (f.q != g.q) {
        throw DimensionMismatch("cochain dimensions differ: " + std::to_string(f.q) + " vs " +
                                std::to_string(g.q));
    }
    if (f.size() != g.size()) {
        throw DimensionMismatch("cochain lengths differ");
    }
    check_against_complex(f, k);
    auto w = k.weight_vector(f.q);
    return (w.array() * f.values.array() * g.values.array()).sum();
}

Cochain center_cochain(const Cochain& f, const SimplicialComplex& k) {
    check_against_complex(f, k);
    if (f.size() == 0) {
        throw NoSimplicesAtDimension("cannot center a cochain over an empty dimension");
    }
    auto w = k.weight_vector(f.q);
    const double mean = w.dot(f.values) / w.sum();
    return {f.q, f.values.array() - mean};
}

} // namespace lapsel
