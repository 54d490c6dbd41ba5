#include "lapsel/laplacian.hpp"

namespace lapsel {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

void check_dimension(const SimplicialComplex& k, int q) {
    if (q < 0) throw InvalidArgument("Laplacian dimension must be nonnegative");
    if (k.simplex_count(q) == 0) {
        throw NoSimplicesAtDimension("no simplices at dimension " + std::to_string(q));
    }
    if (!k.has_weights()) {
        throw MissingWeights("assemble_laplacian requires computed weights");
    }
}

} // namespace

LaplacianOperator::LaplacianOperator(int q, SpMat form, Eigen::VectorXd weights)
    : q_(q), form_(std::move(form)), weights_(std::move(weights)) {
    form_.makeCompressed();
}

Eigen::VectorXd LaplacianOperator::apply(const Eigen::VectorXd& f) const {
    if (f.size() != form_.rows()) {
        throw DimensionMismatch("cochain length does not match the operator");
    }
    return (form_ * f).cwiseQuotient(weights_);
}

Cochain LaplacianOperator::apply(const Cochain& f) const {
    if (f.q != q_) throw DimensionMismatch("cochain dimension does not match the operator");
    return {q_, apply(f.values)};
}

double LaplacianOperator::quadratic_form(const Eigen::VectorXd& f) const {
    if (f.size() != form_.rows()) {
        throw DimensionMismatch("cochain length does not match the operator");
    }
    return f.dot(form_ * f);
}

double LaplacianOperator::weighted_norm2(const Eigen::VectorXd& f) const {
    return (weights_.array() * f.array().square()).sum();
}

SpMat LaplacianOperator::operator_matrix() const {
    SpMat l = weights_.cwiseInverse().asDiagonal() * form_;
    l.makeCompressed();
    return l;
}

SpMat LaplacianOperator::symmetrized_matrix() const {
    Eigen::VectorXd inv_sqrt = weights_.cwiseSqrt().cwiseInverse();
    SpMat s = inv_sqrt.asDiagonal() * form_ * inv_sqrt.asDiagonal();
    s.makeCompressed();
    return s;
}

LaplacianOperator assemble_laplacian(const SimplicialComplex& k, int q, LaplacianParts parts) {
    check_dimension(k, q);
    if (parts == LaplacianParts::Down && q == 0) {
        throw InvalidArgument("the down Laplacian is undefined at dimension 0");
    }
    const std::int64_t n = k.simplex_count(q);
    const Eigen::VectorXd w_q = k.weight_vector(q);

    SpMat form(static_cast<int>(n), static_cast<int>(n));

    const bool want_up = parts != LaplacianParts::Down;
    const bool want_down = parts != LaplacianParts::Up && q >= 1;

    if (want_up && k.simplex_count(q + 1) > 0) {
        // W_q L_up = B_{q+1} W_{q+1} B_{q+1}^T
        BoundaryMatrix b = assemble_boundary(k, q + 1);
        const Eigen::VectorXd w_up = k.weight_vector(q + 1);
        SpMat bw = b.matrix * w_up.asDiagonal();
        form += SpMat(bw * SpMat(b.matrix.transpose()));
    }
    if (want_down) {
        // W_q L_down = W_q B_q^T W_{q-1}^{-1} B_q W_q
        BoundaryMatrix b = assemble_boundary(k, q);
        const Eigen::VectorXd w_low_inv = k.weight_vector(q - 1).cwiseInverse();
        SpMat c = b.matrix * w_q.asDiagonal();
        form += SpMat(SpMat(c.transpose()) * SpMat(w_low_inv.asDiagonal() * c));
    }

    // The products above are symmetric up to rounding; enforce it exactly.
    form = 0.5 * (form + SpMat(form.transpose()));
    return {q, std::move(form), w_q};
}

Cochain apply_laplacian_direct(const SimplicialComplex& k, int q, const Cochain& f,
                               LaplacianParts parts) {
    check_dimension(k, q);
    if (parts == LaplacianParts::Down && q == 0) {
        throw InvalidArgument("the down Laplacian is undefined at dimension 0");
    }
    if (f.q != q) throw DimensionMismatch("cochain dimension does not match the request");
    const std::int64_t n = k.simplex_count(q);
    if (f.size() != n) throw DimensionMismatch("cochain length does not match |S_q|");

    const auto& w_q = k.weights(q);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);

    if (parts != LaplacianParts::Down && k.simplex_count(q + 1) > 0) {
        // (L_up f)(tau) = sum_{sigma > tau} w(sigma)/w(tau) f(tau)
        //   + sum_{tau' != tau, tau' < sigma} w(sigma)/w(tau) sgn sgn' f(tau')
        const auto& w_up = k.weights(q + 1);
        for (std::int64_t s = 0; s < k.simplex_count(q + 1); ++s) {
            const double ws = w_up[static_cast<std::size_t>(s)];
            auto fs = k.faces(q + 1, s);
            for (const auto& a : fs) {
                const double scale = ws / w_q[static_cast<std::size_t>(a.index)];
                out[a.index] += scale * f.values[a.index];
                for (const auto& b : fs) {
                    if (b.index == a.index) continue;
                    out[a.index] += scale * a.sign * b.sign * f.values[b.index];
                }
            }
        }
    }
    if (parts != LaplacianParts::Up && q >= 1) {
        // (L_down f)(tau) = sum_{rho in d tau} w(tau)/w(rho) f(tau)
        //   + sum_{tau' : tau ^ tau' = rho} w(tau')/w(rho) sgn(rho, d tau) sgn(rho, d tau') f(tau')
        const auto& w_low = k.weights(q - 1);
        for (std::int64_t t = 0; t < n; ++t) {
            for (const auto& rho : k.faces(q, t)) {
                const double wr = w_low[static_cast<std::size_t>(rho.index)];
                out[t] += w_q[static_cast<std::size_t>(t)] / wr * f.values[t];
                for (const auto& other : k.cofaces(q - 1, rho.index)) {
                    if (other.index == t) continue;
                    out[t] += w_q[static_cast<std::size_t>(other.index)] / wr * rho.sign *
                              other.sign * f.values[other.index];
                }
            }
        }
    }
    return {q, std::move(out)};
}

double rayleigh_score(const Cochain& f, const LaplacianOperator& L, const SimplicialComplex& k) {
    if (f.q != L.q()) throw DimensionMismatch("cochain dimension does not match the operator");
    Cochain centered = center_cochain(f, k);
    const double denom = L.weighted_norm2(centered.values);
    const double raw = L.weighted_norm2(f.values);
    if (!(denom > 1e-12 * std::max(1.0, raw))) {
        throw ZeroVarianceFeature("feature is constant after centering; score undefined");
    }
    return L.quadratic_form(centered.values) / denom;
}

} // namespace lapsel
