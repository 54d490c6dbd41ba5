#include "lapsel/complex.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseQR>

#include <algorithm>
#include <numeric>

namespace lapsel {

namespace {

// Lexicographic comparison of two flat (width)-tuples.
bool tuple_less(const VertexId* a, const VertexId* b, int width) {
    return std::lexicographical_compare(a, a + width, b, b + width);
}

bool tuple_equal(const VertexId* a, const VertexId* b, int width) {
    return std::equal(a, a + width, b);
}

} // namespace

SimplicialComplex SimplicialComplex::from_simplices(
    int vertex_count, std::vector<std::vector<SimplexVertices>> cells,
    std::optional<double> epsilon,
    std::optional<std::vector<std::vector<double>>> cell_weights) {
    if (vertex_count < 0) throw MalformedDocument("vertex_count must be nonnegative");

    // Trim empty top dimensions so top_dimension() reflects stored simplices.
    while (!cells.empty() && cells.back().empty()) {
        cells.pop_back();
        if (cell_weights && cell_weights->size() > cells.size()) cell_weights->pop_back();
    }
    if (cell_weights) {
        if (cell_weights->size() != cells.size()) {
            throw MalformedDocument("weights present for dimensions without simplices");
        }
        for (std::size_t q = 0; q < cells.size(); ++q) {
            if ((*cell_weights)[q].size() != cells[q].size()) {
                throw MalformedDocument("weights array at dimension " + std::to_string(q) +
                                        " not parallel to its simplex list");
            }
        }
    }

    SimplicialComplex k;
    k.n_vertices_ = vertex_count;
    k.epsilon_ = epsilon;
    const int top = static_cast<int>(cells.size()) - 1;

    k.verts_.resize(cells.size());
    if (cell_weights) k.weights_.resize(cells.size());

    for (int q = 0; q <= top; ++q) {
        const auto& list = cells[q];
        const int width = q + 1;
        for (const auto& s : list) {
            if (static_cast<int>(s.size()) != width) {
                throw MalformedDocument("simplex " + simplex_label(s) + " listed at dimension " +
                                        std::to_string(q));
            }
            if (!strictly_ascending(s)) {
                throw MalformedDocument("simplex vertices not strictly ascending: " +
                                        simplex_label(s));
            }
            if (s.front() < 0 || s.back() >= vertex_count) {
                throw MalformedDocument("vertex index out of range in simplex " +
                                        simplex_label(s));
            }
        }
        if (cell_weights) {
            for (double w : (*cell_weights)[q]) {
                if (!(w > 0.0)) {
                    throw MalformedDocument("simplex weights must be strictly positive");
                }
            }
        }

        // Canonical order: sort lexicographically, carrying weights along.
        std::vector<std::size_t> order(list.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return tuple_less(list[a].data(), list[b].data(), width);
        });

        auto& flat = k.verts_[q];
        flat.reserve(list.size() * width);
        for (std::size_t r : order) {
            flat.insert(flat.end(), list[r].begin(), list[r].end());
        }
        for (std::size_t i = 1; i < order.size(); ++i) {
            if (tuple_equal(flat.data() + (i - 1) * width, flat.data() + i * width, width)) {
                throw DuplicateSimplex("duplicate simplex " +
                                       simplex_label(k.simplex(q, static_cast<std::int64_t>(i))));
            }
        }
        if (cell_weights) {
            auto& w = k.weights_[q];
            w.reserve(order.size());
            for (std::size_t r : order) w.push_back((*cell_weights)[q][r]);
        }
    }

    k.build_incidence();
    return k;
}

void SimplicialComplex::build_incidence() {
    const int top = top_dimension();
    index_.assign(verts_.size(), {});
    faces_.assign(verts_.size(), {});
    cofaces_.assign(verts_.size(), {});
    coface_offsets_.assign(verts_.size(), {});

    for (int q = 0; q <= top; ++q) {
        const std::int64_t count = simplex_count(q);
        auto& map = index_[q];
        map.reserve(static_cast<std::size_t>(count) * 2);
        for (std::int64_t i = 0; i < count; ++i) {
            map.emplace(simplex(q, i), i);
        }
    }

    // Faces (with closure check) and coface counts in one pass.
    for (int q = 1; q <= top; ++q) {
        const std::int64_t count = simplex_count(q);
        const std::int64_t lower_count = simplex_count(q - 1);
        std::vector<std::int64_t> coface_count(lower_count, 0);
        auto& face_list = faces_[q];
        face_list.resize(static_cast<std::size_t>(count) * (q + 1));

        SimplexVertices face(static_cast<std::size_t>(q));
        for (std::int64_t i = 0; i < count; ++i) {
            auto verts = simplex_vertices(q, i);
            std::int8_t sign = 1;
            for (int omit = 0; omit <= q; ++omit) {
                int pos = 0;
                for (int j = 0; j <= q; ++j) {
                    if (j != omit) face[pos++] = verts[j];
                }
                auto it = index_[q - 1].find(face);
                if (it == index_[q - 1].end()) {
                    throw NotClosedUnderInclusion(
                        "face " + simplex_label(face) + " of simplex " +
                        simplex_label(SimplexVertices(verts.begin(), verts.end())) +
                        " is not stored");
                }
                face_list[static_cast<std::size_t>(i) * (q + 1) + omit] = {it->second, sign};
                ++coface_count[it->second];
                sign = -sign;
            }
        }

        // CSR cofaces of dimension q-1.
        auto& offsets = coface_offsets_[q - 1];
        offsets.assign(lower_count + 1, 0);
        for (std::int64_t i = 0; i < lower_count; ++i) {
            offsets[i + 1] = offsets[i] + coface_count[i];
        }
        auto& coface_list = cofaces_[q - 1];
        coface_list.resize(static_cast<std::size_t>(offsets[lower_count]));
        std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
        for (std::int64_t i = 0; i < count; ++i) {
            for (int j = 0; j <= q; ++j) {
                const auto& ref = face_list[static_cast<std::size_t>(i) * (q + 1) + j];
                coface_list[static_cast<std::size_t>(cursor[ref.index]++)] = {i, ref.sign};
            }
        }
    }
    if (top >= 0) {
        coface_offsets_[top].assign(static_cast<std::size_t>(simplex_count(top)) + 1, 0);
    }
}

std::int64_t SimplicialComplex::total_simplex_count() const {
    std::int64_t total = 0;
    for (int q = 0; q <= top_dimension(); ++q) total += simplex_count(q);
    return total;
}

std::int64_t SimplicialComplex::index_of(int q, const SimplexVertices& vertices) const {
    if (q < 0 || q > top_dimension()) return -1;
    auto it = index_[q].find(vertices);
    return it == index_[q].end() ? -1 : it->second;
}

const std::vector<double>& SimplicialComplex::weights(int q) const {
    if (!has_weights()) {
        throw MissingWeights("weights have not been computed for this complex");
    }
    if (q < 0 || q > top_dimension()) {
        throw InvalidArgument("no weights at dimension " + std::to_string(q));
    }
    return weights_[q];
}

void SimplicialComplex::set_weights(int q, std::vector<double> w) {
    if (q < 0 || q > top_dimension()) {
        throw InvalidArgument("cannot set weights at dimension " + std::to_string(q));
    }
    if (static_cast<std::int64_t>(w.size()) != simplex_count(q)) {
        throw DimensionMismatch("weight vector length does not match simplex count");
    }
    for (double v : w) {
        if (!(v > 0.0)) throw InvalidArgument("weights must be strictly positive");
    }
    if (weights_.empty()) {
        // Dimensions not yet assigned start out as unit weights.
        weights_.resize(verts_.size());
        for (int d = 0; d <= top_dimension(); ++d) {
            weights_[d].assign(static_cast<std::size_t>(simplex_count(d)), 1.0);
        }
    }
    weights_[q] = std::move(w);
}

void SimplicialComplex::compute_weights(const WeightScheme& scheme) {
    const int top = top_dimension();
    if (top < 0) throw InvalidArgument("cannot compute weights of an empty complex");

    weights_.resize(verts_.size());
    if (scheme.kind == WeightScheme::Kind::Unit) {
        for (int q = 0; q <= top; ++q) {
            weights_[q].assign(static_cast<std::size_t>(simplex_count(q)), 1.0);
        }
        return;
    }
    if (!(scheme.floor > 0.0)) throw InvalidArgument("CofaceSum floor must be positive");
    if (!(scheme.top_weight > 0.0)) throw InvalidArgument("CofaceSum top weight must be positive");
    weights_[top].assign(static_cast<std::size_t>(simplex_count(top)), scheme.top_weight);
    derive_lower_weights(top, scheme.floor);
}

void SimplicialComplex::derive_lower_weights(int from_dim, double floor) {
    if (from_dim < 0 || from_dim > top_dimension()) {
        throw InvalidArgument("derive_lower_weights: bad dimension");
    }
    if (weights_.empty() || weights_[from_dim].empty()) {
        throw MissingWeights("derive_lower_weights requires weights at the source dimension");
    }
    if (!(floor > 0.0)) throw InvalidArgument("weight floor must be positive");
    weights_.resize(verts_.size());
    for (int q = from_dim - 1; q >= 0; --q) {
        const std::int64_t count = simplex_count(q);
        auto& w = weights_[q];
        w.assign(static_cast<std::size_t>(count), 0.0);
        const auto& upper = weights_[q + 1];
        for (std::int64_t i = 0; i < count; ++i) {
            double sum = 0.0;
            for (const auto& c : cofaces(q, i)) sum += upper[static_cast<std::size_t>(c.index)];
            w[static_cast<std::size_t>(i)] = std::max(sum, floor);
        }
    }
}

SimplicialComplex build_vietoris_rips(const DistanceMatrix& dist, double epsilon, int max_dim) {
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (max_dim < 0) throw InvalidArgument("max_dim must be nonnegative");
    const int n = dist.size();

    std::vector<std::vector<SimplexVertices>> cells(static_cast<std::size_t>(max_dim) + 1);
    cells[0].reserve(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) cells[0].push_back({v});

    if (max_dim >= 1) {
        // Ascending neighbor lists: upper[i] = { j > i : d(i,j) <= epsilon }.
        std::vector<std::vector<VertexId>> upper(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (dist(i, j) <= epsilon) upper[i].push_back(static_cast<VertexId>(j));
            }
        }
        for (int i = 0; i < n; ++i) {
            for (VertexId j : upper[i]) {
                cells[1].push_back({static_cast<VertexId>(i), j});
            }
        }

        // Clique expansion: extend each (q-1)-simplex by the common upper
        // neighbors of all its vertices. Inputs are lexicographically
        // sorted, so output order is canonical by construction.
        for (int q = 2; q <= max_dim; ++q) {
            const auto& lower = cells[q - 1];
            if (lower.empty()) break;
            auto& out = cells[q];
            std::vector<VertexId> common;
            for (const auto& tau : lower) {
                common = upper[static_cast<std::size_t>(tau.back())];
                for (std::size_t v = 0; v + 1 < tau.size() && !common.empty(); ++v) {
                    const auto& list = upper[static_cast<std::size_t>(tau[v])];
                    std::vector<VertexId> next;
                    next.reserve(common.size());
                    std::set_intersection(common.begin(), common.end(), list.begin(), list.end(),
                                          std::back_inserter(next));
                    common.swap(next);
                }
                for (VertexId u : common) {
                    SimplexVertices sigma = tau;
                    sigma.push_back(u);
                    out.push_back(std::move(sigma));
                }
            }
        }
    }

    return SimplicialComplex::from_simplices(n, std::move(cells), epsilon);
}

namespace {

std::int64_t boundary_matrix_rank(const SimplicialComplex& k, int q) {
    const std::int64_t cols = k.simplex_count(q);
    const std::int64_t rows = k.simplex_count(q - 1);
    if (q < 1 || cols == 0 || rows == 0) return 0;

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

    if (rows * cols <= 4'000'000) {
        Eigen::MatrixXd dense(b);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(dense);
        qr.setThreshold(1e-9);
        return qr.rank();
    }
    Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
    Eigen::SparseMatrix<double> bc = b;
    bc.makeCompressed();
    qr.compute(bc);
    if (qr.info() != Eigen::Success) {
        throw ConvergenceFailure("sparse QR failed while computing boundary rank");
    }
    return qr.rank();
}

} // namespace

std::vector<std::int64_t> betti_numbers(const SimplicialComplex& k, int max_q) {
    if (max_q < 0 || max_q > k.top_dimension()) {
        throw InvalidArgument("betti_numbers: max_q exceeds the top dimension present");
    }
    std::vector<std::int64_t> beta(static_cast<std::size_t>(max_q) + 1, 0);
    std::int64_t rank_low = 0; // rank of B_q
    for (int q = 0; q <= max_q; ++q) {
        std::int64_t rank_high = boundary_matrix_rank(k, q + 1);
        beta[static_cast<std::size_t>(q)] = k.simplex_count(q) - rank_low - rank_high;
        rank_low = rank_high;
    }
    return beta;
}

} // namespace lapsel
