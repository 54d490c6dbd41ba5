#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "lapsel/distance.hpp"
#include "lapsel/errors.hpp"
#include "lapsel/simplex.hpp"

namespace lapsel {

/// Weight assignment rule for the simplices of a complex.
struct WeightScheme {
    enum class Kind { Unit, CofaceSum };

    Kind kind = Kind::CofaceSum;
    double top_weight = 1.0; // CofaceSum: weight of top-dimension simplices
    double floor = 1e-12;    // CofaceSum: lower bound for cofaceless simplices

    static WeightScheme unit() { return {Kind::Unit, 1.0, 1e-12}; }
    static WeightScheme coface_sum(double top_weight = 1.0, double floor = 1e-12) {
        return {Kind::CofaceSum, top_weight, floor};
    }

    /// Short name used in CLI flags and report metadata.
    std::string name() const { return kind == Kind::Unit ? "unit" : "coface"; }
};

struct VertexVecHash {
    std::size_t operator()(const SimplexVertices& v) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/**
 * Ordered abstract simplicial complex over vertices {0, ..., n-1}.
 *
 * Simplices are stored per dimension in lexicographic order with strictly
 * ascending vertex lists; orientation signs follow position parity. The
 * structure is immutable after construction except for weights, and is safe
 * to share read-only across threads once weights are computed.
 */
class SimplicialComplex {
public:
    struct IncidenceRef {
        std::int64_t index; // simplex index in the adjacent dimension
        std::int8_t sign;   // +1 or -1
    };

    /**
     * Builds a complex from per-dimension simplex lists.
     *
     * Input lists may be unsorted; they are canonicalized (sorted
     * lexicographically) here. Throws MalformedDocument for shape/range
     * violations, DuplicateSimplex for repeats within a dimension, and
     * NotClosedUnderInclusion when a face of a stored simplex is missing.
     * Optional weights must be parallel to the given simplex lists and
     * strictly positive; they are re-ordered along with their simplices.
     */
    static SimplicialComplex from_simplices(
        int vertex_count,
        std::vector<std::vector<SimplexVertices>> cells,
        std::optional<double> epsilon = std::nullopt,
        std::optional<std::vector<std::vector<double>>> cell_weights = std::nullopt);

    int vertex_count() const { return n_vertices_; }

    /// Largest q with S_q nonempty; -1 for a complex with no simplices.
    int top_dimension() const { return static_cast<int>(verts_.size()) - 1; }

    std::optional<double> epsilon() const { return epsilon_; }

    std::int64_t simplex_count(int q) const {
        if (q < 0 || q > top_dimension()) return 0;
        return static_cast<std::int64_t>(verts_[q].size()) / (q + 1);
    }

    /// Total number of simplices over all dimensions.
    std::int64_t total_simplex_count() const;

    /// Vertices of the i-th q-simplex (q+1 entries, ascending).
    std::span<const VertexId> simplex_vertices(int q, std::int64_t i) const {
        return {verts_[q].data() + i * (q + 1), static_cast<std::size_t>(q + 1)};
    }

    SimplexVertices simplex(int q, std::int64_t i) const {
        auto s = simplex_vertices(q, i);
        return SimplexVertices(s.begin(), s.end());
    }

    /// Index of a simplex within its dimension, or -1 if absent.
    std::int64_t index_of(int q, const SimplexVertices& vertices) const;

    /// Codimension-1 faces with signs; valid for q >= 1.
    std::span<const IncidenceRef> faces(int q, std::int64_t i) const {
        return {faces_[q].data() + i * (q + 1), static_cast<std::size_t>(q + 1)};
    }

    /// Codimension-1 cofaces with the sign of this simplex inside each coface.
    std::span<const IncidenceRef> cofaces(int q, std::int64_t i) const {
        if (q >= top_dimension()) return {};
        auto begin = coface_offsets_[q][i];
        auto end = coface_offsets_[q][i + 1];
        return {cofaces_[q].data() + begin, static_cast<std::size_t>(end - begin)};
    }

    bool has_weights() const { return !weights_.empty(); }

    /// Weights of the q-simplices; throws MissingWeights until computed.
    const std::vector<double>& weights(int q) const;

    Eigen::Map<const Eigen::VectorXd> weight_vector(int q) const {
        const auto& w = weights(q);
        return {w.data(), static_cast<Eigen::Index>(w.size())};
    }

    /**
     * Assigns weights per `scheme`. Unit sets every weight to 1. CofaceSum
     * gives top-dimension simplices `top_weight` and, walking top-down,
     * every lower simplex the sum of its coface weights floored at `floor`;
     * on a 1-dimensional complex with top_weight 1 this reproduces vertex
     * degrees. Requires a nonempty complex.
     */
    void compute_weights(const WeightScheme& scheme);

    /// Overwrites the weights of one dimension; values must be positive.
    void set_weights(int q, std::vector<double> w);

    /**
     * Recomputes weights below `from_dim` as coface sums of the current
     * weights, floored at `floor`. Used by CofaceSum and by callers that
     * assign explicit top-dimension weights first.
     */
    void derive_lower_weights(int from_dim, double floor);

private:
    SimplicialComplex() = default;

    void build_incidence();

    int n_vertices_ = 0;
    std::optional<double> epsilon_;
    // verts_[q]: flat (q+1)-tuples, lexicographically sorted
    std::vector<std::vector<VertexId>> verts_;
    // weights_[q]: one positive scalar per q-simplex; empty until computed
    std::vector<std::vector<double>> weights_;
    // faces_[q]: flat (q+1) refs per q-simplex into dimension q-1 (q >= 1)
    std::vector<std::vector<IncidenceRef>> faces_;
    // cofaces_[q] with CSR offsets per q-simplex into dimension q+1
    std::vector<std::vector<IncidenceRef>> cofaces_;
    std::vector<std::vector<std::int64_t>> coface_offsets_;
    std::vector<std::unordered_map<SimplexVertices, std::int64_t, VertexVecHash>> index_;
};

/**
 * Vietoris-Rips complex at scale `epsilon`: the clique complex of the graph
 * with an edge {i,j} whenever d(i,j) <= epsilon (ties included, matching the
 * closed-ball convention). All n points appear as vertices; q-simplices up
 * to max_dim are the (q+1)-cliques. Requires epsilon > 0 and max_dim >= 0.
 */
SimplicialComplex build_vietoris_rips(const DistanceMatrix& dist, double epsilon, int max_dim);

/**
 * Betti numbers beta_0 ... beta_max_q from ranks of the unweighted boundary
 * matrices (rank tolerance 1e-9 relative). Requires max_q <= top dimension.
 */
std::vector<std::int64_t> betti_numbers(const SimplicialComplex& k, int max_q);

} // namespace lapsel
