#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lapsel {

using VertexId = std::int32_t;

/// Vertex list of a simplex, kept strictly ascending.
using SimplexVertices = std::vector<VertexId>;

/**
 * An ordered abstract q-simplex: q+1 strictly ascending vertex indices.
 * Orientation is induced by the global vertex order, i.e. by position
 * parity within the ascending list.
 */
struct Simplex {
    SimplexVertices vertices;

    Simplex() = default;
    explicit Simplex(SimplexVertices v) : vertices(std::move(v)) {}
    Simplex(std::initializer_list<VertexId> v) : vertices(v) {}

    int dimension() const { return static_cast<int>(vertices.size()) - 1; }

    bool operator==(const Simplex& other) const = default;
};

struct SignedFace {
    Simplex face;
    int sign; // +1 or -1
};

bool strictly_ascending(const SimplexVertices& vertices);

/**
 * Codimension-1 faces of `s` with their orientation signs: the k-th face
 * omits the k-th vertex and carries sign (-1)^k. Vertices (dimension 0)
 * have empty boundary and yield an empty list.
 */
std::vector<SignedFace> boundary_faces(const Simplex& s);

/// Vertices joined by '-', e.g. "0-2-5"; used as the simplex id in exports.
std::string simplex_label(const SimplexVertices& vertices);

} // namespace lapsel
