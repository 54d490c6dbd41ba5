#include "lapsel/simplex.hpp"

namespace lapsel {

bool strictly_ascending(const SimplexVertices& vertices) {
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i - 1] >= vertices[i]) return false;
    }
    return true;
}

std::vector<SignedFace> boundary_faces(const Simplex& s) {
    std::vector<SignedFace> out;
    if (s.dimension() < 1) return out; // vertices have empty boundary
    const auto& v = s.vertices;
    out.reserve(v.size());
    int sign = 1;
    for (std::size_t k = 0; k < v.size(); ++k) {
        SimplexVertices face;
        face.reserve(v.size() - 1);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i != k) face.push_back(v[i]);
        }
        out.push_back({Simplex(std::move(face)), sign});
        sign = -sign;
    }
    return out;
}

std::string simplex_label(const SimplexVertices& vertices) {
    std::string label;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i > 0) label += '-';
        label += std::to_string(vertices[i]);
    }
    return label;
}

} // namespace lapsel
