#pragma once

#include <filesystem>

#include "json.hpp"

#include "lapsel/complex.hpp"

namespace lapsel {

/**
 * Parses a complex document of the form
 *   {"vertex_count": n, "epsilon": float|null,
 *    "simplices": {"0": [[i],...], "1": [[i,j],...], ...},
 *    "weights":   {"0": [...], "1": [...], ...}}        (weights optional)
 * Vertex lists must be strictly ascending; weights arrays, when present,
 * are parallel to the simplex arrays. Closure is verified, never repaired:
 * a missing face raises NotClosedUnderInclusion. Simplices are re-sorted to
 * the canonical lexicographic order on import.
 */
SimplicialComplex import_complex(const nlohmann::json& document);

SimplicialComplex import_complex_file(const std::filesystem::path& path);

/// Canonical JSON document for `k`; includes weights only when computed.
nlohmann::ordered_json export_complex(const SimplicialComplex& k);

void export_complex_file(const SimplicialComplex& k, const std::filesystem::path& path);

} // namespace lapsel
