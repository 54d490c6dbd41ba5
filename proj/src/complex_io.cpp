#include "lapsel/complex_io.hpp"

#include <fstream>

namespace lapsel {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

int parse_dimension_key(const std::string& key) {
    std::size_t pos = 0;
    int q = -1;
    try {
        q = std::stoi(key, &pos);
    } catch (const std::exception&) {
        throw MalformedDocument("simplices key is not a dimension: \"" + key + "\"");
    }
    if (pos != key.size() || q < 0) {
        throw MalformedDocument("simplices key is not a dimension: \"" + key + "\"");
    }
    return q;
}

} // namespace

SimplicialComplex import_complex(const json& document) {
    if (!document.is_object()) throw MalformedDocument("complex document must be an object");
    if (!document.contains("vertex_count") ||
        !document["vertex_count"].is_number_integer()) {
        throw MalformedDocument("missing integer field \"vertex_count\"");
    }
    const int vertex_count = document["vertex_count"].get<int>();

    std::optional<double> epsilon;
    if (document.contains("epsilon") && !document["epsilon"].is_null()) {
        if (!document["epsilon"].is_number()) {
            throw MalformedDocument("\"epsilon\" must be a number or null");
        }
        epsilon = document["epsilon"].get<double>();
    }

    if (!document.contains("simplices") || !document["simplices"].is_object()) {
        throw MalformedDocument("missing object field \"simplices\"");
    }
    int top = -1;
    for (const auto& [key, value] : document["simplices"].items()) {
        (void)value;
        top = std::max(top, parse_dimension_key(key));
    }

    std::vector<std::vector<SimplexVertices>> cells(static_cast<std::size_t>(top) + 1);
    for (const auto& [key, value] : document["simplices"].items()) {
        const int q = parse_dimension_key(key);
        if (!value.is_array()) {
            throw MalformedDocument("simplex list at dimension " + key + " must be an array");
        }
        auto& list = cells[static_cast<std::size_t>(q)];
        list.reserve(value.size());
        for (const auto& entry : value) {
            if (!entry.is_array()) {
                throw MalformedDocument("simplex at dimension " + key + " must be an array");
            }
            SimplexVertices verts;
            verts.reserve(entry.size());
            for (const auto& v : entry) {
                if (!v.is_number_integer()) {
                    throw MalformedDocument("vertex indices must be integers");
                }
                verts.push_back(v.get<VertexId>());
            }
            list.push_back(std::move(verts));
        }
    }

    std::optional<std::vector<std::vector<double>>> weights;
    if (document.contains("weights") && !document["weights"].is_null()) {
        if (!document["weights"].is_object()) {
            throw MalformedDocument("\"weights\" must be an object keyed by dimension");
        }
        std::vector<std::vector<double>> w(cells.size());
        for (const auto& [key, value] : document["weights"].items()) {
            const int q = parse_dimension_key(key);
            if (q > top) throw MalformedDocument("weights given at dimension " + key +
                                                 " with no simplices");
            if (!value.is_array()) {
                throw MalformedDocument("weights at dimension " + key + " must be an array");
            }
            auto& wq = w[static_cast<std::size_t>(q)];
            wq.reserve(value.size());
            for (const auto& x : value) {
                if (!x.is_number()) throw MalformedDocument("weights must be numbers");
                wq.push_back(x.get<double>());
            }
        }
        for (std::size_t q = 0; q < cells.size(); ++q) {
            if (w[q].size() != cells[q].size()) {
                throw MalformedDocument("weights at dimension " + std::to_string(q) +
                                        " not parallel to the simplex list");
            }
        }
        weights = std::move(w);
    }

    return SimplicialComplex::from_simplices(vertex_count, std::move(cells), epsilon,
                                             std::move(weights));
}

SimplicialComplex import_complex_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open complex file: " + path.string());
    json document;
    try {
        in >> document;
    } catch (const json::parse_error& e) {
        throw MalformedDocument("invalid JSON in " + path.string() + ": " + e.what());
    }
    return import_complex(document);
}

ordered_json export_complex(const SimplicialComplex& k) {
    ordered_json document;
    document["vertex_count"] = k.vertex_count();
    if (k.epsilon()) {
        document["epsilon"] = *k.epsilon();
    } else {
        document["epsilon"] = nullptr;
    }

    ordered_json simplices = ordered_json::object();
    for (int q = 0; q <= k.top_dimension(); ++q) {
        ordered_json list = ordered_json::array();
        for (std::int64_t i = 0; i < k.simplex_count(q); ++i) {
            auto verts = k.simplex_vertices(q, i);
            list.push_back(std::vector<VertexId>(verts.begin(), verts.end()));
        }
        simplices[std::to_string(q)] = std::move(list);
    }
    document["simplices"] = std::move(simplices);

    if (k.has_weights()) {
        ordered_json weights = ordered_json::object();
        for (int q = 0; q <= k.top_dimension(); ++q) {
            weights[std::to_string(q)] = k.weights(q);
        }
        document["weights"] = std::move(weights);
    }
    return document;
}

void export_complex_file(const SimplicialComplex& k, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write complex file: " + path.string());
    out << export_complex(k).dump(2) << '\n';
}

} // namespace lapsel
