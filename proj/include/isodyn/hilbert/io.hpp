#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "isodyn/hilbert/polytope.hpp"

namespace isodyn::hilbert {

// Accepts {"vertices": [[...], ...]} or {"halfspaces": [{"a": [...], "b": r}, ...]};
// the missing representation is computed on construction.
inline Polytope polytope_from_json(const nlohmann::json& j) {
    if (j.contains("vertices")) {
        std::vector<Vector> vs;
        for (const auto& row : j.at("vertices")) {
            Vector v(static_cast<int>(row.size()));
            for (int i = 0; i < v.size(); ++i) v(i) = row.at(i).get<double>();
            vs.push_back(std::move(v));
        }
        return Polytope::from_vertices(std::move(vs));
    }
    if (j.contains("halfspaces")) {
        const auto& hs = j.at("halfspaces");
        if (hs.empty()) throw std::invalid_argument("polytope json: empty halfspace list");
        const int n = static_cast<int>(hs.front().at("a").size());
        Matrix a(static_cast<int>(hs.size()), n);
        Vector b(static_cast<int>(hs.size()));
        for (int r = 0; r < a.rows(); ++r) {
            const auto& row = hs.at(r);
            for (int i = 0; i < n; ++i) a(r, i) = row.at("a").at(i).get<double>();
            b(r) = row.at("b").get<double>();
        }
        return Polytope::from_halfspaces(a, b);
    }
    throw std::invalid_argument("polytope json: need \"vertices\" or \"halfspaces\"");
}

inline nlohmann::json polytope_to_json(const Polytope& p) {
    nlohmann::json j;
    for (const auto& v : p.vertices()) {
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i < v.size(); ++i) row.push_back(v(i));
        j["vertices"].push_back(row);
    }
    for (int r = 0; r < p.facet_count(); ++r) {
        nlohmann::json h;
        for (int i = 0; i < p.dim(); ++i) h["a"].push_back(p.normals()(r, i));
        h["b"] = p.offsets()(r);
        j["halfspaces"].push_back(h);
    }
    return j;
}

}  // namespace isodyn::hilbert
