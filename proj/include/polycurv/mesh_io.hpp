/*
 * polycurv: discrete curvatures and rigidity solvers for bordered
 * polyhedral surfaces.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "polycurv/surface.hpp"

namespace polycurv {

/**
 * JSON mesh interchange document:
 * {
 *   "geometry": "euclidean" | "hyperbolic" | "spherical",
 *   "vertices": <count>,
 *   "triangles": [[i, j, k], ...],
 *   "metric": {"i-j": length, ...},     // optional, i < j
 *   "radii":  {"i": radius, ...},       // optional
 *   "h": <real>                          // optional, default 0
 * }
 */
struct MeshDocument {
    Geometry geometry = Geometry::Euclidean;
    int vertices = 0;
    std::vector<std::array<int, 3>> triangles;
    std::map<std::pair<int, int>, double> metric;
    std::map<int, double> radii;
    bool has_metric = false;
    bool has_radii = false;
    double h = 0.0;
};

inline Geometry geometry_from_string(const std::string& s)
{
    if (s == "euclidean" || s == "e") return Geometry::Euclidean;
    if (s == "hyperbolic" || s == "h") return Geometry::Hyperbolic;
    if (s == "spherical" || s == "s") return Geometry::Spherical;
    throw ParseError("unknown geometry '" + s + "'");
}

inline std::string edge_key(int i, int j)
{
    if (i > j) std::swap(i, j);
    return std::to_string(i) + "-" + std::to_string(j);
}

inline std::pair<int, int> parse_edge_key(const std::string& key)
{
    const auto dash = key.find('-');
    if (dash == std::string::npos) throw ParseError("edge key must look like 'i-j'");
    try {
        const int i = std::stoi(key.substr(0, dash));
        const int j = std::stoi(key.substr(dash + 1));
        if (i >= j) throw ParseError("edge key must have i < j");
        return {i, j};
    } catch (const std::exception&) {
        throw ParseError("bad edge key '" + key + "'");
    }
}

inline MeshDocument mesh_document_from_json(const nlohmann::json& j)
{
    MeshDocument doc;
    try {
        doc.geometry = geometry_from_string(j.at("geometry").get<std::string>());
        doc.vertices = j.at("vertices").get<int>();
        for (const auto& t : j.at("triangles")) {
            if (!t.is_array() || t.size() != 3) throw ParseError("triangle must have 3 indices");
            doc.triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
        }
        if (j.contains("metric")) {
            doc.has_metric = true;
            for (const auto& [key, val] : j.at("metric").items())
                doc.metric[parse_edge_key(key)] = val.get<double>();
        }
        if (j.contains("radii")) {
            doc.has_radii = true;
            for (const auto& [key, val] : j.at("radii").items())
                doc.radii[std::stoi(key)] = val.get<double>();
        }
        if (j.contains("h")) doc.h = j.at("h").get<double>();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad mesh document: ") + e.what());
    }
    return doc;
}

inline MeshDocument load_mesh_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return mesh_document_from_json(j);
}

inline nlohmann::json mesh_document_to_json(const MeshDocument& doc)
{
    nlohmann::json j;
    j["geometry"] = to_string(doc.geometry);
    j["vertices"] = doc.vertices;
    j["triangles"] = nlohmann::json::array();
    for (const auto& t : doc.triangles) j["triangles"].push_back({t[0], t[1], t[2]});
    if (doc.has_metric) {
        nlohmann::json m = nlohmann::json::object();
        for (const auto& [e, len] : doc.metric) m[edge_key(e.first, e.second)] = len;
        j["metric"] = m;
    }
    if (doc.has_radii) {
        nlohmann::json r = nlohmann::json::object();
        for (const auto& [v, rad] : doc.radii) r[std::to_string(v)] = rad;
        j["radii"] = r;
    }
    j["h"] = doc.h;
    return j;
}

/** Targets file: a flat JSON object keyed "i-j" (edges) or "k" (vertices). */
struct TargetsDocument {
    std::map<std::pair<int, int>, double> edge_targets;
    std::map<int, double> vertex_targets;
};

inline TargetsDocument load_targets_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    TargetsDocument doc;
    try {
        for (const auto& [key, val] : j.items()) {
            if (key.find('-') != std::string::npos)
                doc.edge_targets[parse_edge_key(key)] = val.get<double>();
            else
                doc.vertex_targets[std::stoi(key)] = val.get<double>();
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad targets document: ") + e.what());
    }
    return doc;
}

}  // namespace polycurv
