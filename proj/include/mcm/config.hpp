#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "mcm/cone.hpp"

namespace mcm {

/// malformed or missing configuration (CLI exit code 2)
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// failure writing an artifact (CLI exit code 3)
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Schema: {"halfspaces": [[...], ...], "slater_point": [...], "interior_margin": 0.0}
/// interior_margin is optional and defaults to 0. Construction errors from
/// PolyCone (rank, non-interior slater point) surface as ConfigError.
inline PolyCone cone_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("halfspaces") || !j.contains("slater_point"))
        throw ConfigError("cone config: need object with 'halfspaces' and 'slater_point'");
    const auto& rows = j.at("halfspaces");
    if (!rows.is_array() || rows.empty() || !rows.at(0).is_array() || rows.at(0).empty())
        throw ConfigError("cone config: 'halfspaces' must be a nonempty array of nonempty rows");
    const std::size_t m = rows.at(0).size();
    Mat A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows.at(r).is_array() || rows.at(r).size() != m)
            throw ConfigError("cone config: ragged 'halfspaces' rows");
        for (std::size_t c = 0; c < m; ++c) {
            if (!rows.at(r).at(c).is_number())
                throw ConfigError("cone config: non-numeric halfspace entry");
            A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows.at(r).at(c).get<double>();
        }
    }
    const auto& sp = j.at("slater_point");
    if (!sp.is_array() || sp.size() != m)
        throw ConfigError("cone config: 'slater_point' must match the halfspace width");
    Vec e(static_cast<Eigen::Index>(m));
    for (std::size_t c = 0; c < m; ++c) {
        if (!sp.at(c).is_number()) throw ConfigError("cone config: non-numeric slater entry");
        e[static_cast<Eigen::Index>(c)] = sp.at(c).get<double>();
    }
    double margin = 0.0;
    if (j.contains("interior_margin")) {
        if (!j.at("interior_margin").is_number())
            throw ConfigError("cone config: 'interior_margin' must be a number");
        margin = j.at("interior_margin").get<double>();
    }
    try {
        return PolyCone(std::move(A), std::move(e), margin);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("cone config: ") + ex.what());
    }
}

inline nlohmann::json cone_to_json(const PolyCone& P) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < P.facets(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < P.dim(); ++c) row.push_back(P.halfspaces()(r, c));
        rows.push_back(row);
    }
    nlohmann::json sp = nlohmann::json::array();
    for (Eigen::Index c = 0; c < P.dim(); ++c) sp.push_back(P.slater()[c]);
    return {{"halfspaces", rows}, {"slater_point", sp}, {"interior_margin", P.interior_margin()}};
}

inline PolyCone load_cone(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError("config is not valid JSON: " + std::string(ex.what()));
    }
    return cone_from_json(j);
}

/// Write text atomically enough for tests: fail loudly, never truncate silently.
inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace mcm
