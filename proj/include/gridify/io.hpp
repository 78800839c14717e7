#pragma once

/// File formats: polygon text ("x y" per line, '#' comments), polygon JSON
/// {"vertices": [[x,y],...]}, cell-set JSON {"cells": [[col,row],...]} and
/// the nonogram text export (row clues bottom-to-top, then column clues
/// left-to-right, one clue list per line).

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gridify/geometry.hpp"
#include "gridify/grid.hpp"

namespace gridify {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Polygon parse_polygon_text(std::istream& in) {
    std::vector<Point> pts;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x, y;
        if (ls >> x >> y) {
            pts.push_back({x, y});
        } else {
            std::string rest;
            std::istringstream check(line);
            if (check >> rest) throw IoError("malformed polygon line: " + line);
        }
    }
    if (pts.size() < 3) throw IoError("polygon file has fewer than 3 vertices");
    return Polygon(pts);
}

inline Polygon parse_polygon_json(const nlohmann::json& j) {
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw IoError("polygon JSON needs a \"vertices\" array");
    std::vector<Point> pts;
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 2) throw IoError("vertex must be [x, y]");
        pts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return Polygon(pts);
}

/// Accepts either format, deciding by the first non-space character.
inline Polygon load_polygon(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    std::string text = buf.str();
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw IoError(std::string("invalid JSON in ") + path + ": " + e.what());
        }
        return parse_polygon_json(j);
    }
    std::istringstream in(text);
    return parse_polygon_text(in);
}

inline nlohmann::json polygon_to_json(const Polygon& p) {
    nlohmann::json verts = nlohmann::json::array();
    for (const Point& v : p.vertices()) verts.push_back({v.x, v.y});
    return {{"vertices", verts}};
}

inline nlohmann::json cellset_to_json(const CellSet& s) {
    nlohmann::json cells = nlohmann::json::array();
    for (const Cell& c : s.sorted()) cells.push_back({c.col, c.row});
    return {{"cells", cells}};
}

inline CellSet parse_cellset_json(const nlohmann::json& j) {
    if (!j.contains("cells") || !j["cells"].is_array())
        throw IoError("cell set JSON needs a \"cells\" array");
    CellSet s;
    for (const auto& c : j["cells"]) {
        if (!c.is_array() || c.size() != 2) throw IoError("cell must be [col, row]");
        s.insert({c[0].get<int>(), c[1].get<int>()});
    }
    return s;
}

inline CellSet load_cellset(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return parse_cellset_json(j);
}

inline std::string nonogram_text(const CellSet& s) {
    NonogramClues clues = nonogram_clues(s);
    std::ostringstream out;
    auto emit = [&](const std::vector<std::vector<int>>& lists) {
        for (const auto& runs : lists) {
            if (runs.empty()) out << "0";
            for (std::size_t i = 0; i < runs.size(); ++i) {
                if (i) out << ' ';
                out << runs[i];
            }
            out << '\n';
        }
    };
    out << "rows\n";
    emit(clues.rows);
    out << "columns\n";
    emit(clues.cols);
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path);
    f << content;
}

}  // namespace gridify
