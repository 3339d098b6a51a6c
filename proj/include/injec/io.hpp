#pragma once

#include "injec/coloring.hpp"
#include "injec/error.hpp"
#include "injec/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace injec::io {

enum class GraphFormat { Dimacs, Pace };

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

inline int to_int(const std::string& s, int lineNo) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::Syntax, "line " + std::to_string(lineNo) + ": expected integer, got '" + s + "'");
    }
}

} // namespace detail

/// Reads either DIMACS (`p edge n m` + `e u v`) or PACE (`p tw n m` + `u v`)
/// text; the header decides. Vertices are 1-based on the wire.
inline Graph read_graph(std::istream& in) {
    std::string line;
    int lineNo = 0;
    int n = -1;
    int m = -1;
    bool pace = false;
    std::vector<std::pair<int, int>> pairs;
    while (std::getline(in, line)) {
        ++lineNo;
        auto t = detail::tokens(line);
        if (t.empty() || t[0] == "c") continue;
        if (t[0] == "p") {
            if (n >= 0) throw Error(ErrorCode::Syntax, "line " + std::to_string(lineNo) + ": second header");
            if (t.size() != 4 || (t[1] != "edge" && t[1] != "tw" && t[1] != "col"))
                throw Error(ErrorCode::Syntax, "line " + std::to_string(lineNo) + ": bad header '" + line + "'");
            pace = t[1] == "tw";
            n = detail::to_int(t[2], lineNo);
            m = detail::to_int(t[3], lineNo);
            if (n < 0 || m < 0) throw Error(ErrorCode::Syntax, "negative header counts");
            continue;
        }
        if (n < 0) throw Error(ErrorCode::Syntax, "line " + std::to_string(lineNo) + ": edge before header");
        std::size_t first = 0;
        if (!pace) {
            if (t[0] != "e") throw Error(ErrorCode::Syntax, "line " + std::to_string(lineNo) + ": expected 'e u v'");
            first = 1;
        }
        if (t.size() != first + 2) throw Error(ErrorCode::Syntax, "line " + std::to_string(lineNo) + ": expected two vertices");
        int a = detail::to_int(t[first], lineNo);
        int b = detail::to_int(t[first + 1], lineNo);
        pairs.emplace_back(a - 1, b - 1);
    }
    if (n < 0) throw Error(ErrorCode::Syntax, "missing 'p' header");
    if (static_cast<int>(pairs.size()) != m)
        throw Error(ErrorCode::Syntax, "header announces " + std::to_string(m) + " edges, found " + std::to_string(pairs.size()));
    return build_graph(n, std::span<const std::pair<int, int>>(pairs));
}

inline Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    return read_graph(in);
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

/// Canonical edge order, 1-based vertices.
inline void write_graph(std::ostream& out, const Graph& g, GraphFormat fmt = GraphFormat::Dimacs) {
    if (fmt == GraphFormat::Dimacs) {
        out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
        for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    } else {
        out << "p tw " << g.vertex_count() << ' ' << g.edge_count() << '\n';
        for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
    }
}

inline std::string graph_to_string(const Graph& g, GraphFormat fmt = GraphFormat::Dimacs) {
    std::ostringstream out;
    write_graph(out, g, fmt);
    return out.str();
}

/// Format by extension: `.gr` is PACE, everything else DIMACS.
inline GraphFormat format_for_path(const std::string& path) {
    return path.size() >= 3 && path.compare(path.size() - 3, 3, ".gr") == 0 ? GraphFormat::Pace : GraphFormat::Dimacs;
}

inline void write_graph_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    write_graph(out, g, format_for_path(path));
}

/// One `<edge-index> <color>` line per edge, edge indices 0-based.
inline void write_coloring(std::ostream& out, const Coloring& c) {
    for (int i = 0; i < c.size(); ++i) out << i << ' ' << c[i] << '\n';
}

inline Coloring read_coloring(std::istream& in, int items) {
    std::vector<int> colors(static_cast<std::size_t>(items), 0);
    std::string line;
    int lineNo = 0;
    int k = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto t = detail::tokens(line);
        if (t.empty() || t[0] == "c" || t[0] == "#") continue;
        if (t.size() != 2) throw Error(ErrorCode::Syntax, "line " + std::to_string(lineNo) + ": expected '<edge> <color>'");
        int e = detail::to_int(t[0], lineNo);
        int c = detail::to_int(t[1], lineNo);
        if (e < 0 || e >= items) throw Error(ErrorCode::Syntax, "line " + std::to_string(lineNo) + ": edge index out of range");
        if (c < 1) throw Error(ErrorCode::Syntax, "line " + std::to_string(lineNo) + ": colors start at 1");
        colors[static_cast<std::size_t>(e)] = c;
        k = std::max(k, c);
    }
    return Coloring(std::move(colors), std::max(k, 1));
}

/// Structured form carrying endpoints, 0-based.
inline nlohmann::json coloring_to_json(const Graph& g, const Coloring& c) {
    nlohmann::json edges = nlohmann::json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        edges.push_back({{"edge", e}, {"u", g.edge(e).u}, {"v", g.edge(e).v}, {"color", c[e]}});
    return {{"k", c.k()}, {"colors_used", c.distinct_colors()}, {"edges", edges}};
}

inline nlohmann::json violation_to_json(const Graph& g, const Violation& v) {
    auto ends = [&](EdgeId e) { return nlohmann::json::array({g.edge(e).u, g.edge(e).v}); };
    return {{"e", ends(v.e)}, {"f", ends(v.f)}, {"middle", ends(v.middle)}, {"color", v.color}};
}

} // namespace injec::io
