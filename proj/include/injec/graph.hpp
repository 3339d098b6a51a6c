#pragma once

#include "injec/error.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace injec {

using VertexId = int;
using EdgeId = int;

/// Canonical undirected edge: `u < v` always holds once stored in a Graph.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    VertexId other(VertexId x) const { return x == u ? v : u; }
    bool has(VertexId x) const { return x == u || x == v; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with dense vertex ids and canonical edge ids.
///
/// Edges are kept sorted lexicographically by (min endpoint, max endpoint) and
/// an EdgeId is the position in that list. Adjacency lists are sorted and the
/// parallel `incident` lists give the EdgeId of each neighbor's edge. The graph
/// is immutable once built.
class Graph {
public:
    Graph() = default;

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

    std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    std::span<const EdgeId> incident(VertexId v) const { return incident_[static_cast<std::size_t>(v)]; }
    int degree(VertexId v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }

    bool adjacent(VertexId a, VertexId b) const { return find_edge(a, b).has_value(); }

    std::optional<EdgeId> find_edge(VertexId a, VertexId b) const {
        if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count()) return std::nullopt;
        const auto& nb = adjacency_[static_cast<std::size_t>(a)];
        auto it = std::lower_bound(nb.begin(), nb.end(), b);
        if (it == nb.end() || *it != b) return std::nullopt;
        return incident_[static_cast<std::size_t>(a)][static_cast<std::size_t>(it - nb.begin())];
    }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(VertexId v) const {
        return has_labels() ? labels_[static_cast<std::size_t>(v)] : std::to_string(v);
    }
    std::optional<VertexId> find_label(const std::string& name) const {
        auto it = std::find(labels_.begin(), labels_.end(), name);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<VertexId>(it - labels_.begin());
    }

    /// Structural equality; labels are not compared.
    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
    }

    friend Graph build_graph(int n, std::span<const std::pair<int, int>> pairs,
                             std::vector<std::string> labels);

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> adjacency_;
    std::vector<std::vector<EdgeId>> incident_;
    std::vector<std::string> labels_;
};

/// Builds the canonical graph on vertices 0..n-1. Throws on loops, repeated
/// pairs (in either orientation) and out-of-range endpoints.
inline Graph build_graph(int n, std::span<const std::pair<int, int>> pairs,
                         std::vector<std::string> labels) {
    if (n < 0) throw Error(ErrorCode::VertexOutOfRange, "negative vertex count");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw Error(ErrorCode::VertexOutOfRange, "label count does not match vertex count");
    Graph g;
    g.edges_.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw Error(ErrorCode::VertexOutOfRange,
                        "edge (" + std::to_string(a) + "," + std::to_string(b) + ") with n=" + std::to_string(n));
        if (a == b) throw Error(ErrorCode::LoopEdge, "loop at vertex " + std::to_string(a));
        g.edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end());
    if (dup != g.edges_.end())
        throw Error(ErrorCode::DuplicateEdge,
                    "edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ") given twice");

    g.adjacency_.assign(static_cast<std::size_t>(n), {});
    g.incident_.assign(static_cast<std::size_t>(n), {});
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> tmp(static_cast<std::size_t>(n));
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges_.size()); ++e) {
        const Edge& ed = g.edges_[static_cast<std::size_t>(e)];
        tmp[static_cast<std::size_t>(ed.u)].emplace_back(ed.v, e);
        tmp[static_cast<std::size_t>(ed.v)].emplace_back(ed.u, e);
    }
    for (std::size_t v = 0; v < tmp.size(); ++v) {
        std::sort(tmp[v].begin(), tmp[v].end());
        g.adjacency_[v].reserve(tmp[v].size());
        g.incident_[v].reserve(tmp[v].size());
        for (auto [w, e] : tmp[v]) {
            g.adjacency_[v].push_back(w);
            g.incident_[v].push_back(e);
        }
    }
    g.labels_ = std::move(labels);
    return g;
}

inline Graph build_graph(int n, std::span<const std::pair<int, int>> pairs) {
    return build_graph(n, pairs, {});
}

inline Graph build_graph(int n, std::initializer_list<std::pair<int, int>> pairs) {
    std::vector<std::pair<int, int>> v(pairs);
    return build_graph(n, std::span<const std::pair<int, int>>(v), {});
}

/// Accumulates named vertices and edges; used by the gadget generators.
class GraphBuilder {
public:
    VertexId add(std::string label) {
        auto [it, inserted] = index_.emplace(label, static_cast<VertexId>(labels_.size()));
        if (!inserted) throw Error(ErrorCode::BadParams, "duplicate vertex label " + label);
        labels_.push_back(std::move(label));
        return it->second;
    }

    VertexId id(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw Error(ErrorCode::BadParams, "no vertex labelled " + label);
        return it->second;
    }

    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    void connect(VertexId a, VertexId b) { pairs_.emplace_back(a, b); }
    void connect(const std::string& a, const std::string& b) { connect(id(a), id(b)); }

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    const std::map<std::string, VertexId>& index() const { return index_; }

    Graph build() const {
        return build_graph(vertex_count(), std::span<const std::pair<int, int>>(pairs_), labels_);
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, VertexId> index_;
    std::vector<std::pair<int, int>> pairs_;
};

/// Length of a shortest cycle, or the distinguished infinite value for forests.
class Girth {
public:
    static Girth infinite() { return Girth(); }
    static Girth of(int length) { return Girth(length); }

    bool is_infinite() const { return !length_.has_value(); }
    int value() const { return length_.value(); }
    bool at_least(int g) const { return is_infinite() || *length_ >= g; }

    friend bool operator==(const Girth&, const Girth&) = default;

    std::string str() const { return is_infinite() ? std::string("inf") : std::to_string(*length_); }

private:
    Girth() = default;
    explicit Girth(int length) : length_(length) {}
    std::optional<int> length_;
};

struct Bipartition {
    std::vector<VertexId> a;
    std::vector<VertexId> b;
};

struct GraphMetrics {
    int max_degree = 0;
    Girth girth = Girth::infinite();
    std::optional<Bipartition> bipartition;
    bool connected = true;
};

inline int max_degree(const Graph& g) {
    int d = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
    return d;
}

/// Shortest cycle by a breadth-first search from every vertex, cut off once
/// the search radius can no longer beat the best cycle found so far.
inline Girth girth(const Graph& g) {
    const int n = g.vertex_count();
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<VertexId> parent(static_cast<std::size_t>(n), -1);
    std::vector<VertexId> touched;
    std::deque<VertexId> queue;
    for (VertexId s = 0; s < n; ++s) {
        for (VertexId t : touched) {
            dist[static_cast<std::size_t>(t)] = -1;
            parent[static_cast<std::size_t>(t)] = -1;
        }
        touched.clear();
        queue.clear();
        dist[static_cast<std::size_t>(s)] = 0;
        touched.push_back(s);
        queue.push_back(s);
        while (!queue.empty()) {
            VertexId x = queue.front();
            queue.pop_front();
            int dx = dist[static_cast<std::size_t>(x)];
            if (2 * dx + 1 >= best) break;
            for (VertexId y : g.neighbors(x)) {
                if (dist[static_cast<std::size_t>(y)] < 0) {
                    dist[static_cast<std::size_t>(y)] = dx + 1;
                    parent[static_cast<std::size_t>(y)] = x;
                    touched.push_back(y);
                    queue.push_back(y);
                } else if (parent[static_cast<std::size_t>(x)] != y) {
                    best = std::min(best, dx + dist[static_cast<std::size_t>(y)] + 1);
                }
            }
        }
    }
    return best == std::numeric_limits<int>::max() ? Girth::infinite() : Girth::of(best);
}

/// Two-coloring by traversal; the side containing the lowest vertex of each
/// component goes to `a`. Returns nullopt when an odd cycle exists.
inline std::optional<Bipartition> bipartition(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    std::deque<VertexId> queue;
    for (VertexId s = 0; s < n; ++s) {
        if (side[static_cast<std::size_t>(s)] >= 0) continue;
        side[static_cast<std::size_t>(s)] = 0;
        queue.push_back(s);
        while (!queue.empty()) {
            VertexId x = queue.front();
            queue.pop_front();
            for (VertexId y : g.neighbors(x)) {
                int& sy = side[static_cast<std::size_t>(y)];
                if (sy < 0) {
                    sy = 1 - side[static_cast<std::size_t>(x)];
                    queue.push_back(y);
                } else if (sy == side[static_cast<std::size_t>(x)]) {
                    return std::nullopt;
                }
            }
        }
    }
    Bipartition bp;
    for (VertexId v = 0; v < n; ++v) (side[static_cast<std::size_t>(v)] == 0 ? bp.a : bp.b).push_back(v);
    return bp;
}

inline int component_count(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<VertexId> stack;
    int count = 0;
    for (VertexId s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++count;
        seen[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            for (VertexId y : g.neighbors(x)) {
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    stack.push_back(y);
                }
            }
        }
    }
    return count;
}

inline GraphMetrics metrics(const Graph& g) {
    GraphMetrics m;
    m.max_degree = max_degree(g);
    m.girth = girth(g);
    m.bipartition = bipartition(g);
    m.connected = component_count(g) <= 1;
    return m;
}

inline bool is_regular(const Graph& g, int d) {
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) != d) return false;
    return true;
}

/// Replaces every edge by a path through `t` fresh vertices. The inner
/// vertices of edge e are numbered n + e*t .. n + e*t + t - 1.
inline Graph subdivide(const Graph& g, int t) {
    if (t < 0) throw Error(ErrorCode::BadParams, "negative subdivision count");
    const int n = g.vertex_count();
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(g.edge_count()) * static_cast<std::size_t>(t + 1));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        VertexId prev = ed.u;
        for (int j = 0; j < t; ++j) {
            VertexId inner = n + e * t + j;
            pairs.emplace_back(prev, inner);
            prev = inner;
        }
        pairs.emplace_back(prev, ed.v);
    }
    return build_graph(n + t * g.edge_count(), std::span<const std::pair<int, int>>(pairs));
}

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    return build_graph(n, std::span<const std::pair<int, int>>(pairs));
}

/// K_{a,b} with the left side on 0..a-1 and the right side on a..a+b-1.
inline Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) pairs.emplace_back(i, a + j);
    return build_graph(a + b, std::span<const std::pair<int, int>>(pairs));
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw Error(ErrorCode::BadParams, "cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
    return build_graph(n, std::span<const std::pair<int, int>>(pairs));
}

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    return build_graph(n, std::span<const std::pair<int, int>>(pairs));
}

inline Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= leaves; ++i) pairs.emplace_back(0, i);
    return build_graph(leaves + 1, std::span<const std::pair<int, int>>(pairs));
}

namespace detail {

inline std::optional<int> parse_suffix(const std::string& name, const std::string& prefix) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    std::string rest = name.substr(prefix.size());
    if (!rest.empty() && rest.front() == '_') rest.erase(0, 1);
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
    if (rest.size() > 6) return std::nullopt;
    return std::stoi(rest);
}

} // namespace detail

/// Standard small graphs by name: K<n>, C_<n>, P_<n>, K33, prism, petersen,
/// cube, star_<n> (the star has n leaves).
inline Graph named_fixture(const std::string& name) {
    if (name == "K33" || name == "K_3,3" || name == "K3,3") return complete_bipartite(3, 3);
    if (name == "prism") {
        return build_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
    }
    if (name == "petersen") {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < 5; ++i) {
            pairs.emplace_back(i, (i + 1) % 5);
            pairs.emplace_back(i, i + 5);
            pairs.emplace_back(5 + i, 5 + (i + 2) % 5);
        }
        return build_graph(10, std::span<const std::pair<int, int>>(pairs));
    }
    if (name == "cube") {
        std::vector<std::pair<int, int>> pairs;
        for (int v = 0; v < 8; ++v)
            for (int bit = 1; bit < 8; bit <<= 1)
                if ((v & bit) == 0) pairs.emplace_back(v, v | bit);
        return build_graph(8, std::span<const std::pair<int, int>>(pairs));
    }
    if (auto n = detail::parse_suffix(name, "star")) return star_graph(*n);
    if (auto n = detail::parse_suffix(name, "C"); n && *n >= 3) return cycle_graph(*n);
    if (auto n = detail::parse_suffix(name, "P"); n && *n >= 1) return path_graph(*n);
    if (auto n = detail::parse_suffix(name, "K"); n && *n >= 1) return complete_graph(*n);
    throw Error(ErrorCode::UnknownFixture, name);
}

} // namespace injec
