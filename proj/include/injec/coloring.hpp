#pragma once

#include "injec/error.hpp"
#include "injec/graph.hpp"

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace injec {

/// Plain adjacency lists; the vertex-coloring engine works on this shape.
using Adjacency = std::vector<std::vector<int>>;

/// Total or partial assignment of colors 1..k to a fixed number of items.
/// Color 0 marks an unassigned item.
class Coloring {
public:
    Coloring() = default;
    Coloring(int items, int k) : k_(k), colors_(static_cast<std::size_t>(items), 0) {}

    /// Adopts an existing assignment; every entry must be 0 or lie in 1..k.
    Coloring(std::vector<int> colors, int k) : k_(k), colors_(std::move(colors)) {
        for (int c : colors_)
            if (c < 0 || c > k_) throw Error(ErrorCode::BadParams, "color " + std::to_string(c) + " outside 1.." + std::to_string(k_));
    }

    int size() const { return static_cast<int>(colors_.size()); }
    int k() const { return k_; }

    int operator[](int item) const { return colors_[static_cast<std::size_t>(item)]; }
    bool assigned(int item) const { return colors_[static_cast<std::size_t>(item)] != 0; }

    void set(int item, int color) {
        if (color < 1 || color > k_)
            throw Error(ErrorCode::BadParams, "color " + std::to_string(color) + " outside 1.." + std::to_string(k_));
        colors_[static_cast<std::size_t>(item)] = color;
    }
    void clear(int item) { colors_[static_cast<std::size_t>(item)] = 0; }

    bool total() const {
        return std::none_of(colors_.begin(), colors_.end(), [](int c) { return c == 0; });
    }

    int distinct_colors() const {
        std::set<int> used;
        for (int c : colors_)
            if (c != 0) used.insert(c);
        return static_cast<int>(used.size());
    }

    int max_color() const { return colors_.empty() ? 0 : *std::max_element(colors_.begin(), colors_.end()); }

    std::span<const int> values() const { return colors_; }

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    int k_ = 0;
    std::vector<int> colors_;
};

/// Graph on E(G): two edges are adjacent exactly when they may not share a color.
struct ConflictGraph {
    Adjacency adjacency;

    int item_count() const { return static_cast<int>(adjacency.size()); }

    int max_degree() const {
        std::size_t d = 0;
        for (const auto& nb : adjacency) d = std::max(d, nb.size());
        return static_cast<int>(d);
    }

    long long pair_count() const {
        long long s = 0;
        for (const auto& nb : adjacency) s += static_cast<long long>(nb.size());
        return s / 2;
    }

    bool conflicts(EdgeId e, EdgeId f) const {
        const auto& nb = adjacency[static_cast<std::size_t>(e)];
        return std::binary_search(nb.begin(), nb.end(), f);
    }
};

/// Calls fn(f, middle) for every edge f in conflict with e, once per witness
/// middle edge. The same f may be reported through several middle edges.
template <class Fn>
void for_each_conflict(const Graph& g, EdgeId e, Fn&& fn) {
    const Edge& ed = g.edge(e);
    for (VertexId w : {ed.u, ed.v}) {
        auto nbw = g.neighbors(w);
        auto incw = g.incident(w);
        for (std::size_t i = 0; i < nbw.size(); ++i) {
            EdgeId middle = incw[i];
            if (middle == e) continue;
            VertexId z = nbw[i];
            for (EdgeId f : g.incident(z)) {
                if (f == middle || f == e) continue;
                fn(f, middle);
            }
        }
    }
}

/// Conflict graph built by sweeping every middle edge {w,z} and pairing each
/// other edge at w with each other edge at z.
inline ConflictGraph conflict_graph(const Graph& g) {
    ConflictGraph cg;
    cg.adjacency.assign(static_cast<std::size_t>(g.edge_count()), {});
    for (EdgeId m = 0; m < g.edge_count(); ++m) {
        const Edge& mid = g.edge(m);
        for (EdgeId e : g.incident(mid.u)) {
            if (e == m) continue;
            for (EdgeId f : g.incident(mid.v)) {
                if (f == m || f == e) continue;
                cg.adjacency[static_cast<std::size_t>(e)].push_back(f);
                cg.adjacency[static_cast<std::size_t>(f)].push_back(e);
            }
        }
    }
    for (auto& nb : cg.adjacency) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return cg;
}

/// Line graph adjacency: edges sharing an endpoint.
inline Adjacency line_graph(const Graph& g) {
    Adjacency adj(static_cast<std::size_t>(g.edge_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto inc = g.incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j) {
                adj[static_cast<std::size_t>(inc[i])].push_back(inc[j]);
                adj[static_cast<std::size_t>(inc[j])].push_back(inc[i]);
            }
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

inline Adjacency adjacency_of(const Graph& g) {
    Adjacency adj(static_cast<std::size_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto nb = g.neighbors(v);
        adj[static_cast<std::size_t>(v)].assign(nb.begin(), nb.end());
    }
    return adj;
}

struct Violation {
    EdgeId e = 0;
    EdgeId f = 0;  ///< e < f
    EdgeId middle = 0;
    int color = 0;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Direct scan of every 3-edge walk (triangles included). Each offending pair
/// is reported once, with the lowest-id middle edge as witness.
inline std::vector<Violation> verify_injective(const Graph& g, const Coloring& c) {
    if (c.size() != g.edge_count())
        throw Error(ErrorCode::PartialColoring, "coloring has " + std::to_string(c.size()) + " items, graph has " +
                                                    std::to_string(g.edge_count()) + " edges");
    if (!c.total()) throw Error(ErrorCode::PartialColoring, "some edges are uncolored");
    std::set<std::pair<EdgeId, EdgeId>> seen;
    std::vector<Violation> out;
    for (EdgeId m = 0; m < g.edge_count(); ++m) {
        const Edge& mid = g.edge(m);
        for (EdgeId e : g.incident(mid.u)) {
            if (e == m) continue;
            for (EdgeId f : g.incident(mid.v)) {
                if (f == m || f == e || c[e] != c[f]) continue;
                auto key = std::minmax(e, f);
                if (seen.insert(key).second) out.push_back(Violation{key.first, key.second, m, c[e]});
            }
        }
    }
    return out;
}

inline bool is_injective(const Graph& g, const Coloring& c) { return verify_injective(g, c).empty(); }

/// Proper vertex coloring check over arbitrary adjacency; 0 counts as invalid.
inline bool is_proper(const Adjacency& adj, std::span<const int> colors, int k) {
    if (colors.size() != adj.size()) return false;
    for (std::size_t v = 0; v < adj.size(); ++v) {
        if (colors[v] < 1 || colors[v] > k) return false;
        for (int w : adj[v])
            if (colors[static_cast<std::size_t>(w)] == colors[v]) return false;
    }
    return true;
}

} // namespace injec
