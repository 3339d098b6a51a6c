#pragma once

#include "injec/coloring.hpp"
#include "injec/error.hpp"
#include "injec/graph.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace injec {

/// A gadget graph with every vertex reachable by its label.
struct GadgetInstance {
    Graph graph;
    std::map<std::string, VertexId> ports;
    std::map<std::string, int> params;

    VertexId port(const std::string& name) const {
        auto it = ports.find(name);
        if (it == ports.end()) throw Error(ErrorCode::BadParams, "no port named " + name);
        return it->second;
    }

    EdgeId edge(const std::string& a, const std::string& b) const {
        auto e = graph.find_edge(port(a), port(b));
        if (!e) throw Error(ErrorCode::BadParams, "no edge " + a + "-" + b);
        return *e;
    }
};

/// Edge given by the labels of its endpoints, with a color.
using RoleColor = std::tuple<std::string, std::string, int>;

namespace detail {

/// Adds vertices under a common label prefix.
struct Scope {
    GraphBuilder& b;
    std::string prefix;

    VertexId add(const std::string& role) const { return b.add(prefix + role); }
    VertexId id(const std::string& role) const { return b.id(prefix + role); }
    void connect(const std::string& r1, const std::string& r2) const { b.connect(id(r1), id(r2)); }
    void connect(VertexId x, const std::string& r) const { b.connect(x, id(r)); }
};

inline GadgetInstance finish(const GraphBuilder& b, std::map<std::string, int> params = {}) {
    return GadgetInstance{b.build(), b.index(), std::move(params)};
}

inline std::string idx(const std::string& base, int i) { return base + std::to_string(i); }

/// Cyclic color shift keeping colors in 1..k.
inline int shift(int c, int by, int k) { return ((c - 1 + by) % k + k) % k + 1; }

} // namespace detail

// ---------------------------------------------------------------------------
// Edge gadget for subcubic graphs, injective 3-edge-coloring.

inline void add_edge_gadget_3cubic(const detail::Scope& s, VertexId u, VertexId v) {
    for (const char* r : {"w", "z", "a", "b", "c", "d", "e", "f"}) s.add(r);
    s.connect(u, "w");
    s.connect(v, "w");
    s.connect("w", "z");
    s.connect("z", "a");
    s.connect("z", "b");
    s.connect("a", "c");
    s.connect("b", "c");
    s.connect("a", "d");
    s.connect("b", "e");
    s.connect("c", "f");
    s.connect("d", "f");
    s.connect("e", "f");
}

/// E_uv with its two attachment vertices u and v.
inline GadgetInstance gadget_edge_3cubic() {
    GraphBuilder b;
    VertexId u = b.add("u");
    VertexId v = b.add("v");
    add_edge_gadget_3cubic(detail::Scope{b, ""}, u, v);
    return detail::finish(b);
}

/// Injective 3-coloring of E_uv with the triple uw, vw, wz on color 1.
inline std::vector<RoleColor> edge_3cubic_template() {
    return {{"u", "w", 1}, {"v", "w", 1}, {"w", "z", 1}, {"d", "f", 1}, {"e", "f", 1}, {"c", "f", 1},
            {"b", "z", 2}, {"b", "c", 2}, {"b", "e", 2}, {"a", "z", 3}, {"a", "c", 3}, {"a", "d", 3}};
}

// ---------------------------------------------------------------------------
// Cubic gadgets, injective 4-edge-coloring.

inline void add_vertex_gadget_4cubic(const detail::Scope& s) {
    for (int i = 0; i < 9; ++i) s.add(detail::idx("x", i));
    for (int i : {0, 3, 6}) s.add(detail::idx("y", i));
    for (int i = 0; i < 9; ++i) s.connect(detail::idx("x", i), detail::idx("x", (i + 1) % 9));
    s.connect("x1", "x8");
    s.connect("x2", "x4");
    s.connect("x5", "x7");
    for (int i : {0, 3, 6}) s.connect(detail::idx("x", i), detail::idx("y", i));
}

/// S_u: 9-cycle with three chords and pendant ports y0, y3, y6.
inline GadgetInstance gadget_vertex_4cubic() {
    GraphBuilder b;
    add_vertex_gadget_4cubic(detail::Scope{b, ""});
    return detail::finish(b);
}

/// The 4-cycle yu-w-yv-z plus the chord wz.
inline void add_edge_gadget_4cubic(const detail::Scope& s, VertexId yu, VertexId yv) {
    s.add("w");
    s.add("z");
    s.connect(yu, "w");
    s.connect(yu, "z");
    s.connect(yv, "w");
    s.connect(yv, "z");
    s.connect("w", "z");
}

/// Two copies of S_u (prefixes "u:" and "v:") joined at port 0 by an edge gadget.
inline GadgetInstance gadget_edge_4cubic_pair() {
    GraphBuilder b;
    add_vertex_gadget_4cubic(detail::Scope{b, "u:"});
    add_vertex_gadget_4cubic(detail::Scope{b, "v:"});
    add_edge_gadget_4cubic(detail::Scope{b, ""}, b.id("u:y0"), b.id("v:y0"));
    return detail::finish(b);
}

// ---------------------------------------------------------------------------
// Planar vertex gadget with large girth, injective 3-edge-coloring.

inline constexpr std::array<const char*, 4> kBranches{"a", "b", "c", "d"};
inline constexpr std::array<const char*, 4> kTerminals{"alpha", "beta", "gamma", "delta"};

/// Validates the cycle length: at least g and an odd multiple of 3.
inline void check_planar_params(int g, int ell) {
    if (g < 1) throw Error(ErrorCode::BadParams, "g must be positive");
    if (ell < g || ell % 3 != 0 || (ell / 3) % 2 == 0)
        throw Error(ErrorCode::BadParams, "cycle length " + std::to_string(ell) + " must be an odd multiple of 3 and at least g=" +
                                              std::to_string(g));
}

/// Smallest admissible cycle length for girth target g.
inline int default_cycle_length(int g) {
    int ell = 3;
    while (ell < g) ell += 6;
    return ell;
}

/// w and z hung off `anchor`, four branch paths with side pendants, and the
/// terminals. `lengths[i]` is the number of path vertices on branch i.
inline void add_planar_tail(const detail::Scope& s, VertexId anchor, std::array<int, 4> lengths) {
    s.add("w");
    s.add("z");
    s.connect(anchor, "w");
    s.connect(anchor, "z");
    for (std::size_t br = 0; br < 4; ++br) {
        const std::string name = kBranches[br];
        const int len = lengths[br];
        for (int i = 1; i <= len; ++i) s.add(detail::idx(name, i));
        for (int i = 1; i < len; ++i) s.add(detail::idx(name + "'", i));
        s.add(kTerminals[br]);
        s.connect(br < 2 ? "w" : "z", detail::idx(name, 1));
        for (int i = 1; i < len; ++i) {
            s.connect(detail::idx(name, i), detail::idx(name, i + 1));
            s.connect(detail::idx(name, i), detail::idx(name + "'", i));
        }
        s.connect(detail::idx(name, len), kTerminals[br]);
    }
}

inline void add_planar_gadget(const detail::Scope& s, int ell, std::array<int, 4> lengths) {
    for (int i = 1; i <= ell; ++i) s.add(detail::idx("x", i));
    for (int i = 1; i <= ell; ++i) s.add(detail::idx("y", i));
    for (int i = 1; i <= ell; ++i) {
        s.connect(detail::idx("x", i), detail::idx("x", i % ell + 1));
        s.connect(detail::idx("x", i), detail::idx("y", i));
    }
    add_planar_tail(s, s.id("y1"), lengths);
}

/// Girth-g vertex gadget: 2l + 8g + 2 vertices and as many edges.
inline GadgetInstance gadget_planar_girth(int g, int ell) {
    check_planar_params(g, ell);
    GraphBuilder b;
    add_planar_gadget(detail::Scope{b, ""}, ell, {g, g, g, g});
    return detail::finish(b, {{"g", g}, {"l", ell}});
}

/// Branch and terminal edges colored by distance from the anchor: anchor
/// edges 2, w/z branch edges 3, then 1, 2, 3, ... along every branch.
inline std::vector<RoleColor> planar_tail_template(std::array<int, 4> lengths) {
    std::vector<RoleColor> out;
    out.emplace_back("anchor", "w", 2);
    out.emplace_back("anchor", "z", 2);
    for (std::size_t br = 0; br < 4; ++br) {
        const std::string name = kBranches[br];
        out.emplace_back(br < 2 ? "w" : "z", name + "1", 3);
        for (int i = 1; i < lengths[br]; ++i) {
            int c = (i - 1) % 3 + 1;
            out.emplace_back(detail::idx(name, i), detail::idx(name, i + 1), c);
            out.emplace_back(detail::idx(name, i), detail::idx(name + "'", i), c);
        }
        out.emplace_back(detail::idx(name, lengths[br]), kTerminals[br], (lengths[br] - 1) % 3 + 1);
    }
    return out;
}

/// The figure coloring of the girth gadget; terminal color (g-1) mod 3 + 1.
inline std::vector<RoleColor> planar_template(int ell, std::array<int, 4> lengths) {
    std::vector<RoleColor> out;
    for (int i = 1; i <= ell; ++i) {
        int c = (i - 1) % 3 + 1;
        out.emplace_back(detail::idx("x", i), detail::idx("x", i % ell + 1), c);
        out.emplace_back(detail::idx("x", i), detail::idx("y", i), c);
    }
    for (auto& [a, b, c] : planar_tail_template(lengths)) out.emplace_back(a == "anchor" ? "y1" : a, b, c);
    return out;
}

// ---------------------------------------------------------------------------
// Subdivided K4 with pendants, and the bipartite vertex gadget built from it.

inline void add_H(const detail::Scope& s) {
    for (int i = 1; i <= 4; ++i) s.add(detail::idx("x", i));
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            std::string ij = std::to_string(i) + std::to_string(j);
            s.add("x" + ij);
            s.add("y" + ij);
            s.connect("x" + ij, detail::idx("x", i));
            s.connect("x" + ij, detail::idx("x", j));
            s.connect("x" + ij, "y" + ij);
        }
}

/// H: 16 vertices, 18 edges.
inline GadgetInstance gadget_H() {
    GraphBuilder b;
    add_H(detail::Scope{b, ""});
    return detail::finish(b);
}

inline constexpr int kBipartiteTailGirth = 6;

/// Two copies of H joined at y12, a new anchor y1 off the first copy, then the
/// girth-gadget tail. Branch lengths default to 6.
inline void add_bipartite_gadget(const detail::Scope& s, std::array<int, 4> lengths) {
    add_H(detail::Scope{s.b, s.prefix + "H1."});
    add_H(detail::Scope{s.b, s.prefix + "H2."});
    s.connect("H1.y12", "H2.y12");
    s.add("y1");
    s.connect("H1.y12", "y1");
    add_planar_tail(s, s.id("y1"), lengths);
}

inline GadgetInstance gadget_bipartite(std::array<int, 4> lengths = {6, 6, 6, 6}) {
    GraphBuilder b;
    add_bipartite_gadget(detail::Scope{b, ""}, lengths);
    return detail::finish(b, {{"g", kBipartiteTailGirth}});
}

// ---------------------------------------------------------------------------
// Large-k edge gadget.

struct BigKParams {
    int k = 0;
    int p = 0;
    int r = 0;
    int ell = 0;

    friend bool operator==(const BigKParams&, const BigKParams&) = default;
};

/// Largest p with C(p,2) <= k, remainder r, and l = 2p.
inline BigKParams bigk_params(int k) {
    if (k < 6) throw Error(ErrorCode::KTooSmall, "k=" + std::to_string(k) + " < 6");
    int p = 4;
    while ((p + 1) * p / 2 <= k) ++p;
    BigKParams bp{k, p, k - p * (p - 1) / 2, 2 * p};
    return bp;
}

/// Gadget body without the s vertices: cliques {x, a, b, c}, {x, a, b, d},
/// {y, d}; e is joined to c, d and every x. d (and so the y clique) is absent
/// when r = 0.
inline void add_bigk_body(const detail::Scope& s, const BigKParams& bp) {
    std::vector<std::string> core;
    for (int i = 1; i <= bp.p - 3; ++i) core.push_back(detail::idx("x", i));
    core.push_back("a");
    core.push_back("b");
    for (const auto& r : core) s.add(r);
    s.add("c");
    s.add("e");
    for (std::size_t i = 0; i < core.size(); ++i) {
        for (std::size_t j = i + 1; j < core.size(); ++j) s.connect(core[i], core[j]);
        s.connect(core[i], "c");
    }
    s.connect("e", "c");
    for (int i = 1; i <= bp.p - 3; ++i) s.connect("e", detail::idx("x", i));
    if (bp.r == 0) return;
    s.add("d");
    for (const auto& r : core) s.connect(r, "d");
    s.connect("e", "d");
    for (int i = 1; i <= bp.r; ++i) {
        s.add(detail::idx("y", i));
        s.connect("d", detail::idx("y", i));
        for (int j = 1; j < i; ++j) s.connect(detail::idx("y", j), detail::idx("y", i));
    }
}

/// E_uv for color budget k with `s_count` pendant s vertices (default 2l).
inline GadgetInstance gadget_bigk(int k, std::optional<int> s_count = std::nullopt) {
    BigKParams bp = bigk_params(k);
    int count = s_count.value_or(2 * bp.ell);
    if (count < 1) throw Error(ErrorCode::BadParams, "s_count must be positive");
    GraphBuilder b;
    detail::Scope s{b, ""};
    add_bigk_body(s, bp);
    for (int i = 1; i <= count; ++i) {
        s.add(detail::idx("s", i));
        s.connect("e", detail::idx("s", i));
    }
    return detail::finish(b, {{"k", bp.k}, {"p", bp.p}, {"r", bp.r}, {"l", bp.ell}, {"s_count", count}});
}

// ---------------------------------------------------------------------------

/// Coloring of `gi` read from role triples; unlisted edges stay 0.
inline Coloring coloring_from_roles(const GadgetInstance& gi, const std::vector<RoleColor>& roles, int k) {
    Coloring c(gi.graph.edge_count(), k);
    for (const auto& [a, b, col] : roles) c.set(gi.edge(a, b), col);
    return c;
}

/// Copy of `gi` without the edge between two labelled vertices.
inline GadgetInstance without_edge(const GadgetInstance& gi, const std::string& a, const std::string& b) {
    EdgeId drop = gi.edge(a, b);
    std::vector<std::pair<int, int>> pairs;
    for (EdgeId e = 0; e < gi.graph.edge_count(); ++e)
        if (e != drop) pairs.emplace_back(gi.graph.edge(e).u, gi.graph.edge(e).v);
    GadgetInstance out = gi;
    out.graph = build_graph(gi.graph.vertex_count(), std::span<const std::pair<int, int>>(pairs), gi.graph.labels());
    return out;
}

} // namespace injec
