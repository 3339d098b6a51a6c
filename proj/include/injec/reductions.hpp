#pragma once

#include "injec/coloring.hpp"
#include "injec/error.hpp"
#include "injec/gadgets.hpp"
#include "injec/graph.hpp"
#include "injec/vertex_coloring.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace injec {

/// Where an output element came from: a source vertex ("v3"), a source edge
/// ("e3-7"), or "link" for edges joining two gadgets; plus its gadget role.
struct Origin {
    std::string source;
    std::string role;

    friend bool operator==(const Origin&, const Origin&) = default;
};

/// A reduced instance. Output vertex labels are "<source>/<role>".
struct ReductionOutput {
    std::string construction;
    int k = 0;  ///< colors of the target injective-coloring question
    Graph source;
    Graph graph;
    std::vector<Origin> vertex_origin;
    std::vector<Origin> edge_origin;
    std::unordered_map<std::string, VertexId> ids;
    std::map<std::string, int> params;

    VertexId vertex(const std::string& label) const {
        auto it = ids.find(label);
        if (it == ids.end()) throw Error(ErrorCode::BadParams, "no output vertex " + label);
        return it->second;
    }

    EdgeId edge(const std::string& a, const std::string& b) const {
        auto e = graph.find_edge(vertex(a), vertex(b));
        if (!e) throw Error(ErrorCode::BadParams, "no output edge " + a + " - " + b);
        return *e;
    }
};

inline std::string vertex_tag(VertexId v) { return "v" + std::to_string(v); }
inline std::string edge_tag(const Edge& e) { return "e" + std::to_string(e.u) + "-" + std::to_string(e.v); }

namespace detail {

inline Origin split_label(const std::string& label) {
    auto slash = label.find('/');
    if (slash == std::string::npos) return {label, ""};
    return {label.substr(0, slash), label.substr(slash + 1)};
}

inline ReductionOutput finish_reduction(std::string name, int k, const Graph& source, const GraphBuilder& b) {
    ReductionOutput out;
    out.construction = std::move(name);
    out.k = k;
    out.source = source;
    out.graph = b.build();
    for (const auto& [label, id] : b.index()) out.ids.emplace(label, id);
    for (VertexId v = 0; v < out.graph.vertex_count(); ++v) out.vertex_origin.push_back(split_label(out.graph.label(v)));
    for (const Edge& e : out.graph.edges()) {
        const Origin& a = out.vertex_origin[static_cast<std::size_t>(e.u)];
        const Origin& c = out.vertex_origin[static_cast<std::size_t>(e.v)];
        if (a.source == c.source) out.edge_origin.push_back({a.source, a.role + "-" + c.role});
        else out.edge_origin.push_back({"link", a.source + "/" + a.role + " " + c.source + "/" + c.role});
    }
    return out;
}

inline void require_cubic(const Graph& g) {
    if (!is_regular(g, 3)) throw Error(ErrorCode::NotCubic, "source graph is not cubic");
}

inline void require_degree_at_most(const Graph& g, int d) {
    if (max_degree(g) > d)
        throw Error(ErrorCode::DegreeTooHigh, "source maximum degree " + std::to_string(max_degree(g)) + " > " + std::to_string(d));
}

/// Writes role-template colors for one gadget copy into `c`, mapping colors
/// through `perm` (1-based; perm[0] unused).
inline void apply_template(const ReductionOutput& out, Coloring& c, const std::string& prefix,
                           const std::vector<RoleColor>& roles, const std::vector<int>& perm) {
    for (const auto& [a, b, col] : roles) {
        std::string la = a.find('/') == std::string::npos ? prefix + a : a;
        std::string lb = b.find('/') == std::string::npos ? prefix + b : b;
        c.set(out.edge(la, lb), perm[static_cast<std::size_t>(col)]);
    }
}

/// Permutation of 1..k swapping `from` and `to`.
inline std::vector<int> swap_perm(int k, int from, int to) {
    std::vector<int> p(static_cast<std::size_t>(k + 1));
    for (int i = 0; i <= k; ++i) p[static_cast<std::size_t>(i)] = i;
    std::swap(p[static_cast<std::size_t>(from)], p[static_cast<std::size_t>(to)]);
    return p;
}

/// Permutation of 1..k shifting every color cyclically by `by`.
inline std::vector<int> shift_perm(int k, int by) {
    std::vector<int> p(static_cast<std::size_t>(k + 1), 0);
    for (int i = 1; i <= k; ++i) p[static_cast<std::size_t>(i)] = shift(i, by, k);
    return p;
}

inline Coloring checked(const Graph& g, Coloring c, const std::string& what) {
    if (!c.total()) throw Error(ErrorCode::PartialColoring, what + ": forward coloring left edges uncolored");
    auto bad = verify_injective(g, c);
    if (!bad.empty()) throw Error(ErrorCode::BadParams, what + ": forward coloring has " + std::to_string(bad.size()) + " conflicts");
    return c;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Source-problem oracles.

inline std::optional<Coloring> proper_edge_color_decide(const Graph& g, int k, SearchLimits limits = {}) {
    SearchResult r = vertex_color_search(line_graph(g), k, {}, limits);
    if (r.status == SearchStatus::Timeout) throw Error(ErrorCode::CapExceeded, "edge-coloring search ran out of budget");
    if (r.status != SearchStatus::Found) return std::nullopt;
    return Coloring(std::move(r.colors), std::max(k, 1));
}

inline std::optional<std::vector<int>> proper_vertex_color_decide(const Graph& g, int k, SearchLimits limits = {}) {
    SearchResult r = vertex_color_search(adjacency_of(g), k, {}, limits);
    if (r.status == SearchStatus::Timeout) throw Error(ErrorCode::CapExceeded, "vertex-coloring search ran out of budget");
    if (r.status != SearchStatus::Found) return std::nullopt;
    return std::move(r.colors);
}

// ---------------------------------------------------------------------------
// Cubic source, 3 colors: G' (subcubic) and G'' (cubic).

namespace detail {

inline void add_gprime_copy(GraphBuilder& b, const Graph& g, const std::string& suffix, bool sharedVertices = false) {
    const std::string vs = sharedVertices ? "" : suffix;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (!b.index().contains(vertex_tag(v) + "/v" + vs)) b.add(vertex_tag(v) + "/v" + vs);
    for (const Edge& e : g.edges()) {
        Scope s{b, edge_tag(e) + "/"};
        // Roles carry the copy suffix so that three copies can coexist.
        for (const char* r : {"w", "z", "a", "b", "c", "d", "e", "f"}) s.add(std::string(r) + suffix);
        auto R = [&](const char* r) { return std::string(r) + suffix; };
        b.connect(b.id(vertex_tag(e.u) + "/v" + vs), s.id(R("w")));
        b.connect(b.id(vertex_tag(e.v) + "/v" + vs), s.id(R("w")));
        s.connect(R("w"), R("z"));
        s.connect(R("z"), R("a"));
        s.connect(R("z"), R("b"));
        s.connect(R("a"), R("c"));
        s.connect(R("b"), R("c"));
        s.connect(R("a"), R("d"));
        s.connect(R("b"), R("e"));
        s.connect(R("c"), R("f"));
        s.connect(R("d"), R("f"));
        s.connect(R("e"), R("f"));
    }
}

inline std::vector<RoleColor> gprime_template(const Edge& e, const std::string& suffix) {
    std::vector<RoleColor> out;
    for (auto [a, b, c] : edge_3cubic_template()) {
        auto name = [&](const std::string& r) {
            if (r == "u") return vertex_tag(e.u) + "/v" + suffix;
            if (r == "v") return vertex_tag(e.v) + "/v" + suffix;
            return r + suffix;
        };
        out.emplace_back(name(a), name(b), c);
    }
    return out;
}

} // namespace detail

/// Removes every edge uv and attaches an edge gadget to u and v:
/// n + 8m vertices, 12m edges.
inline ReductionOutput build_Gprime_3cubic(const Graph& g) {
    detail::require_cubic(g);
    GraphBuilder b;
    detail::add_gprime_copy(b, g, "");
    return detail::finish_reduction("gprime", 3, g, b);
}

/// Three disjoint copies of G' (roles suffixed ^1, ^2, ^3) plus, per source
/// edge, a star r-{s,p,q} with s ~ d^3, e^2; p ~ d^1, e^3; q ~ d^2, e^1.
/// Source vertices are kept per copy, which keeps every degree at 3:
/// 3n + 28m vertices, 45m edges. With `identifyVertices` the three copies of
/// each source vertex are merged instead (n + 28m vertices, source vertices
/// of degree 9); forward coloring supports only the default.
inline ReductionOutput build_Gdoubleprime_3cubic(const Graph& g, bool identifyVertices = false) {
    detail::require_cubic(g);
    GraphBuilder b;
    for (int i = 1; i <= 3; ++i) detail::add_gprime_copy(b, g, "^" + std::to_string(i), identifyVertices);
    for (const Edge& e : g.edges()) {
        detail::Scope s{b, edge_tag(e) + "/"};
        for (const char* r : {"r", "s", "p", "q"}) s.add(r);
        for (const char* r : {"s", "p", "q"}) s.connect("r", r);
        s.connect("s", "d^3");
        s.connect("s", "e^2");
        s.connect("p", "d^1");
        s.connect("p", "e^3");
        s.connect("q", "d^2");
        s.connect("q", "e^1");
    }
    return detail::finish_reduction("gpp", 3, g, b);
}

/// Injective 3-coloring of G' from a proper 3-edge-coloring of the source.
inline Coloring forward_color_Gprime(const ReductionOutput& out, const Coloring& proper) {
    Coloring c(out.graph.edge_count(), 3);
    for (EdgeId e = 0; e < out.source.edge_count(); ++e) {
        const Edge& ed = out.source.edge(e);
        detail::apply_template(out, c, edge_tag(ed) + "/", detail::gprime_template(ed, ""),
                               detail::shift_perm(3, proper[e] - 1));
    }
    return detail::checked(out.graph, std::move(c), "gprime");
}

/// Copy i uses the source coloring shifted by i; the star edges at s, p, q
/// take the triple colors of copies 1, 2, 3.
inline Coloring forward_color_Gdoubleprime(const ReductionOutput& out, const Coloring& proper) {
    Coloring c(out.graph.edge_count(), 3);
    for (EdgeId e = 0; e < out.source.edge_count(); ++e) {
        const Edge& ed = out.source.edge(e);
        const std::string pre = edge_tag(ed) + "/";
        std::array<int, 4> triple{};
        for (int i = 1; i <= 3; ++i) {
            triple[static_cast<std::size_t>(i)] = detail::shift(proper[e], i, 3);
            std::string suffix = "^" + std::to_string(i);
            detail::apply_template(out, c, pre, detail::gprime_template(ed, suffix),
                                   detail::shift_perm(3, triple[static_cast<std::size_t>(i)] - 1));
        }
        auto set = [&](const char* x, const char* y, int col) { c.set(out.edge(pre + x, pre + y), col); };
        set("s", "d^3", triple[1]);
        set("s", "e^2", triple[1]);
        set("r", "s", triple[1]);
        set("p", "d^1", triple[2]);
        set("p", "e^3", triple[2]);
        set("r", "p", triple[2]);
        set("q", "d^2", triple[3]);
        set("q", "e^1", triple[3]);
        set("r", "q", triple[3]);
    }
    return detail::checked(out.graph, std::move(c), "gpp");
}

// ---------------------------------------------------------------------------
// Cubic source, 4 colors.

/// Port (0, 3 or 6) of S_u used by each source edge at u: edges take ports in
/// EdgeId order.
inline int port_4cubic(const Graph& g, VertexId u, EdgeId e) {
    auto inc = g.incident(u);
    std::vector<EdgeId> sorted(inc.begin(), inc.end());
    std::sort(sorted.begin(), sorted.end());
    auto it = std::find(sorted.begin(), sorted.end(), e);
    return 3 * static_cast<int>(it - sorted.begin());
}

/// Every vertex becomes S_u, every edge uv an edge gadget between free
/// ports of S_u and S_v: 12n + 2m vertices, 15n + 5m edges.
inline ReductionOutput build_reduction_4cubic(const Graph& g) {
    detail::require_cubic(g);
    GraphBuilder b;
    for (VertexId v = 0; v < g.vertex_count(); ++v) add_vertex_gadget_4cubic(detail::Scope{b, vertex_tag(v) + "/"});
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        VertexId yu = b.id(vertex_tag(ed.u) + "/y" + std::to_string(port_4cubic(g, ed.u, e)));
        VertexId yv = b.id(vertex_tag(ed.v) + "/y" + std::to_string(port_4cubic(g, ed.v, e)));
        add_edge_gadget_4cubic(detail::Scope{b, edge_tag(ed) + "/"}, yu, yv);
    }
    return detail::finish_reduction("4cubic", 4, g, b);
}

/// Every pendant gets color 1 and the gadget of an edge with source color c
/// is colored {1, c+1}; S_u colorings come from enumerating S_u once.
inline Coloring forward_color_4cubic(const ReductionOutput& out, const Coloring& proper) {
    static const std::vector<std::vector<int>> sColorings = [] {
        GadgetInstance s = gadget_vertex_4cubic();
        return enumerate_colorings(conflict_graph(s.graph).adjacency, 4);
    }();
    static const GadgetInstance S = gadget_vertex_4cubic();
    auto sideSet = [&](const std::vector<int>& col, int i) {
        EdgeId e1 = S.edge(detail::idx("x", i), detail::idx("x", (i + 1) % 9));
        EdgeId e2 = S.edge(detail::idx("x", i), detail::idx("x", (i + 8) % 9));
        int c1 = col[static_cast<std::size_t>(e1)];
        int c2 = col[static_cast<std::size_t>(e2)];
        return std::make_pair(std::min(c1, c2), std::max(c1, c2));
    };
    Coloring c(out.graph.edge_count(), 4);
    const Graph& g = out.source;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        std::array<std::pair<int, int>, 3> want{};
        for (EdgeId e : g.incident(u)) {
            int port = port_4cubic(g, u, e);
            want[static_cast<std::size_t>(port / 3)] = {1, proper[e] + 1};
        }
        const std::vector<int>* pick = nullptr;
        for (const auto& col : sColorings) {
            bool ok = true;
            for (int i : {0, 3, 6}) {
                if (col[static_cast<std::size_t>(S.edge(detail::idx("x", i), detail::idx("y", i)))] != 1 ||
                    sideSet(col, i) != want[static_cast<std::size_t>(i / 3)])
                    ok = false;
            }
            if (ok) {
                pick = &col;
                break;
            }
        }
        if (!pick) throw Error(ErrorCode::BadParams, "4cubic: source coloring is not proper at vertex " + std::to_string(u));
        const std::string pre = vertex_tag(u) + "/";
        for (EdgeId e = 0; e < S.graph.edge_count(); ++e)
            c.set(out.edge(pre + S.graph.label(S.graph.edge(e).u), pre + S.graph.label(S.graph.edge(e).v)),
                  (*pick)[static_cast<std::size_t>(e)]);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const std::string pre = edge_tag(ed) + "/";
        int b = proper[e] + 1;
        std::vector<int> rest;
        for (int x = 2; x <= 4; ++x)
            if (x != b) rest.push_back(x);
        std::string yu = vertex_tag(ed.u) + "/y" + std::to_string(port_4cubic(g, ed.u, e));
        std::string yv = vertex_tag(ed.v) + "/y" + std::to_string(port_4cubic(g, ed.v, e));
        c.set(out.edge(pre + "w", pre + "z"), b);
        c.set(out.edge(yu, pre + "w"), rest[0]);
        c.set(out.edge(yv, pre + "w"), rest[0]);
        c.set(out.edge(yu, pre + "z"), rest[1]);
        c.set(out.edge(yv, pre + "z"), rest[1]);
    }
    return detail::checked(out.graph, std::move(c), "4cubic");
}

// ---------------------------------------------------------------------------
// Vertex 3-coloring sources: planar girth gadgets and the bipartite variant.

/// Optional caller embedding: rotation[u] lists u's neighbors in cyclic
/// order; the i-th neighbor is reached through terminal i.
using RotationSystem = std::vector<std::vector<VertexId>>;

namespace detail {

/// Terminal index (0..3) used at each endpoint of each source edge.
inline std::vector<std::array<int, 2>> assign_terminals(const Graph& g, const std::optional<RotationSystem>& rotation) {
    std::vector<std::array<int, 2>> out(static_cast<std::size_t>(g.edge_count()));
    if (rotation) {
        if (static_cast<int>(rotation->size()) != g.vertex_count())
            throw Error(ErrorCode::BadParams, "rotation system size does not match the source graph");
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            for (int side = 0; side < 2; ++side) {
                VertexId x = side == 0 ? ed.u : ed.v;
                const auto& rot = (*rotation)[static_cast<std::size_t>(x)];
                auto it = std::find(rot.begin(), rot.end(), ed.other(x));
                if (it == rot.end() || rot.size() != static_cast<std::size_t>(g.degree(x)))
                    throw Error(ErrorCode::BadParams, "rotation at vertex " + std::to_string(x) + " does not list its neighbors");
                out[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)] = static_cast<int>(it - rot.begin());
            }
        }
        return out;
    }
    std::vector<int> used(static_cast<std::size_t>(g.vertex_count()), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        out[static_cast<std::size_t>(e)] = {used[static_cast<std::size_t>(ed.u)]++, used[static_cast<std::size_t>(ed.v)]++};
    }
    return out;
}

inline std::string terminal_label(VertexId v, int t) { return vertex_tag(v) + "/" + kTerminals[static_cast<std::size_t>(t)]; }

inline void add_link_edges(GraphBuilder& b, const Graph& g, const std::vector<std::array<int, 2>>& term) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        b.connect(b.id(terminal_label(ed.u, term[static_cast<std::size_t>(e)][0])),
                  b.id(terminal_label(ed.v, term[static_cast<std::size_t>(e)][1])));
    }
}

} // namespace detail

/// One girth gadget per source vertex, one edge between free terminals per
/// source edge. `ell` defaults to the smallest admissible cycle length.
inline ReductionOutput build_reduction_planar(const Graph& g, int gParam, std::optional<int> ell = std::nullopt,
                                              const std::optional<RotationSystem>& rotation = std::nullopt) {
    const int L = ell.value_or(default_cycle_length(gParam));
    check_planar_params(gParam, L);
    detail::require_degree_at_most(g, 4);
    GraphBuilder b;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        add_planar_gadget(detail::Scope{b, vertex_tag(v) + "/"}, L, {gParam, gParam, gParam, gParam});
    auto term = detail::assign_terminals(g, rotation);
    detail::add_link_edges(b, g, term);
    ReductionOutput out = detail::finish_reduction("planar", 3, g, b);
    out.params = {{"g", gParam}, {"l", L}};
    return out;
}

/// Branch lengths for the bipartite reduction: every source edge lengthens,
/// by 3, the branch it uses at its lower-id endpoint. Without this each
/// anchor-to-anchor path through a link edge has odd length 2(g+2)+1.
inline std::vector<std::array<int, 4>> bipartite_branch_lengths(const Graph& g,
                                                                const std::vector<std::array<int, 2>>& term) {
    std::vector<std::array<int, 4>> len(static_cast<std::size_t>(g.vertex_count()),
                                        {kBipartiteTailGirth, kBipartiteTailGirth, kBipartiteTailGirth, kBipartiteTailGirth});
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        len[static_cast<std::size_t>(g.edge(e).u)][static_cast<std::size_t>(term[static_cast<std::size_t>(e)][0])] += 3;
    return len;
}

/// Bipartite gadgets per source vertex, link edges as in the planar
/// reduction, and the parity fix; the output is bipartite.
inline ReductionOutput build_reduction_bipartite(const Graph& g, const std::optional<RotationSystem>& rotation = std::nullopt) {
    detail::require_degree_at_most(g, 4);
    auto term = detail::assign_terminals(g, rotation);
    auto len = bipartite_branch_lengths(g, term);
    GraphBuilder b;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        add_bipartite_gadget(detail::Scope{b, vertex_tag(v) + "/"}, len[static_cast<std::size_t>(v)]);
    detail::add_link_edges(b, g, term);
    ReductionOutput out = detail::finish_reduction("bipartite", 3, g, b);
    out.params = {{"g", kBipartiteTailGirth}};
    return out;
}

namespace detail {

/// Colors link edges with the least color unused by their colored conflicts.
inline void color_links_greedily(const ReductionOutput& out, Coloring& c) {
    for (EdgeId e = 0; e < out.graph.edge_count(); ++e) {
        if (out.edge_origin[static_cast<std::size_t>(e)].source != "link") continue;
        ColorSet banned;
        for_each_conflict(out.graph, e, [&](EdgeId f, EdgeId) {
            if (c[f] != 0) banned.insert(c[f]);
        });
        int col = (ColorSet::full(c.k()) - banned).first();
        if (col == 0) throw Error(ErrorCode::BadParams, out.construction + ": no free color for a link edge");
        c.set(e, col);
    }
}

/// Permutation sending color `from` to `to` by a cyclic shift of 1..3.
inline std::vector<int> rho_perm(int from, int to) { return shift_perm(3, to - from); }

} // namespace detail

/// Gadget of u gets terminal color vertexColors[u] (colors 1..3), then each
/// link edge takes a free color.
inline Coloring forward_color_planar(const ReductionOutput& out, const std::vector<int>& vertexColors) {
    const int L = out.params.at("l");
    const int gp = out.params.at("g");
    auto roles = planar_template(L, {gp, gp, gp, gp});
    const int base = (gp - 1) % 3 + 1;
    Coloring c(out.graph.edge_count(), 3);
    for (VertexId v = 0; v < out.source.vertex_count(); ++v)
        detail::apply_template(out, c, vertex_tag(v) + "/", roles, detail::rho_perm(base, vertexColors[static_cast<std::size_t>(v)]));
    detail::color_links_greedily(out, c);
    return detail::checked(out.graph, std::move(c), "planar");
}

/// As the planar case; each gadget shape is colored once by the exact engine
/// and then recolored so that its terminals carry the vertex color.
inline Coloring forward_color_bipartite(const ReductionOutput& out, const std::vector<int>& vertexColors) {
    const Graph& g = out.source;
    auto term = detail::assign_terminals(g, std::nullopt);
    auto len = bipartite_branch_lengths(g, term);
    std::map<std::array<int, 4>, std::pair<GadgetInstance, std::vector<int>>> shapes;
    Coloring c(out.graph.edge_count(), 3);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto key = len[static_cast<std::size_t>(v)];
        auto it = shapes.find(key);
        if (it == shapes.end()) {
            GadgetInstance gi = gadget_bipartite(key);
            auto col = vertex_color_decide(conflict_graph(gi.graph).adjacency, 3);
            if (!col) throw Error(ErrorCode::BadParams, "bipartite gadget is not injectively 3-colorable");
            it = shapes.emplace(key, std::make_pair(std::move(gi), std::move(*col))).first;
        }
        const auto& [gi, col] = it->second;
        int rho = col[static_cast<std::size_t>(gi.edge(detail::idx("a", key[0]), "alpha"))];
        auto perm = detail::rho_perm(rho, vertexColors[static_cast<std::size_t>(v)]);
        const std::string pre = vertex_tag(v) + "/";
        for (EdgeId e = 0; e < gi.graph.edge_count(); ++e) {
            const Edge& ed = gi.graph.edge(e);
            c.set(out.edge(pre + gi.graph.label(ed.u), pre + gi.graph.label(ed.v)), perm[static_cast<std::size_t>(col[static_cast<std::size_t>(e)])]);
        }
    }
    detail::color_links_greedily(out, c);
    return detail::checked(out.graph, std::move(c), "bipartite");
}

// ---------------------------------------------------------------------------
// k-regular source, k colors.

/// Largest vertex degree the construction can produce: 2l + p - 2, plus one
/// when r > 0, or the vertex-gadget degree if that is larger.
inline int bigk_degree_formula(const BigKParams& bp) {
    int gadget = 2 * bp.ell + bp.p - 2 + (bp.r > 0 ? 1 : 0);
    int vertexSide = (bp.k - 1 + bp.ell - 1) / bp.ell + 1;
    return std::max(gadget, vertexSide);
}

/// For each source vertex u, S_u has l vertices per neighbor; each pair of
/// neighbor groups is joined once between minimum-degree members (lowest
/// index on ties). Each source edge uv gets a gadget whose s vertices are
/// the group of v in S_u and the group of u in S_v.
inline ReductionOutput build_reduction_bigk(const Graph& g, int k) {
    BigKParams bp = bigk_params(k);
    if (!is_regular(g, k)) throw Error(ErrorCode::NotRegular, "source graph is not " + std::to_string(k) + "-regular");
    GraphBuilder b;
    auto member = [&](VertexId u, int group, int j) {
        return vertex_tag(u) + "/g" + std::to_string(group) + "." + std::to_string(j);
    };
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        const int deg = g.degree(u);
        for (int i = 0; i < deg; ++i)
            for (int j = 1; j <= bp.ell; ++j) b.add(member(u, i, j));
        std::vector<std::vector<int>> inner(static_cast<std::size_t>(deg), std::vector<int>(static_cast<std::size_t>(bp.ell), 0));
        auto pickMin = [&](int group) {
            auto& d = inner[static_cast<std::size_t>(group)];
            return static_cast<int>(std::min_element(d.begin(), d.end()) - d.begin());
        };
        for (int i = 0; i < deg; ++i)
            for (int j = i + 1; j < deg; ++j) {
                int a = pickMin(i);
                int c = pickMin(j);
                ++inner[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
                ++inner[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
                b.connect(b.id(member(u, i, a + 1)), b.id(member(u, j, c + 1)));
            }
    }
    auto groupOf = [&](VertexId u, VertexId v) {
        auto nb = g.neighbors(u);
        return static_cast<int>(std::lower_bound(nb.begin(), nb.end(), v) - nb.begin());
    };
    for (const Edge& ed : g.edges()) {
        detail::Scope s{b, edge_tag(ed) + "/"};
        add_bigk_body(s, bp);
        for (int j = 1; j <= bp.ell; ++j) {
            s.connect(b.id(member(ed.u, groupOf(ed.u, ed.v), j)), "e");
            s.connect(b.id(member(ed.v, groupOf(ed.v, ed.u), j)), "e");
        }
    }
    ReductionOutput out = detail::finish_reduction("bigk", k, g, b);
    out.params = {{"k", bp.k}, {"p", bp.p}, {"r", bp.r}, {"l", bp.ell}};
    return out;
}

/// Explicit injective coloring of the large-k edge gadget with every e-s edge
/// colored 1: ab gets 1, the rest of the {x, a, b, c} clique and the d-y
/// edges get 2, 3, ... in order, e-z copies a-z, d-e and d-a copy d-y1, d-z
/// copies c-z, and the exact engine colors the remaining y clique.
inline Coloring bigk_gadget_coloring(const GadgetInstance& gi) {
    BigKParams bp = bigk_params(gi.params.at("k"));
    const int k = bp.k;
    Coloring c(gi.graph.edge_count(), k);
    for (int i = 1; i <= gi.params.at("s_count"); ++i) c.set(gi.edge("e", detail::idx("s", i)), 1);
    std::vector<std::string> clique;
    for (int i = 1; i <= bp.p - 3; ++i) clique.push_back(detail::idx("x", i));
    clique.push_back("a");
    clique.push_back("b");
    clique.push_back("c");
    c.set(gi.edge("a", "b"), 1);
    int next = 2;
    for (std::size_t i = 0; i < clique.size(); ++i)
        for (std::size_t j = i + 1; j < clique.size(); ++j)
            if (!(clique[i] == "a" && clique[j] == "b")) c.set(gi.edge(clique[i], clique[j]), next++);
    for (int j = 1; j <= bp.r; ++j) c.set(gi.edge("d", detail::idx("y", j)), next++);
    for (int i = 1; i <= bp.p - 3; ++i) c.set(gi.edge("e", detail::idx("x", i)), c[gi.edge("a", detail::idx("x", i))]);
    c.set(gi.edge("e", "c"), c[gi.edge("a", "c")]);
    if (bp.r > 0) {
        int dy = c[gi.edge("d", "y1")];
        c.set(gi.edge("d", "e"), dy);
        c.set(gi.edge("d", "a"), dy);
        for (int i = 1; i <= bp.p - 3; ++i) c.set(gi.edge("d", detail::idx("x", i)), c[gi.edge("c", detail::idx("x", i))]);
        c.set(gi.edge("d", "b"), c[gi.edge("c", "b")]);
    }
    std::vector<int> pre(c.values().begin(), c.values().end());
    SearchResult r = vertex_color_search(conflict_graph(gi.graph).adjacency, k, pre);
    if (r.status != SearchStatus::Found) throw Error(ErrorCode::BadParams, "large-k gadget coloring could not be completed");
    return Coloring(std::move(r.colors), k);
}

/// Forward coloring from a proper k-edge-coloring of the source: gadgets get
/// the explicit coloring with 1 swapped for the source color, then S_u edges
/// take the least free color in EdgeId order. Returns nullopt if some S_u
/// edge finds no free color.
inline std::optional<Coloring> forward_color_bigk(const ReductionOutput& out, const Coloring& proper) {
    const int k = out.k;
    GadgetInstance gi = gadget_bigk(k);
    Coloring base = bigk_gadget_coloring(gi);
    Coloring c(out.graph.edge_count(), k);
    const Graph& g = out.source;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const std::string pre = edge_tag(ed) + "/";
        auto perm = detail::swap_perm(k, 1, proper[e]);
        const VertexId eCenter = out.vertex(pre + "e");
        for (EdgeId ge = 0; ge < gi.graph.edge_count(); ++ge) {
            const Edge& x = gi.graph.edge(ge);
            const std::string la = gi.graph.label(x.u);
            const std::string lb = gi.graph.label(x.v);
            if (la[0] == 's' || lb[0] == 's') continue;
            c.set(out.edge(pre + la, pre + lb), perm[static_cast<std::size_t>(base[ge])]);
        }
        for (EdgeId oe : out.graph.incident(eCenter))
            if (!c.assigned(oe)) c.set(oe, proper[e]);
    }
    for (EdgeId e = 0; e < out.graph.edge_count(); ++e) {
        if (c.assigned(e)) continue;
        ColorSet banned;
        for_each_conflict(out.graph, e, [&](EdgeId f, EdgeId) {
            if (c[f] != 0) banned.insert(c[f]);
        });
        int col = (ColorSet::full(k) - banned).first();
        if (col == 0) return std::nullopt;
        c.set(e, col);
    }
    return detail::checked(out.graph, std::move(c), "bigk");
}

} // namespace injec
