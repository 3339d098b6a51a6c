#pragma once

#include "injec/coloring.hpp"
#include "injec/graph.hpp"
#include "injec/vertex_coloring.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace injec {

enum class Answer { Yes, No, Unknown };

inline const char* to_string(Answer a) {
    switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
    }
    return "?";
}

struct SolveStats {
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

/// Outcome of a solver. A Yes answer from a witness-producing solver always
/// carries a coloring that has passed verify_injective.
struct SolveResult {
    Answer answer = Answer::Unknown;
    std::optional<Coloring> witness;
    SolveStats stats;
    std::vector<std::string> warnings;

    bool yes() const { return answer == Answer::Yes; }
};

namespace detail {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline Coloring checked_witness(const Graph& g, std::vector<int> colors, int k) {
    Coloring c(std::move(colors), k);
    if (!is_injective(g, c)) throw Error(ErrorCode::BadParams, "internal: solver produced an invalid coloring");
    return c;
}

} // namespace detail

/// Exact decision: proper k-coloring of the conflict graph.
inline SolveResult injective_decide(const Graph& g, int k, SearchLimits limits = {}) {
    detail::Stopwatch clock;
    SolveResult res;
    SearchResult r = vertex_color_search(conflict_graph(g).adjacency, k, {}, limits);
    res.stats.nodes = r.nodes;
    if (r.status == SearchStatus::Found) {
        res.answer = Answer::Yes;
        res.witness = detail::checked_witness(g, std::move(r.colors), k);
    } else {
        res.answer = r.status == SearchStatus::Infeasible ? Answer::No : Answer::Unknown;
    }
    res.stats.seconds = clock.seconds();
    return res;
}

inline int injective_chromatic(const Graph& g, SearchLimits limits = {}) {
    return vertex_chromatic(conflict_graph(g).adjacency, limits);
}

/// First-fit in EdgeId order: each edge takes the least color not used by an
/// already-colored conflicting edge. Uses at most 2(D-1)^2 + 1 colors.
inline Coloring greedy_injective(const Graph& g) {
    const int m = g.edge_count();
    std::vector<int> colors(static_cast<std::size_t>(m), 0);
    std::vector<int> stamp;
    int maxColor = 0;
    for (EdgeId e = 0; e < m; ++e) {
        stamp.assign(stamp.size(), 0);
        for_each_conflict(g, e, [&](EdgeId f, EdgeId) {
            int c = colors[static_cast<std::size_t>(f)];
            if (c == 0) return;
            if (static_cast<int>(stamp.size()) <= c) stamp.resize(static_cast<std::size_t>(c + 1), 0);
            stamp[static_cast<std::size_t>(c)] = 1;
        });
        int c = 1;
        while (c < static_cast<int>(stamp.size()) && stamp[static_cast<std::size_t>(c)]) ++c;
        colors[static_cast<std::size_t>(e)] = c;
        maxColor = std::max(maxColor, c);
    }
    return Coloring(std::move(colors), std::max(maxColor, 1));
}

/// Distance-two graph on one side of a bipartition. `via[i]` is a middle
/// vertex on the other side realizing edge i of `graph`; `members` maps local
/// ids back to vertices of the source.
struct AuxiliaryGraph {
    Graph graph;
    std::vector<VertexId> members;
    std::vector<VertexId> via;
};

inline AuxiliaryGraph build_auxiliary(const Graph& g, std::span<const VertexId> partA) {
    const int n = g.vertex_count();
    std::vector<int> local(static_cast<std::size_t>(n), -1);
    AuxiliaryGraph aux;
    for (VertexId v : partA) {
        if (v < 0 || v >= n || local[static_cast<std::size_t>(v)] >= 0)
            throw Error(ErrorCode::NotBipartition, "bad or repeated vertex in part");
        local[static_cast<std::size_t>(v)] = static_cast<int>(aux.members.size());
        aux.members.push_back(v);
    }
    for (const Edge& e : g.edges())
        if ((local[static_cast<std::size_t>(e.u)] >= 0) == (local[static_cast<std::size_t>(e.v)] >= 0))
            throw Error(ErrorCode::NotBipartition, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                                       " does not cross the bipartition");
    std::map<std::pair<int, int>, VertexId> pairs;
    for (VertexId b = 0; b < n; ++b) {
        if (local[static_cast<std::size_t>(b)] >= 0) continue;
        auto nb = g.neighbors(b);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                auto key = std::minmax(local[static_cast<std::size_t>(nb[i])], local[static_cast<std::size_t>(nb[j])]);
                pairs.emplace(key, b);
            }
    }
    std::vector<std::pair<int, int>> list;
    for (const auto& [key, b] : pairs) list.push_back(key);
    std::vector<std::string> labels;
    if (g.has_labels())
        for (VertexId v : aux.members) labels.push_back(g.label(v));
    aux.graph = build_graph(static_cast<int>(aux.members.size()), std::span<const std::pair<int, int>>(list),
                            std::move(labels));
    for (const Edge& e : aux.graph.edges()) aux.via.push_back(pairs.at({e.u, e.v}));
    return aux;
}

enum class Side { ContainingVertexZero, Opposite };

/// Colors a bipartite subcubic graph with three colors by 3-coloring the
/// distance-two graph of one side and giving every edge the color of its
/// endpoint on that side. Girth below 16 is reported as a warning only.
inline SolveResult girth16_color(const Graph& g, Side side = Side::ContainingVertexZero, SearchLimits limits = {}) {
    detail::Stopwatch clock;
    auto bp = bipartition(g);
    if (!bp) throw Error(ErrorCode::NotBipartite, "graph has an odd cycle");
    if (max_degree(g) > 3) throw Error(ErrorCode::NotSubcubic, "maximum degree " + std::to_string(max_degree(g)));
    SolveResult res;
    Girth gi = girth(g);
    if (!gi.at_least(16)) res.warnings.push_back("girth " + gi.str() + " < 16: no existence guarantee");
    const std::vector<VertexId>& part = side == Side::ContainingVertexZero ? bp->a : bp->b;
    AuxiliaryGraph aux = build_auxiliary(g, part);
    SearchResult r = vertex_color_search(adjacency_of(aux.graph), 3, {}, limits);
    res.stats.nodes = r.nodes;
    if (r.status != SearchStatus::Found) {
        res.answer = r.status == SearchStatus::Infeasible ? Answer::No : Answer::Unknown;
        res.stats.seconds = clock.seconds();
        return res;
    }
    std::vector<int> vertexColor(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < aux.members.size(); ++i) vertexColor[static_cast<std::size_t>(aux.members[i])] = r.colors[i];
    std::vector<int> edgeColor(static_cast<std::size_t>(g.edge_count()), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        int cu = vertexColor[static_cast<std::size_t>(ed.u)];
        edgeColor[static_cast<std::size_t>(e)] = cu != 0 ? cu : vertexColor[static_cast<std::size_t>(ed.v)];
    }
    Coloring lifted(std::move(edgeColor), 3);
    if (!is_injective(g, lifted)) {
        res.answer = Answer::No;
        res.warnings.push_back("lifted coloring failed verification");
    } else {
        res.answer = Answer::Yes;
        res.witness = std::move(lifted);
    }
    res.stats.seconds = clock.seconds();
    return res;
}

} // namespace injec
