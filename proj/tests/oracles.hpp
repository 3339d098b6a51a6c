#pragma once

// Brute-force reference implementations. Everything here is deliberately
// naive and independent of the library's search code.

#include "injec/injec.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using injec::EdgeId;
using injec::Graph;
using injec::VertexId;

inline std::vector<std::vector<char>> adjacency_matrix(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
    for (const auto& e : g.edges()) {
        m[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = 1;
        m[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = 1;
    }
    return m;
}

/// Calls fn(first, last) for every walk x-w-z-y whose three edges are
/// pairwise distinct. x == y is allowed (triangle).
inline void for_each_three_edge_walk(const Graph& g, const std::function<void(EdgeId, EdgeId)>& fn) {
    const int n = g.vertex_count();
    auto a = adjacency_matrix(g);
    auto adj = [&](int p, int q) { return a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] != 0; };
    for (int x = 0; x < n; ++x)
        for (int w = 0; w < n; ++w) {
            if (!adj(x, w)) continue;
            for (int z = 0; z < n; ++z) {
                if (z == x || !adj(w, z)) continue;
                for (int y = 0; y < n; ++y) {
                    if (y == w || !adj(z, y)) continue;
                    fn(*g.find_edge(x, w), *g.find_edge(z, y));
                }
            }
        }
}

inline std::set<std::pair<EdgeId, EdgeId>> conflict_pairs(const Graph& g) {
    std::set<std::pair<EdgeId, EdgeId>> out;
    for_each_three_edge_walk(g, [&](EdgeId e, EdgeId f) { out.insert(std::minmax(e, f)); });
    return out;
}

inline bool is_injective(const Graph& g, const std::vector<int>& colors) {
    bool ok = true;
    for_each_three_edge_walk(g, [&](EdgeId e, EdgeId f) {
        if (colors[static_cast<std::size_t>(e)] == colors[static_cast<std::size_t>(f)]) ok = false;
    });
    return ok;
}

/// Odometer over all k^items assignments; fn returns false to stop.
inline void for_each_assignment(int items, int k, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> c(static_cast<std::size_t>(items), 1);
    if (k < 1 && items > 0) return;
    while (true) {
        if (!fn(c)) return;
        int i = 0;
        while (i < items && c[static_cast<std::size_t>(i)] == k) c[static_cast<std::size_t>(i++)] = 1;
        if (i == items) return;
        ++c[static_cast<std::size_t>(i)];
    }
}

inline std::optional<std::vector<int>> injective_witness(const Graph& g, int k) {
    auto pairs = conflict_pairs(g);
    std::optional<std::vector<int>> found;
    for_each_assignment(g.edge_count(), k, [&](const std::vector<int>& c) {
        for (auto [e, f] : pairs)
            if (c[static_cast<std::size_t>(e)] == c[static_cast<std::size_t>(f)]) return true;
        found = c;
        return false;
    });
    return found;
}

inline int injective_chromatic(const Graph& g) {
    if (g.edge_count() == 0) return 0;
    for (int k = 1;; ++k)
        if (injective_witness(g, k)) return k;
}

inline bool proper(const injec::Adjacency& adj, const std::vector<int>& c) {
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (int w : adj[v])
            if (c[v] == c[static_cast<std::size_t>(w)]) return false;
    return true;
}

inline std::uint64_t proper_count(const injec::Adjacency& adj, int k) {
    std::uint64_t count = 0;
    for_each_assignment(static_cast<int>(adj.size()), k, [&](const std::vector<int>& c) {
        if (proper(adj, c)) ++count;
        return true;
    });
    return count;
}

inline bool proper_exists(const injec::Adjacency& adj, int k) {
    bool found = false;
    for_each_assignment(static_cast<int>(adj.size()), k, [&](const std::vector<int>& c) {
        found = proper(adj, c);
        return !found;
    });
    return found;
}

/// Shortest cycle through each edge: remove it and measure the distance
/// between its endpoints.
inline std::optional<int> girth(const Graph& g) {
    const int n = g.vertex_count();
    std::optional<int> best;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const auto& e = g.edge(id);
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        std::vector<int> queue{e.u};
        dist[static_cast<std::size_t>(e.u)] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int x = queue[h];
            auto nb = g.neighbors(x);
            auto inc = g.incident(x);
            for (std::size_t i = 0; i < nb.size(); ++i) {
                if (inc[i] == id || dist[static_cast<std::size_t>(nb[i])] >= 0) continue;
                dist[static_cast<std::size_t>(nb[i])] = dist[static_cast<std::size_t>(x)] + 1;
                queue.push_back(nb[i]);
            }
        }
        int d = dist[static_cast<std::size_t>(e.v)];
        if (d >= 0 && (!best || d + 1 < *best)) best = d + 1;
    }
    return best;
}

/// Random simple graph with n vertices, each pair kept with probability p.
inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
    std::bernoulli_distribution keep(p);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (keep(rng)) pairs.emplace_back(a, b);
    return injec::build_graph(n, std::span<const std::pair<int, int>>(pairs));
}

/// Random graph with at most `maxEdges` edges.
inline Graph random_sparse(std::mt19937_64& rng, int n, int maxEdges) {
    std::uniform_int_distribution<int> count(0, maxEdges);
    return injec::random::gnm(n, std::min(count(rng), n * (n - 1) / 2), rng());
}

inline std::vector<int> random_colors(std::mt19937_64& rng, int items, int k) {
    std::uniform_int_distribution<int> pick(1, k);
    std::vector<int> c(static_cast<std::size_t>(items));
    for (int& x : c) x = pick(rng);
    return c;
}

inline injec::Adjacency random_adjacency(std::mt19937_64& rng, int n, double p) {
    Graph g = random_graph(rng, n, p);
    return injec::adjacency_of(g);
}

} // namespace oracle
