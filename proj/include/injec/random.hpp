#pragma once

#include "injec/error.hpp"
#include "injec/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace injec::random {

using Rng = std::mt19937_64;

namespace detail {

/// Uniform in [0, n) from raw engine output, so sequences do not depend on
/// the standard library's distribution implementation.
inline int below(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

inline Graph from_pairs(int n, const std::set<std::pair<int, int>>& pairs) {
    std::vector<std::pair<int, int>> list(pairs.begin(), pairs.end());
    return build_graph(n, std::span<const std::pair<int, int>>(list));
}

inline std::pair<int, int> ordered(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

} // namespace detail

/// G(n, m): m distinct edges chosen uniformly.
inline Graph gnm(int n, int m, std::uint64_t seed) {
    if (n < 0 || m < 0 || static_cast<long long>(m) > static_cast<long long>(n) * (n - 1) / 2)
        throw Error(ErrorCode::BadParams, "gnm: need 0 <= m <= n(n-1)/2");
    Rng rng(seed);
    std::set<std::pair<int, int>> pairs;
    while (static_cast<int>(pairs.size()) < m) {
        int a = detail::below(rng, n), b = detail::below(rng, n);
        if (a != b) pairs.insert(detail::ordered(a, b));
    }
    return detail::from_pairs(n, pairs);
}

/// Up to m edges with every degree at most `maxDegree`; candidate pairs
/// violating the bound are skipped, so fewer edges may result.
inline Graph bounded_degree(int n, int m, int maxDegree, std::uint64_t seed) {
    if (n < 0 || m < 0 || maxDegree < 0) throw Error(ErrorCode::BadParams, "bounded_degree: negative parameter");
    Rng rng(seed);
    std::set<std::pair<int, int>> pairs;
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    const int attempts = 50 * (m + 1);
    for (int t = 0; t < attempts && static_cast<int>(pairs.size()) < m && n > 1; ++t) {
        int a = detail::below(rng, n), b = detail::below(rng, n);
        if (a == b || deg[static_cast<std::size_t>(a)] >= maxDegree || deg[static_cast<std::size_t>(b)] >= maxDegree) continue;
        if (!pairs.insert(detail::ordered(a, b)).second) continue;
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
    }
    return detail::from_pairs(n, pairs);
}

/// Cubic graph on even n >= 4 as the union of three edge-disjoint random
/// perfect matchings; rejected and redrawn until simple.
inline Graph random_cubic(int n, std::uint64_t seed) {
    if (n < 4 || n % 2 != 0) throw Error(ErrorCode::BadParams, "random_cubic: n must be even and >= 4");
    Rng rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::set<std::pair<int, int>> pairs;
        bool ok = true;
        for (int round = 0; round < 3 && ok; ++round) {
            for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
            for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(detail::below(rng, i + 1))]);
            for (int i = 0; i < n && ok; i += 2)
                ok = pairs.insert(detail::ordered(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i + 1)])).second;
        }
        if (ok) return detail::from_pairs(n, pairs);
    }
    throw Error(ErrorCode::CapExceeded, "random_cubic: no simple graph found");
}

/// Series-parallel graph (treewidth <= 2) with n >= 2 vertices: starting from
/// one edge, each step either subdivides an edge or adds a 2-path parallel
/// to one.
inline Graph series_parallel(int n, std::uint64_t seed) {
    if (n < 2) throw Error(ErrorCode::BadParams, "series_parallel: n must be >= 2");
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges{{0, 1}};
    for (int x = 2; x < n; ++x) {
        std::size_t pick = static_cast<std::size_t>(detail::below(rng, static_cast<int>(edges.size())));
        auto [u, v] = edges[pick];
        if (detail::below(rng, 2) == 0) {
            edges[pick] = {u, x};
            edges.emplace_back(x, v);
        } else {
            edges.emplace_back(u, x);
            edges.emplace_back(x, v);
        }
    }
    std::set<std::pair<int, int>> pairs;
    for (auto [a, b] : edges) pairs.insert(detail::ordered(a, b));
    return detail::from_pairs(n, pairs);
}

/// Planar graph on a rows x cols grid: each grid edge kept with probability
/// 3/4, plus at most one diagonal per cell, never exceeding degree 4.
/// Isolated vertices are kept.
inline Graph planar_grid(int rows, int cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1) throw Error(ErrorCode::BadParams, "planar_grid: empty grid");
    Rng rng(seed);
    const int n = rows * cols;
    auto id = [&](int r, int c) { return r * cols + c; };
    std::set<std::pair<int, int>> pairs;
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    auto add = [&](int a, int b) {
        if (deg[static_cast<std::size_t>(a)] >= 4 || deg[static_cast<std::size_t>(b)] >= 4) return;
        if (pairs.insert(detail::ordered(a, b)).second) {
            ++deg[static_cast<std::size_t>(a)];
            ++deg[static_cast<std::size_t>(b)];
        }
    };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols && detail::below(rng, 4) != 0) add(id(r, c), id(r, c + 1));
            if (r + 1 < rows && detail::below(rng, 4) != 0) add(id(r, c), id(r + 1, c));
        }
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c) {
            int roll = detail::below(rng, 3);
            if (roll == 1) add(id(r, c), id(r + 1, c + 1));
            if (roll == 2) add(id(r, c + 1), id(r + 1, c));
        }
    return detail::from_pairs(n, pairs);
}

/// Generator names understood by the command line tool.
inline const std::vector<std::string>& generator_names() {
    static const std::vector<std::string> names{"gnm", "bounded", "cubic", "series-parallel", "planar-grid"};
    return names;
}

} // namespace injec::random
