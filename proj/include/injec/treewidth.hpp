#pragma once

#include "injec/error.hpp"
#include "injec/graph.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace injec {

struct TreeDecomposition {
    std::vector<std::vector<VertexId>> bags;       ///< each sorted ascending
    std::vector<std::pair<int, int>> tree_edges;   ///< node pairs, 0-based

    int node_count() const { return static_cast<int>(bags.size()); }

    int width() const {
        std::size_t w = 0;
        for (const auto& b : bags) w = std::max(w, b.size());
        return static_cast<int>(w) - 1;
    }

    std::vector<std::vector<int>> tree_adjacency() const {
        std::vector<std::vector<int>> adj(bags.size());
        for (auto [a, b] : tree_edges) {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        for (auto& nb : adj) std::sort(nb.begin(), nb.end());
        return adj;
    }
};

namespace detail {

inline bool is_tree(const TreeDecomposition& td) {
    const int n = td.node_count();
    if (n == 0) return false;
    if (static_cast<int>(td.tree_edges.size()) != n - 1) return false;
    auto adj = td.tree_adjacency();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[static_cast<std::size_t>(x)])
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                ++count;
                stack.push_back(y);
            }
    }
    return count == n;
}

} // namespace detail

/// First failed decomposition property, described with a witness, or nullopt.
/// Vertex and bag ids in the message are 1-based, as in .td files.
inline std::optional<std::string> decomposition_defect(const Graph& g, const TreeDecomposition& td) {
    if (!detail::is_tree(td)) return std::string("decomposition tree is not a tree");
    const int n = g.vertex_count();
    std::vector<std::vector<int>> holders(static_cast<std::size_t>(n));
    for (int t = 0; t < td.node_count(); ++t)
        for (VertexId v : td.bags[static_cast<std::size_t>(t)]) {
            if (v < 0 || v >= n) return "bag " + std::to_string(t + 1) + " names vertex " + std::to_string(v + 1) + " outside the graph";
            holders[static_cast<std::size_t>(v)].push_back(t);
        }
    for (VertexId v = 0; v < n; ++v)
        if (holders[static_cast<std::size_t>(v)].empty()) return "vertex " + std::to_string(v + 1) + " is in no bag";
    for (const Edge& e : g.edges()) {
        bool covered = false;
        for (int t : holders[static_cast<std::size_t>(e.u)]) {
            const auto& bag = td.bags[static_cast<std::size_t>(t)];
            if (std::binary_search(bag.begin(), bag.end(), e.v)) {
                covered = true;
                break;
            }
        }
        if (!covered) return "edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1) + " is in no bag";
    }
    auto adj = td.tree_adjacency();
    std::vector<int> mark(static_cast<std::size_t>(td.node_count()), -1);
    for (VertexId v = 0; v < n; ++v) {
        const auto& hs = holders[static_cast<std::size_t>(v)];
        for (int t : hs) mark[static_cast<std::size_t>(t)] = v;
        std::vector<int> stack{hs.front()};
        std::size_t reached = 0;
        std::vector<char> seen(static_cast<std::size_t>(td.node_count()), 0);
        seen[static_cast<std::size_t>(hs.front())] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++reached;
            for (int y : adj[static_cast<std::size_t>(x)])
                if (!seen[static_cast<std::size_t>(y)] && mark[static_cast<std::size_t>(y)] == v) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    stack.push_back(y);
                }
        }
        if (reached != hs.size()) return "bags containing vertex " + std::to_string(v) + " are not connected";
    }
    return std::nullopt;
}

inline void validate(const Graph& g, const TreeDecomposition& td) {
    if (auto d = decomposition_defect(g, td)) throw Error(ErrorCode::InvalidDecomposition, *d);
}

/// PACE `.td`: `s td <bags> <max bag size> <n>`, `b <id> <v...>`, then tree
/// edges `i j`; ids 1-based on the wire. Checks syntax and tree shape only.
inline TreeDecomposition parse_td(std::istream& in) {
    TreeDecomposition td;
    std::string line;
    int lineNo = 0;
    int bagCount = -1;
    int maxBag = -1;
    std::vector<char> defined;
    auto fail = [&](const std::string& msg) { throw Error(ErrorCode::Syntax, "line " + std::to_string(lineNo) + ": " + msg); };
    auto num = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(s, &pos);
            if (pos != s.size()) fail("bad integer '" + s + "'");
            return v;
        } catch (const std::invalid_argument&) {
            fail("bad integer '" + s + "'");
        } catch (const std::out_of_range&) {
            fail("integer out of range '" + s + "'");
        }
        return 0;
    };
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ss(line);
        std::vector<std::string> t;
        for (std::string w; ss >> w;) t.push_back(w);
        if (t.empty() || t[0] == "c") continue;
        if (t[0] == "s") {
            if (bagCount >= 0) fail("second solution line");
            if (t.size() != 5 || t[1] != "td") fail("expected 's td <bags> <max bag size> <n>'");
            bagCount = num(t[2]);
            maxBag = num(t[3]);
            num(t[4]);
            if (bagCount < 0 || maxBag < 0) fail("negative counts");
            td.bags.assign(static_cast<std::size_t>(bagCount), {});
            defined.assign(static_cast<std::size_t>(bagCount), 0);
            continue;
        }
        if (bagCount < 0) fail("content before 's td' line");
        if (t[0] == "b") {
            if (t.size() < 2) fail("bag line without id");
            int id = num(t[1]);
            if (id < 1 || id > bagCount) fail("bag id out of range");
            if (defined[static_cast<std::size_t>(id - 1)]) fail("bag " + std::to_string(id) + " defined twice");
            defined[static_cast<std::size_t>(id - 1)] = 1;
            auto& bag = td.bags[static_cast<std::size_t>(id - 1)];
            for (std::size_t i = 2; i < t.size(); ++i) bag.push_back(num(t[i]) - 1);
            std::sort(bag.begin(), bag.end());
            if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) fail("repeated vertex in bag");
            if (static_cast<int>(bag.size()) > maxBag) fail("bag larger than announced maximum");
            continue;
        }
        if (t.size() != 2) fail("expected tree edge 'i j'");
        int a = num(t[0]);
        int b = num(t[1]);
        if (a < 1 || b < 1 || a > bagCount || b > bagCount) fail("tree edge names unknown bag");
        td.tree_edges.emplace_back(a - 1, b - 1);
    }
    if (bagCount < 0) throw Error(ErrorCode::Syntax, "missing 's td' line");
    if (std::find(defined.begin(), defined.end(), 0) != defined.end())
        throw Error(ErrorCode::Syntax, "some announced bag is never defined");
    if (!detail::is_tree(td)) throw Error(ErrorCode::InvalidDecomposition, "decomposition tree is not a tree");
    return td;
}

/// Parses and validates against `g`.
inline TreeDecomposition parse_td(std::istream& in, const Graph& g) {
    TreeDecomposition td = parse_td(in);
    validate(g, td);
    return td;
}

inline TreeDecomposition parse_td(const std::string& text) {
    std::istringstream in(text);
    return parse_td(in);
}

inline void write_td(std::ostream& out, const TreeDecomposition& td, int vertexCount) {
    out << "s td " << td.node_count() << ' ' << td.width() + 1 << ' ' << vertexCount << '\n';
    for (int t = 0; t < td.node_count(); ++t) {
        out << "b " << t + 1;
        for (VertexId v : td.bags[static_cast<std::size_t>(t)]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

enum class EliminationHeuristic { MinFill, MinDegree };

/// Decomposition from a greedy elimination ordering (ties to the lower id).
/// Bag i is the i-th eliminated vertex plus its neighbors at that moment; its
/// parent is the bag of the earliest-eliminated of those neighbors.
inline TreeDecomposition heuristic_decomposition(const Graph& g,
                                                 EliminationHeuristic h = EliminationHeuristic::MinFill) {
    const int n = g.vertex_count();
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<VertexId>> nb(static_cast<std::size_t>(n));
    for (const Edge& e : g.edges()) {
        nb[static_cast<std::size_t>(e.u)].insert(e.v);
        nb[static_cast<std::size_t>(e.v)].insert(e.u);
    }
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    std::vector<int> position(static_cast<std::size_t>(n), -1);
    std::vector<VertexId> order;
    auto fill = [&](VertexId v) {
        const auto& s = nb[static_cast<std::size_t>(v)];
        long long missing = 0;
        for (auto it = s.begin(); it != s.end(); ++it)
            for (auto jt = std::next(it); jt != s.end(); ++jt)
                if (!nb[static_cast<std::size_t>(*it)].count(*jt)) ++missing;
        return missing;
    };
    for (int step = 0; step < n; ++step) {
        VertexId best = -1;
        long long bestScore = 0;
        for (VertexId v = 0; v < n; ++v) {
            if (gone[static_cast<std::size_t>(v)]) continue;
            long long score = h == EliminationHeuristic::MinFill ? fill(v)
                                                                 : static_cast<long long>(nb[static_cast<std::size_t>(v)].size());
            if (best < 0 || score < bestScore) {
                best = v;
                bestScore = score;
            }
        }
        std::vector<VertexId> bag(nb[static_cast<std::size_t>(best)].begin(), nb[static_cast<std::size_t>(best)].end());
        for (std::size_t i = 0; i < bag.size(); ++i)
            for (std::size_t j = i + 1; j < bag.size(); ++j) {
                nb[static_cast<std::size_t>(bag[i])].insert(bag[j]);
                nb[static_cast<std::size_t>(bag[j])].insert(bag[i]);
            }
        for (VertexId w : bag) nb[static_cast<std::size_t>(w)].erase(best);
        gone[static_cast<std::size_t>(best)] = 1;
        position[static_cast<std::size_t>(best)] = step;
        order.push_back(best);
        bag.push_back(best);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
    }
    int lastRoot = -1;
    for (int i = 0; i < n; ++i) {
        VertexId v = order[static_cast<std::size_t>(i)];
        int parent = -1;
        for (VertexId w : td.bags[static_cast<std::size_t>(i)]) {
            if (w == v) continue;
            int p = position[static_cast<std::size_t>(w)];
            if (parent < 0 || p < parent) parent = p;
        }
        if (parent >= 0) {
            td.tree_edges.emplace_back(i, parent);
        } else {
            if (lastRoot >= 0) td.tree_edges.emplace_back(lastRoot, i);
            lastRoot = i;
        }
    }
    return td;
}

enum class NodeKind { Leaf, Introduce, Forget, Join };

inline const char* to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::Introduce: return "introduce";
    case NodeKind::Forget: return "forget";
    case NodeKind::Join: return "join";
    }
    return "?";
}

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    VertexId vertex = -1;           ///< introduced or forgotten vertex
    std::vector<VertexId> bag;      ///< sorted
    std::vector<int> children;
};

/// Nodes are stored children-first; the root is the last node.
struct NiceDecomposition {
    std::vector<NiceNode> nodes;

    int root() const { return static_cast<int>(nodes.size()) - 1; }
    int node_count() const { return static_cast<int>(nodes.size()); }
    int width() const {
        std::size_t w = 0;
        for (const auto& nd : nodes) w = std::max(w, nd.bag.size());
        return static_cast<int>(w) - 1;
    }
};

/// Nice normal form of a valid decomposition rooted at `root`. Adjacent bags
/// are linked by forgetting then introducing; leaves start empty and a chain
/// of forgets empties the root bag.
inline NiceDecomposition nicefy(const TreeDecomposition& td, int root = 0) {
    NiceDecomposition nd;
    if (td.node_count() == 0) {
        nd.nodes.push_back(NiceNode{});
        return nd;
    }
    auto adj = td.tree_adjacency();
    auto push = [&](NodeKind kind, VertexId v, std::vector<VertexId> bag, std::vector<int> children) {
        nd.nodes.push_back(NiceNode{kind, v, std::move(bag), std::move(children)});
        return nd.root();
    };
    auto forget = [&](int child, VertexId v) {
        std::vector<VertexId> bag = nd.nodes[static_cast<std::size_t>(child)].bag;
        bag.erase(std::find(bag.begin(), bag.end(), v));
        return push(NodeKind::Forget, v, std::move(bag), {child});
    };
    auto introduce = [&](int child, VertexId v) {
        std::vector<VertexId> bag = nd.nodes[static_cast<std::size_t>(child)].bag;
        bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
        return push(NodeKind::Introduce, v, std::move(bag), {child});
    };
    auto chain = [&](int top, const std::vector<VertexId>& target) {
        std::vector<VertexId> from = nd.nodes[static_cast<std::size_t>(top)].bag;
        for (VertexId v : from)
            if (!std::binary_search(target.begin(), target.end(), v)) top = forget(top, v);
        for (VertexId v : target)
            if (!std::binary_search(from.begin(), from.end(), v)) top = introduce(top, v);
        return top;
    };
    std::function<int(int, int)> build = [&](int t, int parent) -> int {
        const auto& bag = td.bags[static_cast<std::size_t>(t)];
        std::vector<int> tops;
        for (int c : adj[static_cast<std::size_t>(t)]) {
            if (c == parent) continue;
            tops.push_back(chain(build(c, t), bag));
        }
        if (tops.empty()) return chain(push(NodeKind::Leaf, -1, {}, {}), bag);
        int acc = tops.front();
        for (std::size_t i = 1; i < tops.size(); ++i) acc = push(NodeKind::Join, -1, bag, {acc, tops[i]});
        return acc;
    };
    chain(build(root, -1), {});
    return nd;
}

/// Plain decomposition view; the former root becomes node `root()`.
inline TreeDecomposition as_tree_decomposition(const NiceDecomposition& nd) {
    TreeDecomposition td;
    for (const auto& node : nd.nodes) td.bags.push_back(node.bag);
    for (int t = 0; t < nd.node_count(); ++t)
        for (int c : nd.nodes[static_cast<std::size_t>(t)].children) td.tree_edges.emplace_back(c, t);
    return td;
}

/// Shape rules of each node kind, empty root and leaf bags, validity for g,
/// and that every edge of g is introduced at some Introduce node.
inline std::optional<std::string> nice_defect(const Graph& g, const NiceDecomposition& nd) {
    if (nd.nodes.empty()) return std::string("no nodes");
    for (int t = 0; t < nd.node_count(); ++t) {
        const NiceNode& x = nd.nodes[static_cast<std::size_t>(t)];
        if (!std::is_sorted(x.bag.begin(), x.bag.end())) return "node " + std::to_string(t) + ": unsorted bag";
        for (int c : x.children)
            if (c < 0 || c >= t) return "node " + std::to_string(t) + ": child not stored before parent";
        auto childBag = [&](std::size_t i) -> const std::vector<VertexId>& {
            return nd.nodes[static_cast<std::size_t>(x.children[i])].bag;
        };
        switch (x.kind) {
        case NodeKind::Leaf:
            if (!x.children.empty() || !x.bag.empty()) return "node " + std::to_string(t) + ": leaf must be empty and childless";
            break;
        case NodeKind::Introduce: {
            if (x.children.size() != 1) return "node " + std::to_string(t) + ": introduce needs one child";
            std::vector<VertexId> expect = childBag(0);
            if (std::binary_search(expect.begin(), expect.end(), x.vertex))
                return "node " + std::to_string(t) + ": introduced vertex already present";
            expect.insert(std::lower_bound(expect.begin(), expect.end(), x.vertex), x.vertex);
            if (expect != x.bag) return "node " + std::to_string(t) + ": introduce bag mismatch";
            break;
        }
        case NodeKind::Forget: {
            if (x.children.size() != 1) return "node " + std::to_string(t) + ": forget needs one child";
            std::vector<VertexId> expect = childBag(0);
            auto it = std::find(expect.begin(), expect.end(), x.vertex);
            if (it == expect.end()) return "node " + std::to_string(t) + ": forgotten vertex absent from child";
            expect.erase(it);
            if (expect != x.bag) return "node " + std::to_string(t) + ": forget bag mismatch";
            break;
        }
        case NodeKind::Join:
            if (x.children.size() != 2) return "node " + std::to_string(t) + ": join needs two children";
            if (childBag(0) != x.bag || childBag(1) != x.bag) return "node " + std::to_string(t) + ": join bags differ";
            break;
        }
    }
    std::vector<int> parents(static_cast<std::size_t>(nd.node_count()), 0);
    for (const auto& x : nd.nodes)
        for (int c : x.children) ++parents[static_cast<std::size_t>(c)];
    for (int t = 0; t < nd.root(); ++t)
        if (parents[static_cast<std::size_t>(t)] != 1) return "node " + std::to_string(t) + " does not have exactly one parent";
    if (parents[static_cast<std::size_t>(nd.root())] != 0) return std::string("root has a parent");
    if (!nd.nodes.back().bag.empty()) return std::string("root bag is not empty");
    if (auto d = decomposition_defect(g, as_tree_decomposition(nd))) return d;
    std::vector<char> introduced(static_cast<std::size_t>(g.edge_count()), 0);
    for (const auto& x : nd.nodes) {
        if (x.kind != NodeKind::Introduce) continue;
        for (VertexId u : x.bag)
            if (auto e = g.find_edge(u, x.vertex)) introduced[static_cast<std::size_t>(*e)] = 1;
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!introduced[static_cast<std::size_t>(e)])
            return "edge " + std::to_string(g.edge(e).u + 1) + "-" + std::to_string(g.edge(e).v + 1) + " is never introduced";
    return std::nullopt;
}

} // namespace injec
