#pragma once

#include "injec/coloring.hpp"
#include "injec/error.hpp"
#include "injec/gadgets.hpp"
#include "injec/graph.hpp"
#include "injec/io.hpp"
#include "injec/reductions.hpp"
#include "injec/vertex_coloring.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace injec {

enum class ClaimStatus { Verified, Refuted, Capped };

inline const char* to_string(ClaimStatus s) {
    switch (s) {
    case ClaimStatus::Verified: return "verified";
    case ClaimStatus::Refuted: return "refuted";
    case ClaimStatus::Capped: return "capped";
    }
    return "?";
}

struct ClaimCheck {
    std::string name;
    bool passed = true;
    std::string note;
};

/// Outcome of one exhaustive claim check. A witness, when present, is an
/// injective coloring of `graph` that violates the forced property.
struct ClaimReport {
    std::string claim;
    std::string subject;
    std::map<std::string, int> params;
    std::uint64_t colorings_examined = 0;
    ClaimStatus status = ClaimStatus::Verified;
    std::vector<ClaimCheck> checks;
    std::string detail;
    Graph graph;
    std::optional<Coloring> witness;

    bool verified() const { return status == ClaimStatus::Verified; }

    nlohmann::json to_json() const {
        nlohmann::json checksJson = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json one{{"name", c.name}, {"passed", c.passed}};
            if (!c.note.empty()) one["note"] = c.note;
            checksJson.push_back(one);
        }
        nlohmann::json j{{"claim", claim},
                         {"subject", subject},
                         {"params", params},
                         {"colorings_examined", colorings_examined},
                         {"status", to_string(status)},
                         {"checks", checksJson},
                         {"vertices", graph.vertex_count()},
                         {"edges", graph.edge_count()}};
        if (!detail.empty()) j["detail"] = detail;
        if (witness) j["witness"] = io::coloring_to_json(graph, *witness);
        return j;
    }
};

struct ClaimOptions {
    std::uint64_t cap = 20'000'000;  ///< colorings per enumeration; reaching it reports Capped
};

namespace detail {

/// Drives one enumeration. `check` returns a violation message or "" and is
/// evaluated on every coloring; the first violation stops the walk and
/// becomes the witness.
class ClaimRun {
public:
    ClaimRun(ClaimReport& report, const Graph& g, int k, ClaimOptions opt) : report_(report), g_(g), k_(k), opt_(opt) {
        report_.graph = g;
    }

    template <class Check>
    bool enumerate(const std::string& property, Check&& check, std::span<const int> precolor = {}) {
        ConflictGraph cg = conflict_graph(g_);
        bool capped = false;
        std::string violation;
        std::uint64_t n = for_each_coloring(
            cg.adjacency, k_,
            [&](std::span<const int> colors) {
                if (report_.colorings_examined >= opt_.cap) {
                    capped = true;
                    return false;
                }
                ++report_.colorings_examined;
                std::string msg = check(colors);
                if (!msg.empty()) {
                    violation = msg;
                    report_.witness = Coloring(std::vector<int>(colors.begin(), colors.end()), k_);
                    return false;
                }
                return true;
            },
            precolor);
        (void)n;
        if (capped) {
            report_.status = ClaimStatus::Capped;
            report_.detail = "enumeration cap of " + std::to_string(opt_.cap) + " colorings reached";
            report_.checks.push_back({property, false, "capped"});
            return false;
        }
        if (!violation.empty()) {
            fail(property, violation);
            return false;
        }
        report_.checks.push_back({property, true, ""});
        return true;
    }

    void require(const std::string& property, bool ok, const std::string& note = "") {
        report_.checks.push_back({property, ok, ok ? "" : note});
        if (!ok && report_.status == ClaimStatus::Verified) {
            report_.status = ClaimStatus::Refuted;
            report_.detail = property + ": " + note;
        }
    }

    bool ok() const { return report_.status == ClaimStatus::Verified; }

private:
    void fail(const std::string& property, const std::string& why) {
        report_.checks.push_back({property, false, why});
        report_.status = ClaimStatus::Refuted;
        report_.detail = property + ": " + why;
    }

    ClaimReport& report_;
    const Graph& g_;
    int k_;
    ClaimOptions opt_;
};

inline ClaimReport new_report(std::string claim, std::string subject, std::map<std::string, int> params) {
    ClaimReport r;
    r.claim = std::move(claim);
    r.subject = std::move(subject);
    r.params = std::move(params);
    return r;
}

inline int at(std::span<const int> colors, EdgeId e) { return colors[static_cast<std::size_t>(e)]; }

/// The unique edge at a degree-1 terminal.
inline EdgeId pendant_edge(const GadgetInstance& gi, const std::string& label) {
    VertexId t = gi.port(label);
    const auto& inc = gi.graph.incident(t);
    if (inc.size() != 1) throw Error(ErrorCode::BadParams, label + " is not a pendant vertex");
    return inc.front();
}

inline std::vector<std::string> missing_colors(const std::set<int>& seen, int k) {
    std::vector<std::string> out;
    for (int c = 1; c <= k; ++c)
        if (!seen.contains(c)) out.push_back(std::to_string(c));
    return out;
}

struct Sets4 {
    std::array<ColorSet, 3> C;
    std::array<int, 3> pendant{};
    auto operator<=>(const Sets4&) const = default;
};

inline constexpr std::array<int, 3> kPorts{0, 3, 6};

/// C_i and the pendant colors of one S_u copy, read from `colors`.
inline Sets4 sets_of(const GadgetInstance& gi, std::span<const int> colors, const std::string& prefix) {
    Sets4 s;
    for (std::size_t t = 0; t < 3; ++t) {
        int i = kPorts[t];
        std::string xi = prefix + idx("x", i);
        s.C[t].insert(at(colors, gi.edge(xi, prefix + idx("x", (i + 1) % 9))));
        s.C[t].insert(at(colors, gi.edge(xi, prefix + idx("x", (i + 8) % 9))));
        s.pendant[t] = at(colors, gi.edge(xi, prefix + idx("y", i)));
    }
    return s;
}

inline std::string describe(const Sets4& s) {
    std::string out;
    for (std::size_t t = 0; t < 3; ++t)
        out += "C" + std::to_string(kPorts[t]) + "=" + s.C[t].str() + " pendant=" + std::to_string(s.pendant[t]) + " ";
    return out;
}

/// Every (C_0, C_3, C_6, pendant colors) choice meeting the forced
/// conditions with colors 1..4.
inline std::set<Sets4> admissible_sets4() {
    std::vector<ColorSet> subsets;
    for (int a = 1; a <= 4; ++a) {
        subsets.push_back(ColorSet::of({a}));
        for (int b = a + 1; b <= 4; ++b) subsets.push_back(ColorSet::of({a, b}));
    }
    std::set<Sets4> out;
    for (const auto& c0 : subsets)
        for (const auto& c3 : subsets)
            for (const auto& c6 : subsets) {
                if ((c0 | c3 | c6) != ColorSet::full(4)) continue;
                if ((c0 & c3 & c6).empty()) continue;
                for (int p0 = c0.first(); p0 != 0; p0 = c0.next(p0))
                    for (int p3 = c3.first(); p3 != 0; p3 = c3.next(p3))
                        for (int p6 = c6.first(); p6 != 0; p6 = c6.next(p6)) out.insert(Sets4{{c0, c3, c6}, {p0, p3, p6}});
            }
    return out;
}

} // namespace detail

/// Edge gadget for cubic sources: the three edges at w share one color in
/// every injective 3-coloring, and each color occurs there.
inline ClaimReport check_claim1(const GadgetInstance& gi = gadget_edge_3cubic(), ClaimOptions opt = {},
                                std::string subject = "edge gadget E_uv") {
    ClaimReport rep = detail::new_report("1", std::move(subject), {{"k", 3}});
    detail::ClaimRun run(rep, gi.graph, 3, opt);
    EdgeId uw = gi.edge("u", "w"), vw = gi.edge("v", "w"), wz = gi.edge("w", "z");
    std::set<int> seen;
    bool forced = run.enumerate("uw = vw = wz in every coloring", [&](std::span<const int> c) -> std::string {
        int a = detail::at(c, uw), b = detail::at(c, vw), d = detail::at(c, wz);
        if (a != b || b != d)
            return "uw=" + std::to_string(a) + " vw=" + std::to_string(b) + " wz=" + std::to_string(d);
        seen.insert(a);
        return "";
    });
    if (!forced) return rep;
    auto missing = detail::missing_colors(seen, 3);
    std::string note;
    for (auto& m : missing) note += m + " ";
    run.require("every color is realizable on uw, vw, wz", missing.empty(), "missing colors " + note);
    return rep;
}

/// S_u with 4 colors: pendant color in C_i, C_0 u C_3 u C_6 = {1..4}, a
/// common color, and every admissible choice of (C_i, pendant colors) is
/// realized by some coloring.
inline ClaimReport check_claim2(const GadgetInstance& gi = gadget_vertex_4cubic(), ClaimOptions opt = {},
                                std::string subject = "vertex gadget S_u") {
    ClaimReport rep = detail::new_report("2", std::move(subject), {{"k", 4}});
    detail::ClaimRun run(rep, gi.graph, 4, opt);
    std::set<detail::Sets4> realized;
    bool forced = run.enumerate("pendant color in C_i, union is {1..4}, common color", [&](std::span<const int> c) -> std::string {
        detail::Sets4 s = detail::sets_of(gi, c, "");
        for (std::size_t t = 0; t < 3; ++t)
            if (!s.C[t].contains(s.pendant[t])) return "pendant color outside C_i: " + detail::describe(s);
        if ((s.C[0] | s.C[1] | s.C[2]) != ColorSet::full(4)) return "union misses a color: " + detail::describe(s);
        if ((s.C[0] & s.C[1] & s.C[2]).empty()) return "no common color: " + detail::describe(s);
        realized.insert(s);
        return "";
    });
    if (!forced) return rep;
    auto wanted = detail::admissible_sets4();
    std::size_t missing = 0;
    std::string example;
    for (const auto& s : wanted)
        if (!realized.contains(s)) {
            if (missing++ == 0) example = detail::describe(s);
        }
    rep.params["admissible_choices"] = static_cast<int>(wanted.size());
    run.require("every admissible (C_i, pendant) choice is realized", missing == 0,
                std::to_string(missing) + " choices unrealized, e.g. " + example);
    return rep;
}

/// S_u, E_uv, S_v joined at port 0 of both: C_0^u = C_0^v in every coloring,
/// and every pair of S_u, S_v colorings agreeing on C_0 and the pendant color
/// extends to the edge gadget.
inline ClaimReport check_claim3(const GadgetInstance& gi = gadget_edge_4cubic_pair(), ClaimOptions opt = {},
                                std::string subject = "S_u + E_uv + S_v") {
    ClaimReport rep = detail::new_report("3", std::move(subject), {{"k", 4}});
    detail::ClaimRun run(rep, gi.graph, 4, opt);
    bool forced = run.enumerate("C_0^u = C_0^v in every coloring", [&](std::span<const int> c) -> std::string {
        auto u = detail::sets_of(gi, c, "u:");
        auto v = detail::sets_of(gi, c, "v:");
        if (u.C[0] != v.C[0]) return "C_0^u=" + u.C[0].str() + " C_0^v=" + v.C[0].str();
        return "";
    });
    if (!forced) return rep;

    // Extension: colorings of a lone S_u, placed on both sides.
    GadgetInstance single = gadget_vertex_4cubic();
    ConflictGraph scg = conflict_graph(single.graph);
    auto sides = enumerate_colorings(scg.adjacency, 4, opt.cap);
    std::map<std::pair<ColorSet, int>, std::vector<std::size_t>> byPort;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        auto s = detail::sets_of(single, sides[i], "");
        byPort[{s.C[0], s.pendant[0]}].push_back(i);
    }
    // Map lone-gadget edges onto both sides of the pair.
    std::array<std::vector<EdgeId>, 2> place;
    for (int side = 0; side < 2; ++side) {
        const std::string prefix = side == 0 ? "u:" : "v:";
        for (EdgeId e = 0; e < single.graph.edge_count(); ++e) {
            const Edge& ed = single.graph.edge(e);
            place[static_cast<std::size_t>(side)].push_back(
                gi.edge(prefix + single.graph.label(ed.u), prefix + single.graph.label(ed.v)));
        }
    }
    ConflictGraph pcg = conflict_graph(gi.graph);
    std::uint64_t pairs = 0;
    std::uint64_t failures = 0;
    std::string example;
    std::vector<int> pre(static_cast<std::size_t>(gi.graph.edge_count()), 0);
    for (const auto& [key, members] : byPort)
        for (std::size_t a : members)
            for (std::size_t b : members) {
                for (EdgeId e = 0; e < single.graph.edge_count(); ++e) {
                    pre[static_cast<std::size_t>(place[0][static_cast<std::size_t>(e)])] = sides[a][static_cast<std::size_t>(e)];
                    pre[static_cast<std::size_t>(place[1][static_cast<std::size_t>(e)])] = sides[b][static_cast<std::size_t>(e)];
                }
                ++pairs;
                if (vertex_color_search(pcg.adjacency, 4, pre).status != SearchStatus::Found && failures++ == 0)
                    example = "C_0=" + key.first.str() + " pendant=" + std::to_string(key.second);
            }
    rep.params["side_colorings"] = static_cast<int>(sides.size());
    rep.params["pairs_extended"] = static_cast<int>(pairs);
    run.require("matching S_u, S_v colorings extend over E_uv", failures == 0 && pairs > 0,
                std::to_string(failures) + " of " + std::to_string(pairs) + " pairs do not extend, e.g. " + example);
    return rep;
}

/// Planar girth gadget with 3 colors: the four terminal edges share one color
/// in every coloring, and each color occurs there.
inline ClaimReport check_claim5(const GadgetInstance& gi, ClaimOptions opt = {},
                                std::string subject = "planar girth gadget S_u") {
    ClaimReport rep = detail::new_report("5", std::move(subject), gi.params);
    rep.params["k"] = 3;
    detail::ClaimRun run(rep, gi.graph, 3, opt);
    std::array<EdgeId, 4> term{};
    for (std::size_t t = 0; t < 4; ++t) term[t] = detail::pendant_edge(gi, kTerminals[t]);
    std::set<int> seen;
    bool forced = run.enumerate("the four terminal edges share one color", [&](std::span<const int> c) -> std::string {
        int first = detail::at(c, term[0]);
        for (std::size_t t = 1; t < 4; ++t)
            if (detail::at(c, term[t]) != first) {
                std::string s;
                for (std::size_t i = 0; i < 4; ++i) s += std::string(kTerminals[i]) + "=" + std::to_string(detail::at(c, term[i])) + " ";
                return s;
            }
        seen.insert(first);
        return "";
    });
    if (!forced) return rep;
    auto missing = detail::missing_colors(seen, 3);
    std::string note;
    for (auto& m : missing) note += m + " ";
    run.require("every color is realizable on the terminals", missing.empty(), "missing colors " + note);
    return rep;
}

inline ClaimReport check_claim5(int g, int ell, ClaimOptions opt = {}) {
    return check_claim5(gadget_planar_girth(g, ell), opt);
}

/// H with 3 colors: all edges at each x_ij share one color.
inline ClaimReport check_H_singlecolor(const GadgetInstance& gi = gadget_H(), ClaimOptions opt = {},
                                       std::string subject = "H") {
    ClaimReport rep = detail::new_report("H", std::move(subject), {{"k", 3}});
    detail::ClaimRun run(rep, gi.graph, 3, opt);
    std::vector<std::pair<std::string, std::vector<EdgeId>>> hubs;
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            std::string name = "x" + std::to_string(i) + std::to_string(j);
            auto inc = gi.graph.incident(gi.port(name));
            hubs.emplace_back(name, std::vector<EdgeId>(inc.begin(), inc.end()));
        }
    run.enumerate("every x_ij sees a single color", [&](std::span<const int> c) -> std::string {
        for (const auto& [name, edges] : hubs)
            for (EdgeId e : edges)
                if (detail::at(c, e) != detail::at(c, edges.front())) return name + " sees two colors";
        return "";
    });
    run.require("H is injectively 3-colorable", rep.colorings_examined > 0, "no coloring exists");
    return rep;
}

/// Large-k edge gadget: all e-s edges share the color of ab in every
/// coloring; any single color on the e-s edges extends; the explicit
/// construction verifies.
inline ClaimReport check_claim6(const GadgetInstance& gi, ClaimOptions opt = {},
                                std::string subject = "large-k edge gadget E_uv") {
    const int k = gi.params.at("k");
    ClaimReport rep = detail::new_report("6", std::move(subject), gi.params);
    detail::ClaimRun run(rep, gi.graph, k, opt);
    std::vector<EdgeId> spokes;
    for (int i = 1; i <= gi.params.at("s_count"); ++i) spokes.push_back(gi.edge("e", detail::idx("s", i)));
    EdgeId ab = gi.edge("a", "b");
    bool forced = run.enumerate("every e-s edge has the color of ab", [&](std::span<const int> c) -> std::string {
        for (EdgeId e : spokes)
            if (detail::at(c, e) != detail::at(c, ab))
                return "ab=" + std::to_string(detail::at(c, ab)) + " but an e-s edge has " + std::to_string(detail::at(c, e));
        return "";
    });
    if (!forced) return rep;
    ConflictGraph cg = conflict_graph(gi.graph);
    std::vector<std::string> stuck;
    for (int col = 1; col <= k; ++col) {
        std::vector<int> pre(static_cast<std::size_t>(gi.graph.edge_count()), 0);
        for (EdgeId e : spokes) pre[static_cast<std::size_t>(e)] = col;
        if (vertex_color_search(cg.adjacency, k, pre).status != SearchStatus::Found) stuck.push_back(std::to_string(col));
    }
    std::string note;
    for (auto& s : stuck) note += s + " ";
    run.require("every common e-s color extends", stuck.empty(), "no extension for colors " + note);
    bool built = false;
    try {
        built = is_injective(gi.graph, bigk_gadget_coloring(gi));
    } catch (const Error&) {
        built = false;
    }
    run.require("explicit construction is injective", built, "construction failed");
    return rep;
}

inline ClaimReport check_claim6(int k, std::optional<int> s_count = std::nullopt, ClaimOptions opt = {}) {
    return check_claim6(gadget_bigk(k, s_count), opt);
}

/// The deliberately broken gadget used as the negative control of a claim.
inline GadgetInstance claim_mutant(const std::string& claim, const std::map<std::string, int>& params = {}) {
    auto param = [&](const std::string& key, int fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (claim == "1") return without_edge(gadget_edge_3cubic(), "e", "f");
    if (claim == "2") return without_edge(gadget_vertex_4cubic(), "x2", "x4");
    if (claim == "3") return without_edge(gadget_edge_4cubic_pair(), "w", "z");
    if (claim == "5") return without_edge(gadget_planar_girth(param("g", 4), param("l", 9)), "x1", "x2");
    if (claim == "H") return without_edge(gadget_H(), "x3", "x34");
    if (claim == "6") return without_edge(gadget_bigk(param("k", 6), param("s_count", 4)), "a", "c");
    throw Error(ErrorCode::BadParams, "unknown claim '" + claim + "'");
}

/// Dispatch by claim id ("1", "2", "3", "5", "H", "6"); `mutant` checks the
/// negative control instead.
inline ClaimReport check_claim(const std::string& claim, const std::map<std::string, int>& params = {},
                               bool mutant = false, ClaimOptions opt = {}) {
    auto param = [&](const std::string& key, int fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    const std::string tag = mutant ? "mutant " : "";
    if (claim == "1")
        return check_claim1(mutant ? claim_mutant(claim) : gadget_edge_3cubic(), opt, tag + "edge gadget E_uv");
    if (claim == "2")
        return check_claim2(mutant ? claim_mutant(claim) : gadget_vertex_4cubic(), opt, tag + "vertex gadget S_u");
    if (claim == "3")
        return check_claim3(mutant ? claim_mutant(claim) : gadget_edge_4cubic_pair(), opt, tag + "S_u + E_uv + S_v");
    if (claim == "5")
        return check_claim5(mutant ? claim_mutant(claim, params) : gadget_planar_girth(param("g", 4), param("l", 9)), opt,
                            tag + "planar girth gadget S_u");
    if (claim == "H") return check_H_singlecolor(mutant ? claim_mutant(claim) : gadget_H(), opt, tag + "H");
    if (claim == "6")
        return check_claim6(mutant ? claim_mutant(claim, params) : gadget_bigk(param("k", 6), param("s_count", 4)), opt,
                            tag + "large-k edge gadget E_uv");
    throw Error(ErrorCode::BadParams, "unknown claim '" + claim + "'");
}

inline const std::vector<std::string>& claim_ids() {
    static const std::vector<std::string> ids{"1", "2", "3", "5", "H", "6"};
    return ids;
}

} // namespace injec
