#pragma once

#include "injec/claims.hpp"
#include "injec/coloring.hpp"
#include "injec/error.hpp"
#include "injec/fpt.hpp"
#include "injec/gadgets.hpp"
#include "injec/graph.hpp"
#include "injec/io.hpp"
#include "injec/random.hpp"
#include "injec/reductions.hpp"
#include "injec/solvers.hpp"
#include "injec/treewidth.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace injec::cli {

/// Process exit codes.
enum Exit : int {
    Yes = 0,
    No = 1,
    Undecided = 2,  ///< time budget exhausted, or a heuristic could not decide
    Usage = 3,
    Failure = 4,    ///< unreadable input or a library error
};

inline constexpr const char* kBudgetEnv = "INJEC_TIME_BUDGET";
inline constexpr double kDefaultBudget = 300.0;

namespace detail {

/// `fixture:<name>` selects a built-in graph; anything else is a file path.
inline Graph load_graph(const std::string& spec) {
    const std::string prefix = "fixture:";
    if (spec.rfind(prefix, 0) == 0) return named_fixture(spec.substr(prefix.size()));
    return io::read_graph_file(spec);
}

inline double budget_seconds(std::optional<double> flag) {
    double s = kDefaultBudget;
    if (flag) {
        s = *flag;
    } else if (const char* env = std::getenv(kBudgetEnv)) {
        try {
            s = std::stod(env);
        } catch (const std::exception&) {
            throw Error(ErrorCode::BadParams, std::string(kBudgetEnv) + " is not a number: " + env);
        }
    }
    if (!(s > 0)) throw Error(ErrorCode::BadParams, "time budget must be positive");
    return s;
}

/// Re-verifies before anything leaves the process.
inline void emit_witness(const Graph& g, const Coloring& c, const std::string& path, std::ostream& out) {
    if (!c.total() || !is_injective(g, c)) throw Error(ErrorCode::BadParams, "internal: refusing to write an unverified coloring");
    if (path.empty()) return;
    if (path == "-") {
        io::write_coloring(out, c);
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
    io::write_coloring(f, c);
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-" || path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
    f << text;
}

inline NiceDecomposition decomposition_for(const Graph& g, const std::string& tdPath, EliminationHeuristic h) {
    TreeDecomposition td;
    if (tdPath.empty()) {
        td = heuristic_decomposition(g, h);
    } else {
        std::ifstream in(tdPath);
        if (!in) throw Error(ErrorCode::Io, "cannot open " + tdPath);
        td = parse_td(in, g);
    }
    return nicefy(td);
}

/// "g=4,l=9" -> {g: 4, l: 9}.
inline std::map<std::string, int> parse_params(const std::string& text) {
    std::map<std::string, int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::BadParams, "expected key=value, got '" + item + "'");
        std::string value = item.substr(eq + 1);
        std::size_t used = 0;
        try {
            out[item.substr(0, eq)] = std::stoi(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) throw Error(ErrorCode::BadParams, "not an integer in '" + item + "'");
    }
    return out;
}

inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw Error(ErrorCode::BadParams, "not an integer: '" + item + "'");
        }
    }
    return out;
}

inline GadgetInstance gadget_by_name(const std::string& spec) {
    auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::vector<int> args = colon == std::string::npos ? std::vector<int>{} : parse_int_list(spec.substr(colon + 1));
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) throw Error(ErrorCode::BadParams, "wrong number of parameters for " + name);
    };
    if (name == "edge3") return need(0, 0), gadget_edge_3cubic();
    if (name == "vertex4") return need(0, 0), gadget_vertex_4cubic();
    if (name == "pair4") return need(0, 0), gadget_edge_4cubic_pair();
    if (name == "H") return need(0, 0), gadget_H();
    if (name == "bipartite") return need(0, 0), gadget_bipartite();
    if (name == "planar") {
        need(1, 2);
        return gadget_planar_girth(args[0], args.size() > 1 ? args[1] : default_cycle_length(args[0]));
    }
    if (name == "bigk") {
        need(1, 2);
        return gadget_bigk(args[0], args.size() > 1 ? std::optional<int>(args[1]) : std::nullopt);
    }
    throw Error(ErrorCode::BadParams, "unknown gadget '" + name + "'");
}

inline nlohmann::json origins_json(const ReductionOutput& r) {
    nlohmann::json vertices = nlohmann::json::array();
    for (VertexId v = 0; v < r.graph.vertex_count(); ++v)
        vertices.push_back({{"vertex", v + 1}, {"label", r.graph.label(v)}, {"source", r.vertex_origin[static_cast<std::size_t>(v)].source},
                            {"role", r.vertex_origin[static_cast<std::size_t>(v)].role}});
    nlohmann::json edges = nlohmann::json::array();
    for (EdgeId e = 0; e < r.graph.edge_count(); ++e)
        edges.push_back({{"edge", e}, {"u", r.graph.edge(e).u + 1}, {"v", r.graph.edge(e).v + 1},
                         {"source", r.edge_origin[static_cast<std::size_t>(e)].source}, {"role", r.edge_origin[static_cast<std::size_t>(e)].role}});
    return {{"construction", r.construction}, {"k", r.k}, {"params", r.params}, {"vertices", vertices}, {"edges", edges}};
}

inline nlohmann::json stats_json(const Graph& g) {
    GraphMetrics m = metrics(g);
    ConflictGraph cg = conflict_graph(g);
    std::size_t pairs = 0;
    int maxConf = 0;
    for (const auto& nb : cg.adjacency) {
        pairs += nb.size();
        maxConf = std::max(maxConf, static_cast<int>(nb.size()));
    }
    nlohmann::json j{{"vertices", g.vertex_count()},
                     {"edges", g.edge_count()},
                     {"max_degree", m.max_degree},
                     {"girth", m.girth.str()},
                     {"bipartite", m.bipartition.has_value()},
                     {"connected", m.connected},
                     {"conflict_pairs", pairs / 2},
                     {"max_conflict_degree", maxConf},
                     {"conflict_degree_bound", m.max_degree == 0 ? 0 : 2 * (m.max_degree - 1) * (m.max_degree - 1)}};
    return j;
}

} // namespace detail

/// Runs one command line (without the program name). Never throws.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Injective edge coloring: exact, greedy and tree-decomposition solvers, gadget and reduction tools", "inj-ec"};
    app.require_subcommand(1);

    std::optional<double> budget;
    bool json = false;

    // solve
    auto* solve = app.add_subcommand("solve", "Decide whether a graph has an injective k-edge-coloring");
    std::string solveGraph, solveSolver = "exact", solveTd, solveOut;
    int solveK = 0;
    bool literalJoin = false;
    solve->add_option("graph", solveGraph, "Graph file (.gr is PACE, else DIMACS) or fixture:<name>")->required();
    solve->add_option("-k", solveK, "Number of colors")->required()->check(CLI::Range(1, ColorSet::capacity));
    solve->add_option("--solver", solveSolver, "exact | greedy | fpt | girth16")
        ->check(CLI::IsMember({"exact", "greedy", "fpt", "girth16"}));
    solve->add_option("--td", solveTd, "Tree decomposition (.td) for the fpt solver");
    solve->add_flag("--literal-join", literalJoin, "fpt: join without the cross-subtree checks");
    solve->add_option("--out,-o", solveOut, "Write the verified witness here ('-' for stdout)");
    solve->add_option("--time-budget", budget, "Seconds (default: $INJEC_TIME_BUDGET or 300)");
    solve->add_flag("--json", json, "Machine-readable summary");

    // stats
    auto* stats = app.add_subcommand("stats", "Structural metrics and conflict-graph size");
    std::string statsGraph;
    stats->add_option("graph", statsGraph, "Graph file or fixture:<name>")->required();

    // chromatic
    auto* chrom = app.add_subcommand("chromatic", "Injective chromatic index");
    std::string chromGraph, chromTd, chromSolver = "exact";
    chrom->add_option("graph", chromGraph, "Graph file or fixture:<name>")->required();
    chrom->add_option("--solver", chromSolver, "exact | fpt")->check(CLI::IsMember({"exact", "fpt"}));
    chrom->add_option("--td", chromTd, "Tree decomposition for --solver fpt");
    chrom->add_option("--time-budget", budget, "Seconds");
    chrom->add_flag("--json", json, "Machine-readable summary");

    // fpt
    auto* fpt = app.add_subcommand("fpt", "Tree-decomposition dynamic program");
    std::string fptGraph, fptTd, fptHeuristic = "min-fill";
    int fptK = 0;
    bool fptStrict = false, fptLiteral = false;
    fpt->add_option("--graph", fptGraph, "Graph file or fixture:<name>")->required();
    fpt->add_option("--td", fptTd, "Tree decomposition; omitted means heuristic");
    fpt->add_option("--heuristic", fptHeuristic, "min-fill | min-degree")->check(CLI::IsMember({"min-fill", "min-degree"}));
    fpt->add_option("-k", fptK, "Number of colors")->required()->check(CLI::Range(1, ColorSet::capacity));
    fpt->add_flag("--strict", fptStrict, "Cross-subtree join checks (default)");
    fpt->add_flag("--literal", fptLiteral, "Join with the bag-edge constraint only");
    fpt->add_option("--time-budget", budget, "Seconds");
    fpt->add_flag("--json", json, "Machine-readable summary");

    // generate
    auto* gen = app.add_subcommand("generate", "Write a gadget graph and its port labels");
    std::string genGadget, genOut = "-", genPorts;
    gen->add_option("--gadget", genGadget, "edge3 | vertex4 | pair4 | planar:g[,l] | H | bipartite | bigk:k[,s]")->required();
    gen->add_option("--out", genOut, "Graph output ('-' for stdout)");
    gen->add_option("--ports", genPorts, "Port labels as JSON");

    // reduce
    auto* red = app.add_subcommand("reduce", "Build a reduced instance from a source graph");
    std::string redFrom, redCons, redIn, redOut = "-", redProv;
    int redK = 0, redG = 4;
    std::optional<int> redL;
    red->add_option("--from", redFrom, "3ec | 3vc | kec")->required()->check(CLI::IsMember({"3ec", "3vc", "kec"}));
    red->add_option("--construction", redCons, "gprime | gpp | 4cubic | planar | bipartite | bigk")
        ->required()
        ->check(CLI::IsMember({"gprime", "gpp", "4cubic", "planar", "bipartite", "bigk"}));
    red->add_option("-k", redK, "Colors for kec sources");
    red->add_option("--girth", redG, "Girth parameter of the planar construction");
    red->add_option("--cycle", redL, "Cycle length of the planar gadget");
    red->add_option("--provenance", redProv, "Write vertex and edge origins as JSON");
    red->add_option("input", redIn, "Source graph or fixture:<name>")->required();
    red->add_option("output", redOut, "Reduced graph ('-' for stdout)");

    // check-claims
    auto* cc = app.add_subcommand("check-claims", "Exhaustively check the gadget claims");
    std::string ccClaim, ccParams;
    bool ccMutant = false;
    std::uint64_t ccCap = ClaimOptions{}.cap;
    cc->add_option("--claim", ccClaim, "1 | 2 | 3 | 5 | H | 6 (default: all)");
    cc->add_option("--params", ccParams, "e.g. g=4,l=9 or k=6,s_count=4");
    cc->add_flag("--mutant", ccMutant, "Check the broken negative-control gadget instead");
    cc->add_option("--cap", ccCap, "Maximum colorings per enumeration");

    // random
    auto* rnd = app.add_subcommand("random", "Seeded random instances");
    std::string rndKind, rndOut = "-";
    int rndN = 10, rndM = 12, rndDeg = 3, rndRows = 4, rndCols = 4;
    std::uint64_t rndSeed = 0;
    rnd->add_option("--kind", rndKind, "gnm | bounded | cubic | series-parallel | planar-grid")
        ->required()
        ->check(CLI::IsMember(random::generator_names()));
    rnd->add_option("--seed", rndSeed, "Seed")->required();
    rnd->add_option("-n", rndN, "Vertices");
    rnd->add_option("-m", rndM, "Edges (gnm, bounded)");
    rnd->add_option("--max-degree", rndDeg, "Degree cap (bounded)");
    rnd->add_option("--rows", rndRows, "Grid rows (planar-grid)");
    rnd->add_option("--cols", rndCols, "Grid columns (planar-grid)");
    rnd->add_option("--out", rndOut, "Output ('-' for stdout)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Exit::Yes;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return Exit::Yes;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return Exit::Usage;
    }

    try {
        if (*solve) {
            Graph g = detail::load_graph(solveGraph);
            SearchLimits limits = SearchLimits::seconds(detail::budget_seconds(budget));
            SolveResult r;
            std::string note;
            if (solveSolver == "exact") {
                r = injective_decide(g, solveK, limits);
            } else if (solveSolver == "greedy") {
                Coloring c = greedy_injective(g);
                r.answer = c.max_color() <= solveK ? Answer::Yes : Answer::Unknown;
                if (r.yes()) r.witness = Coloring(std::vector<int>(c.values().begin(), c.values().end()), solveK);
                else note = "greedy used " + std::to_string(c.max_color()) + " colors; not a proof of absence";
            } else if (solveSolver == "fpt") {
                NiceDecomposition nd = detail::decomposition_for(g, solveTd, EliminationHeuristic::MinFill);
                r = fpt_decide(g, nd, solveK, !literalJoin, limits);
            } else {
                if (solveK < 3) throw Error(ErrorCode::BadParams, "girth16 produces 3 colors; need k >= 3");
                r = girth16_color(g, Side::ContainingVertexZero, limits);
                if (r.yes()) r.witness = Coloring(std::vector<int>(r.witness->values().begin(), r.witness->values().end()), solveK);
                if (r.answer == Answer::No) {
                    r.answer = Answer::Unknown;
                    note = "distance-two graph is not 3-colorable; not a proof of absence";
                }
            }
            for (const auto& w : r.warnings) err << "warning: " << w << '\n';
            if (r.witness) detail::emit_witness(g, *r.witness, solveOut, out);
            if (json) {
                nlohmann::json j{{"answer", to_string(r.answer)}, {"solver", solveSolver}, {"k", solveK},
                                 {"nodes", r.stats.nodes}, {"seconds", r.stats.seconds}};
                if (r.witness) j["colors_used"] = r.witness->distinct_colors();
                if (!note.empty()) j["note"] = note;
                out << j.dump() << '\n';
            } else {
                if (solveOut != "-") out << to_string(r.answer) << '\n';
                if (!note.empty()) err << note << '\n';
            }
            if (r.answer == Answer::Yes) return Exit::Yes;
            if (r.answer == Answer::No) return Exit::No;
            return Exit::Undecided;
        }
        if (*stats) {
            out << detail::stats_json(detail::load_graph(statsGraph)).dump(2) << '\n';
            return Exit::Yes;
        }
        if (*chrom) {
            Graph g = detail::load_graph(chromGraph);
            SearchLimits limits = SearchLimits::seconds(detail::budget_seconds(budget));
            int value = 0;
            std::string method = chromSolver;
            if (chromSolver == "exact") {
                value = injective_chromatic(g, limits);
            } else {
                NiceDecomposition nd = detail::decomposition_for(g, chromTd, EliminationHeuristic::MinFill);
                if (g.edge_count() > 0) {
                    for (value = 1;; ++value) {
                        SolveResult r = fpt_decide(g, nd, value, true, limits);
                        if (r.answer == Answer::Unknown) throw Error(ErrorCode::CapExceeded, "time budget exceeded");
                        if (r.yes()) break;
                    }
                }
            }
            if (json) out << nlohmann::json{{"chromatic_index", value}, {"method", method}}.dump() << '\n';
            else out << value << '\n';
            return Exit::Yes;
        }
        if (*fpt) {
            if (fptStrict && fptLiteral) throw Error(ErrorCode::BadParams, "--strict and --literal are exclusive");
            Graph g = detail::load_graph(fptGraph);
            auto h = fptHeuristic == "min-fill" ? EliminationHeuristic::MinFill : EliminationHeuristic::MinDegree;
            NiceDecomposition nd = detail::decomposition_for(g, fptTd, h);
            SolveResult r = fpt_decide(g, nd, fptK, !fptLiteral, SearchLimits::seconds(detail::budget_seconds(budget)));
            if (json)
                out << nlohmann::json{{"answer", to_string(r.answer)}, {"width", nd.width()}, {"nodes", nd.nodes.size()},
                                      {"states", r.stats.nodes}, {"strict", !fptLiteral}, {"seconds", r.stats.seconds}}
                           .dump()
                    << '\n';
            else
                out << to_string(r.answer) << '\n';
            err << "width " << nd.width() << ", " << r.stats.nodes << " states\n";
            if (r.answer == Answer::Yes) return Exit::Yes;
            if (r.answer == Answer::No) return Exit::No;
            return Exit::Undecided;
        }
        if (*gen) {
            GadgetInstance gi = detail::gadget_by_name(genGadget);
            detail::write_text(genOut, io::graph_to_string(gi.graph, io::format_for_path(genOut)), out);
            if (!genPorts.empty()) {
                nlohmann::json ports;
                for (const auto& [label, v] : gi.ports) ports[label] = v + 1;
                detail::write_text(genPorts, nlohmann::json{{"ports", ports}, {"params", gi.params}}.dump(2) + "\n", out);
            }
            return Exit::Yes;
        }
        if (*red) {
            Graph src = detail::load_graph(redIn);
            ReductionOutput r;
            const bool cubicSource = redCons == "gprime" || redCons == "gpp" || redCons == "4cubic";
            if ((cubicSource && redFrom != "3ec") || ((redCons == "planar" || redCons == "bipartite") && redFrom != "3vc") ||
                (redCons == "bigk" && redFrom != "kec"))
                throw Error(ErrorCode::BadParams, "construction " + redCons + " does not reduce from " + redFrom);
            if (redCons == "gprime") r = build_Gprime_3cubic(src);
            else if (redCons == "gpp") r = build_Gdoubleprime_3cubic(src);
            else if (redCons == "4cubic") r = build_reduction_4cubic(src);
            else if (redCons == "planar") r = build_reduction_planar(src, redG, redL);
            else if (redCons == "bipartite") r = build_reduction_bipartite(src);
            else {
                if (redK == 0) throw Error(ErrorCode::BadParams, "-k is required for bigk");
                r = build_reduction_bigk(src, redK);
            }
            detail::write_text(redOut, io::graph_to_string(r.graph, io::format_for_path(redOut)), out);
            if (!redProv.empty()) detail::write_text(redProv, detail::origins_json(r).dump(2) + "\n", out);
            err << r.construction << ": " << r.graph.vertex_count() << " vertices, " << r.graph.edge_count()
                << " edges, target k = " << r.k << '\n';
            return Exit::Yes;
        }
        if (*cc) {
            auto params = detail::parse_params(ccParams);
            std::vector<std::string> ids = ccClaim.empty() ? claim_ids() : std::vector<std::string>{ccClaim};
            nlohmann::json reports = nlohmann::json::array();
            bool anyRefuted = false, anyCapped = false;
            for (const auto& id : ids) {
                ClaimReport rep = check_claim(id, params, ccMutant, ClaimOptions{ccCap});
                anyRefuted |= rep.status == ClaimStatus::Refuted;
                anyCapped |= rep.status == ClaimStatus::Capped;
                reports.push_back(rep.to_json());
            }
            out << reports.dump(2) << '\n';
            if (anyCapped) return Exit::Undecided;
            return anyRefuted ? Exit::No : Exit::Yes;
        }
        if (*rnd) {
            Graph g;
            if (rndKind == "gnm") g = random::gnm(rndN, rndM, rndSeed);
            else if (rndKind == "bounded") g = random::bounded_degree(rndN, rndM, rndDeg, rndSeed);
            else if (rndKind == "cubic") g = random::random_cubic(rndN, rndSeed);
            else if (rndKind == "series-parallel") g = random::series_parallel(rndN, rndSeed);
            else g = random::planar_grid(rndRows, rndCols, rndSeed);
            detail::write_text(rndOut, io::graph_to_string(g, io::format_for_path(rndOut)), out);
            return Exit::Yes;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (e.code() == ErrorCode::CapExceeded) return Exit::Undecided;
        return Exit::Failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Exit::Failure;
    }
    return Exit::Usage;
}

} // namespace injec::cli
