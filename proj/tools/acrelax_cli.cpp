// Command line front end: parse -> bounds -> (obbt) -> build -> solve -> report,
// plus cut verification and set-surface export.
//
// Exit codes: 0 ok, 1 usage, 2 parse error, 3 solver failure,
//             4 verification counterexample found.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "acrelax/json_io.hpp"
#include "acrelax/obbt.hpp"
#include "acrelax/oracle.hpp"
#include "acrelax/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCounterexample = 4;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ACRELAX_SEED")) return std::strtoull(env, nullptr, 10);
    return 20240817ULL;
}

acrelax::Network load_case(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw acrelax::ParseError("cannot open case file " + path, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return acrelax::parse_matpower(ss.str());
}

struct SolveOutcome {
    acrelax::SolveReport report;
    acrelax::ModelKind kind;
};

SolveOutcome run_solve(const acrelax::Network& net, acrelax::ModelKind kind, bool use_obbt,
                       int obbt_passes, int max_iter, const std::string& trace_path,
                       const std::string& model_dump_path) {
    const auto edges = acrelax::build_edges(net);
    acrelax::BoundSet bounds = acrelax::default_bounds(net, edges);
    if (use_obbt) {
        acrelax::ObbtParams params;
        params.max_passes = obbt_passes;
        const acrelax::ObbtReport rep = acrelax::tighten(net, kind, bounds, params);
        if (rep.infeasible)
            throw std::runtime_error("obbt found the network infeasible: " + rep.infeasible_detail);
        bounds = rep.bounds;
    }
    acrelax::RelaxModel model = acrelax::build_model(net, bounds, kind);
    if (!model_dump_path.empty()) {
        std::ofstream out(model_dump_path);
        out << acrelax::model_to_json(model) << "\n";
    }
    acrelax::OaSolver solver = acrelax::make_solver(model);
    acrelax::SolveParams params;
    params.max_iter = max_iter;
    params.collect_trace = !trace_path.empty();
    acrelax::SolveReport report = solver.minimize(params);
    report.lnc_count = model.lnc_rows;
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        out << acrelax::csv_trace(report.trace);
    }
    return SolveOutcome{std::move(report), kind};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acrelax: strengthened convex relaxations of AC optimal power flow"};
    app.require_subcommand(1);

    std::string case_path, model_name = "qc-lnc", out_path, trace_path, set_name = "sc";
    bool json_out = false, use_obbt = false, nonedge = false;
    double ac_obj = 0.0, gap_lb = 0.0;
    bool have_ac = false;
    int max_iter = 200, draws = 1000, resolution = 41, jobs = 1;
    std::size_t samples = 10000;
    std::uint64_t seed = default_seed();
    double vli = 0.9, vui = 1.2, vlj = 0.8, vuj = 1.0;
    double thl = 0.26179938779914943, thu = 1.3089969389957472;  // pi/12, 5pi/12
    double eps = 1e-4;
    int passes = 5;

    auto* cparse = app.add_subcommand("parse", "validate a case file and dump it as JSON");
    cparse->add_option("case", case_path)->required();
    cparse->add_flag("--json", json_out, "machine-readable output");

    std::string cuts_path, model_dump_path;
    auto* cbounds = app.add_subcommand("bounds", "per-bus and per-edge lifted variable boxes");
    cbounds->add_option("case", case_path)->required();
    cbounds->add_flag("--json", json_out);
    cbounds->add_flag("--nonedge", nonedge, "include non-adjacent bus pairs");
    cbounds->add_option("--cuts", cuts_path, "also dump all generated cuts as CSV");

    auto* cobbt = app.add_subcommand("obbt", "optimization-based bound tightening");
    cobbt->add_option("case", case_path)->required();
    cobbt->add_option("--model", model_name, "soc|qc|qc-lnc");
    cobbt->add_option("--eps", eps, "improvement threshold");
    cobbt->add_option("--passes", passes, "maximum passes");
    cobbt->add_option("--jobs", jobs, "worker pool size (subproblems run sequentially)");
    cobbt->add_flag("--json", json_out);

    int obbt_passes = 5;
    auto* csolve = app.add_subcommand("solve", "lower-bound a case with a chosen relaxation");
    csolve->add_option("case", case_path)->required();
    csolve->add_option("--model", model_name, "soc|qc|qc-lnc");
    csolve->add_flag("--obbt", use_obbt, "tighten bounds before solving");
    csolve->add_option("--obbt-passes", obbt_passes, "bound-tightening pass limit");
    csolve->add_option("--ac-obj", ac_obj, "known AC objective for gap reporting")
        ->each([&](const std::string&) { have_ac = true; });
    csolve->add_option("--max-iter", max_iter);
    csolve->add_option("--trace", trace_path, "iteration trace CSV path");
    csolve->add_option("--dump-model", model_dump_path, "write the assembled model as JSON");
    csolve->add_flag("--json", json_out);

    auto* cverify = app.add_subcommand("verify-cuts", "fuzz all cut families against S_p samples");
    cverify->add_option("--draws", draws);
    cverify->add_option("--samples", samples);
    cverify->add_option("--seed", seed);
    cverify->add_flag("--json", json_out);

    auto* cexport = app.add_subcommand("export-set", "CSV surface of S_p or S_c membership");
    cexport->add_option("--set", set_name, "sp|sc");
    cexport->add_option("--res", resolution, "grid resolution per axis");
    cexport->add_option("--vl-i", vli);
    cexport->add_option("--vu-i", vui);
    cexport->add_option("--vl-j", vlj);
    cexport->add_option("--vu-j", vuj);
    cexport->add_option("--thl", thl);
    cexport->add_option("--thu", thu);
    cexport->add_option("--out", out_path, "output file (default stdout)");

    auto* cgap = app.add_subcommand("gap", "optimality gap from an AC objective and a bound");
    cgap->add_option("--ac", ac_obj)->required();
    cgap->add_option("--lb", gap_lb)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cparse) {
            const acrelax::Network net = load_case(case_path);
            if (json_out) {
                std::cout << acrelax::network_to_json(net) << "\n";
            } else {
                std::printf("case %s: %zu buses, %zu generators, %zu branches, %zu edges\n",
                            net.name.c_str(), net.buses.size(), net.generators.size(),
                            net.branches.size(), acrelax::build_edges(net).size());
                for (const auto& w : net.warnings) std::printf("warning: %s\n", w.c_str());
            }
            return kExitOk;
        }
        if (*cbounds) {
            const acrelax::Network net = load_case(case_path);
            const auto edges = acrelax::build_edges(net);
            const acrelax::BoundSet b = acrelax::default_bounds(net, edges);
            if (!cuts_path.empty()) {
                std::ofstream out(cuts_path);
                out << acrelax::cuts_to_csv(net, edges, b);
            }
            if (json_out) {
                std::cout << acrelax::bounds_to_json(net, edges, b) << "\n";
            } else {
                std::printf("%-8s %12s %12s\n", "bus", "w_lo", "w_hi");
                for (std::size_t k = 0; k < net.buses.size(); ++k)
                    std::printf("%-8d %12.6f %12.6f\n", net.buses[k].id,
                                b.bus_v[k].lo * b.bus_v[k].lo, b.bus_v[k].hi * b.bus_v[k].hi);
                std::printf("%-8s %12s %12s %12s %12s\n", "edge", "wr_lo", "wr_hi", "wi_lo",
                            "wi_hi");
                for (std::size_t e = 0; e < edges.size(); ++e) {
                    const auto p = acrelax::edge_params(
                        b.bus_v[static_cast<std::size_t>(edges[e].bus_i)],
                        b.bus_v[static_cast<std::size_t>(edges[e].bus_j)], b.edge_theta[e]);
                    const auto wb = acrelax::w_offdiag_bounds(p);
                    std::printf("%d-%-6d %12.6f %12.6f %12.6f %12.6f\n",
                                net.buses[static_cast<std::size_t>(edges[e].bus_i)].id,
                                net.buses[static_cast<std::size_t>(edges[e].bus_j)].id, wb.re.lo,
                                wb.re.hi, wb.im.lo, wb.im.hi);
                }
                if (nonedge) {
                    std::printf("%-8s %12s\n", "pair", "|w| bound");
                    for (std::size_t i = 0; i < net.buses.size(); ++i)
                        for (std::size_t j = i + 1; j < net.buses.size(); ++j) {
                            const bool adjacent = std::any_of(
                                edges.begin(), edges.end(), [&](const acrelax::Edge& e) {
                                    return e.bus_i == static_cast<int>(i) &&
                                           e.bus_j == static_cast<int>(j);
                                });
                            if (adjacent) continue;
                            const auto wb = acrelax::w_nonedge_bounds(b.bus_v[i], b.bus_v[j]);
                            std::printf("%d-%-6d %12.6f\n", net.buses[i].id, net.buses[j].id,
                                        wb.re.hi);
                        }
                }
            }
            return kExitOk;
        }
        if (*cobbt) {
            const acrelax::Network net = load_case(case_path);
            const auto kind = acrelax::model_kind_from_string(model_name);
            const auto edges = acrelax::build_edges(net);
            acrelax::ObbtParams params;
            params.eps = eps;
            params.max_passes = passes;
            const acrelax::ObbtReport rep =
                acrelax::tighten(net, kind, acrelax::default_bounds(net, edges), params);
            if (json_out) {
                std::cout << acrelax::obbt_report_to_json(net, edges, rep) << "\n";
            } else {
                if (rep.infeasible) {
                    std::printf("infeasible: %s\n", rep.infeasible_detail.c_str());
                } else {
                    std::printf("passes=%d fixpoint=%s tightened_sides=%d total_shrink=%.6f\n",
                                rep.passes, rep.fixpoint ? "yes" : "no", rep.tightened_sides,
                                rep.total_shrink);
                    for (std::size_t k = 0; k < net.buses.size(); ++k)
                        std::printf("bus %-5d v in [%.6f, %.6f]\n", net.buses[k].id,
                                    rep.bounds.bus_v[k].lo, rep.bounds.bus_v[k].hi);
                    for (std::size_t e = 0; e < edges.size(); ++e)
                        std::printf("edge %d-%-4d pad in [%.6f, %.6f]\n",
                                    net.buses[static_cast<std::size_t>(edges[e].bus_i)].id,
                                    net.buses[static_cast<std::size_t>(edges[e].bus_j)].id,
                                    rep.bounds.edge_theta[e].lo, rep.bounds.edge_theta[e].hi);
                }
            }
            return rep.infeasible ? kExitSolver : kExitOk;
        }
        if (*csolve) {
            const acrelax::Network net = load_case(case_path);
            const auto kind = acrelax::model_kind_from_string(model_name);
            const SolveOutcome out =
                run_solve(net, kind, use_obbt, obbt_passes, max_iter, trace_path, model_dump_path);
            if (json_out) {
                std::cout << acrelax::solve_report_to_json(out.report, kind, ac_obj, have_ac)
                          << "\n";
            } else {
                std::printf("model=%s status=%s lower_bound=%.4f iters=%d cuts=%d lnc=%d (%.0f ms)\n",
                            acrelax::to_string(kind), out.report.status.c_str(),
                            out.report.lower_bound, out.report.iterations, out.report.cuts_added,
                            out.report.lnc_count, out.report.wall_ms);
                if (have_ac) {
                    bool neg = false;
                    const double gap = acrelax::optimality_gap(ac_obj, out.report.lower_bound, &neg);
                    if (neg)
                        std::printf("warning: negative AC objective; |ac| used as denominator\n");
                    std::printf("ac=%.4f gap=%.2f%%\n", ac_obj, gap);
                }
            }
            return out.report.ok() ? kExitOk : kExitSolver;
        }
        if (*cverify) {
            acrelax::Rng rng(seed);
            long long total_viol = 0, total_samples = 0;
            double worst = std::numeric_limits<double>::infinity();
            std::vector<acrelax::CutViolation> firsts;
            for (int d = 0; d < draws; ++d) {
                const double a = rng.uniform(-1.4, 1.4), b = rng.uniform(-1.4, 1.4);
                const acrelax::Interval th{std::min(a, b), std::max(a, b)};
                const acrelax::EdgeParams p = acrelax::edge_params(
                    {rng.uniform(0.85, 0.95), rng.uniform(1.05, 1.25)},
                    {rng.uniform(0.85, 0.95), rng.uniform(1.05, 1.25)}, th);
                const acrelax::FuzzReport rep =
                    acrelax::fuzz_edge_cuts(p, samples, rng.next(), 1e-9);
                total_viol += static_cast<long long>(rep.violations.size());
                total_samples += rep.samples;
                worst = std::min(worst, rep.min_slack);
                if (firsts.size() < 8)
                    firsts.insert(firsts.end(), rep.violations.begin(),
                                  rep.violations.begin() +
                                      std::min<std::size_t>(rep.violations.size(),
                                                            8 - firsts.size()));
            }
            if (json_out) {
                acrelax::FuzzReport agg;
                agg.samples = total_samples;
                agg.min_slack = worst;
                agg.violations = firsts;
                std::cout << acrelax::fuzz_report_to_json(agg) << "\n";
            } else {
                std::printf("draws=%d samples=%lld min_slack=%.3e violations=%lld\n", draws,
                            total_samples, worst, total_viol);
                for (const auto& v : firsts)
                    std::printf("violated %s at (%.6f, %.6f, %.6f, %.6f) slack=%.3e\n",
                                v.cut.c_str(), v.point[0], v.point[1], v.point[2], v.point[3],
                                v.slack);
            }
            return total_viol == 0 ? kExitOk : kExitCounterexample;
        }
        if (*cexport) {
            const acrelax::EdgeParams p =
                acrelax::edge_params({vli, vui}, {vlj, vuj}, {thl, thu});
            const acrelax::SetKind which =
                set_name == "sp" ? acrelax::SetKind::Sp : acrelax::SetKind::Sc;
            if (out_path.empty()) {
                acrelax::export_set_surface(p, which, resolution, std::cout);
            } else {
                std::ofstream out(out_path);
                acrelax::export_set_surface(p, which, resolution, out);
            }
            return kExitOk;
        }
        if (*cgap) {
            bool neg = false;
            const double g = acrelax::optimality_gap(ac_obj, gap_lb, &neg);
            if (neg) std::fprintf(stderr, "warning: negative AC objective; |ac| used as denominator\n");
            std::printf("%.2f\n", g);
            return kExitOk;
        }
    } catch (const acrelax::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitParse;
    } catch (const acrelax::UnsupportedError& e) {
        std::fprintf(stderr, "unsupported: %s\n", e.what());
        return kExitParse;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolver;
    }
    return kExitUsage;
}
