// Command-line front end: instance generation, graph reduction, model
// export, solving, batch benchmarks, and chart emission.
//
// Exit codes: 0 success, 2 invalid input, 3 infeasible instance,
// 4 enumeration capacity exceeded.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stsp/afgr.hpp"
#include "stsp/bench.hpp"
#include "stsp/errors.hpp"
#include "stsp/instance.hpp"
#include "stsp/instance_gen.hpp"
#include "stsp/model.hpp"
#include "stsp/model_builder.hpp"
#include "stsp/solver.hpp"
#include "stsp/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitCapacity = 4;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw stsp::IoError("cannot open for writing: " + path);
    f << text;
    if (!f.good()) throw stsp::IoError("write failed: " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw stsp::IoError("cannot open: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

// Applies a --variant override onto a loaded instance and re-validates,
// so e.g. forcing delivery_only onto a mixed-demand instance is rejected.
void apply_variant(stsp::Instance& ins, const std::string& variant) {
    if (variant.empty()) return;
    ins.variant = stsp::variant_from_string(variant);
    ins.validate();
}

struct GenArgs {
    int n = 0;
    double radius = 100.0;
    std::uint64_t seed = 1;
    double fraction = 0.7;
    std::string variant = "full";
    std::string out;
};

struct ReduceArgs {
    std::string in, out, report;
};

struct BuildArgs {
    std::string in, formulation, variant, lp_out;
};

struct SolveArgs {
    std::string in, solver = "oracle", variant, out, svg;
    stsp::AnnealParams anneal;
};

struct BenchArgs {
    std::string config;
};

struct PlotArgs {
    std::string results, out;
};

int cmd_gen(const GenArgs& a) {
    stsp::Instance ins = stsp::generate_instance_with_retries(
        a.n, a.radius, a.fraction, stsp::variant_from_string(a.variant), a.seed);
    stsp::write_instance(ins, a.out);
    std::cout << "wrote " << a.out << " (V=" << ins.graph.num_nodes()
              << ", arcs=" << ins.graph.num_arcs()
              << ", required=" << ins.required.size() << ")\n";
    return kExitOk;
}

int cmd_reduce(const ReduceArgs& a) {
    stsp::Instance ins = stsp::read_instance(a.in);
    auto [reduced, rep] = stsp::reduce(ins);
    stsp::write_instance(reduced, a.out);
    if (!a.report.empty()) {
        nlohmann::json j{{"nodes_before", rep.nodes_before},
                         {"nodes_after", rep.nodes_after},
                         {"arcs_before", rep.arcs_before},
                         {"arcs_after", rep.arcs_after},
                         {"removed_nodes", rep.removed_nodes},
                         {"removed_arcs", rep.removed_arcs},
                         {"var_reduction_abf", rep.var_reduction_abf},
                         {"var_reduction_nbf", rep.var_reduction_nbf}};
        write_text(a.report, j.dump(2) + "\n");
    }
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.2f", rep.var_reduction_abf * 100.0);
    std::cout << "reduced nodes " << rep.nodes_before << " -> " << rep.nodes_after
              << ", arcs " << rep.arcs_before << " -> " << rep.arcs_after
              << " (vars -" << pct << "%)\n";
    return kExitOk;
}

int cmd_build(const BuildArgs& a) {
    stsp::Instance ins = stsp::read_instance(a.in);
    apply_variant(ins, a.variant);
    stsp::ModelSpec m =
        stsp::build_model(ins, stsp::formulation_from_string(a.formulation));
    stsp::write_lp(m, a.lp_out);
    std::cout << "wrote " << a.lp_out << " (" << m.num_binary() << " binary, "
              << m.num_continuous() << " continuous, " << m.constraints.size()
              << " constraints)\n";
    return kExitOk;
}

int cmd_solve(const SolveArgs& a) {
    stsp::Instance ins = stsp::read_instance(a.in);
    apply_variant(ins, a.variant);
    if (a.solver != "oracle" && a.solver != "anneal")
        throw std::invalid_argument("unknown solver '" + a.solver + "'");

    using Clock = std::chrono::steady_clock;
    auto t0 = Clock::now();
    stsp::Solution sol = a.solver == "anneal" ? stsp::solve_anneal(ins, a.anneal)
                                              : stsp::solve_exact(ins);
    double elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

    write_text(a.out, stsp::solution_to_json(sol, a.solver, elapsed_ms));
    if (!a.svg.empty()) write_text(a.svg, stsp::render_route_svg(ins, sol));
    if (sol.feasible) {
        std::cout << "objective " << stsp::format_sig17(sol.objective) << " ("
                  << a.solver << ", " << sol.walk.size() << " arcs)\n";
        return kExitOk;
    }
    std::cout << "no feasible route found (violation "
              << stsp::format_sig17(sol.violation) << ")\n";
    return kExitInfeasible;
}

int cmd_bench(const BenchArgs& a) {
    stsp::BenchConfig cfg = stsp::read_bench_config(a.config);
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw stsp::IoError("cannot create output dir: " + cfg.out_dir);
    stsp::BenchResult res = stsp::run_benchmark(cfg);
    const std::string bench_path = cfg.out_dir + "/bench.csv";
    const std::string runs_path = cfg.out_dir + "/runs.csv";
    stsp::write_bench_csv(res.rows, bench_path);
    stsp::write_runs_csv(res.runs, runs_path);
    std::cout << "wrote " << bench_path << " (" << res.rows.size()
              << " rows) and " << runs_path << " (" << res.runs.size()
              << " runs)\n";
    return kExitOk;
}

int cmd_plot(const PlotArgs& a) {
    std::string stem = a.out;
    for (const std::string ext : {".svg", ".csv"})
        if (stem.size() > ext.size() &&
            stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0)
            stem.resize(stem.size() - ext.size());
    std::vector<stsp::BenchRow> rows =
        stsp::bench_rows_from_csv(read_text(a.results));
    bool svg = stsp::emit_scaling_plot(rows, stem + ".csv", stem + ".svg");
    std::cout << "wrote " << stem << ".csv"
              << (svg ? " and " + stem + ".svg" : " (single V value, no chart)")
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steiner TSP with time windows and pickup-and-delivery: "
                 "generator, reducer, model exporter, solvers, benchmarks"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* cgen = app.add_subcommand("gen", "generate a random instance");
    cgen->add_option("--n", gen.n, "node count (>= 3)")->required();
    cgen->add_option("--radius", gen.radius, "layout circle radius")
        ->capture_default_str();
    cgen->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
    cgen->add_option("--fraction", gen.fraction,
                     "required-node fraction, in (0,1)")
        ->capture_default_str();
    cgen->add_option("--variant", gen.variant,
                     "full | no_time_windows | delivery_only")
        ->capture_default_str();
    cgen->add_option("--out", gen.out, "instance JSON output path")->required();

    ReduceArgs red;
    auto* cred = app.add_subcommand("reduce", "shortest-path arc filtering");
    cred->add_option("--in", red.in, "instance JSON input")->required();
    cred->add_option("--out", red.out, "reduced instance output")->required();
    cred->add_option("--report", red.report, "reduction report JSON output");

    BuildArgs bld;
    auto* cbld = app.add_subcommand("build", "emit a MILP model as an LP file");
    cbld->add_option("--in", bld.in, "instance JSON input")->required();
    cbld->add_option("--formulation", bld.formulation, "abf | nbf")->required();
    cbld->add_option("--variant", bld.variant,
                     "override the instance variant before building");
    cbld->add_option("--lp-out", bld.lp_out, "LP file output path")->required();

    SolveArgs slv;
    auto* cslv = app.add_subcommand("solve", "find a route");
    cslv->add_option("--in", slv.in, "instance JSON input")->required();
    cslv->add_option("--solver", slv.solver, "oracle | anneal")
        ->capture_default_str();
    cslv->add_option("--variant", slv.variant,
                     "override the instance variant before solving");
    cslv->add_option("--out", slv.out, "solution JSON output path")->required();
    cslv->add_option("--svg", slv.svg, "also render the route as SVG");
    cslv->add_option("--anneal-iters", slv.anneal.iterations,
                     "annealing iterations per restart")
        ->capture_default_str();
    cslv->add_option("--anneal-restarts", slv.anneal.restarts,
                     "independent annealing restarts")
        ->capture_default_str();
    cslv->add_option("--anneal-cooling", slv.anneal.cooling,
                     "geometric cooling rate, in (0,1)")
        ->capture_default_str();
    cslv->add_option("--anneal-t0", slv.anneal.t0,
                     "starting temperature (0 = derive from greedy)")
        ->capture_default_str();
    cslv->add_option("--anneal-penalty", slv.anneal.penalty,
                     "violation penalty weight")
        ->capture_default_str();
    cslv->add_option("--anneal-seed", slv.anneal.seed, "annealer RNG seed")
        ->capture_default_str();

    BenchArgs ben;
    auto* cben = app.add_subcommand("bench", "run a benchmark batch");
    cben->add_option("--config", ben.config, "bench config JSON")->required();

    PlotArgs plt;
    auto* cplt = app.add_subcommand("plot", "objective-vs-V chart from a bench CSV");
    cplt->add_option("--results", plt.results, "bench CSV input")->required();
    cplt->add_option("--out", plt.out,
                     "output path; extension is replaced by .csv/.svg")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (cgen->parsed()) return cmd_gen(gen);
        if (cred->parsed()) return cmd_reduce(red);
        if (cbld->parsed()) return cmd_build(bld);
        if (cslv->parsed()) return cmd_solve(slv);
        if (cben->parsed()) return cmd_bench(ben);
        return cmd_plot(plt);
    } catch (const stsp::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const stsp::GenerationFailure& e) {
        std::cerr << "error: " << e.what() << " (last seed " << e.seed() << ")\n";
        return kExitInfeasible;
    } catch (const stsp::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
