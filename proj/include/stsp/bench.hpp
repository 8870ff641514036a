#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stsp/instance.hpp"
#include "stsp/model.hpp"
#include "stsp/solver.hpp"

namespace stsp {

/// Batch plan.  The measured solver is "anneal" when it appears in
/// `solvers`, otherwise "oracle"; when both are listed the oracle run also
/// serves as the gap reference.  afgr is "on", "off", or "both" (each
/// instance evaluated in both states).
struct BenchConfig {
    std::vector<int> v_range;
    int seeds_per_v = 10;
    std::uint64_t seed_base = 1;
    double radius = 100.0;
    double fraction = 0.7;
    Variant variant = Variant::full;
    std::vector<Formulation> formulations;  // default: both
    std::vector<std::string> solvers;       // default: {"oracle"}
    std::string afgr = "both";
    double time_budget_ms = 0.0;  // 0 = no limit; overruns count as unsolved
    std::string out_dir = ".";
    AnnealParams anneal;

    void validate() const;  // throws std::invalid_argument
};

/// Parses the JSON form of BenchConfig (all fields optional except
/// v_range).  Throws IoError on malformed JSON, std::invalid_argument on
/// bad values.
BenchConfig bench_config_from_json(const std::string& text);
BenchConfig read_bench_config(const std::string& path);

/// One (instance, afgr-state, formulation) evaluation by the measured
/// solver.  Infeasible or unvalidated runs carry feasible = false; their
/// objective is meaningless and never reaches an aggregate.
struct RunRecord {
    int V = 0;
    std::uint64_t seed = 0;
    int arcs = 0;
    int required = 0;
    Formulation formulation = Formulation::abf;
    Variant variant = Variant::full;
    bool afgr = false;
    std::string solver;
    bool feasible = false;  // solved AND the mapped assignment checked out
    double objective = 0.0;
    double time_ms = 0.0;
    long long vars_bin = 0, vars_cont = 0, constraints = 0;
    double var_red_pct = 0.0;       // percentage; 0 when afgr is off
    bool has_oracle = false;        // oracle reference available
    double oracle_objective = 0.0;  // valid only when has_oracle
};

/// Aggregate over seeds, keyed by (V, formulation, variant, afgr).
/// Statistics with no backing data (e.g. objective means when nothing was
/// solved) carry has_* = false and serialize as empty CSV cells.
struct BenchRow {
    int V = 0;
    double arcs_avg = 0.0;
    double required_avg = 0.0;
    Formulation formulation = Formulation::abf;
    Variant variant = Variant::full;
    bool afgr = false;
    double vars_bin_avg = 0.0, vars_cont_avg = 0.0, constraints_avg = 0.0;
    bool has_objective = false;
    double of_avg = 0.0, of_std = 0.0;
    bool has_gap = false;
    double gap = 0.0;  // (of_avg - oracle_avg) / oracle_avg
    double pct_solved = 0.0;
    double time_avg_ms = 0.0, time_std_ms = 0.0;
    bool has_var_red = false;
    double var_red_pct = 0.0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::vector<RunRecord> runs;
};

/// Runs the whole plan: generate (with retry on geometric dead ends),
/// optionally reduce, build both formulations for the size columns, solve
/// with the measured solver, validate every claimed-feasible solution by
/// mapping it into each formulation and checking all constraints, then
/// aggregate.  A per-solve time budget overrun demotes the run to
/// unsolved; nothing aborts the batch.
BenchResult run_benchmark(const BenchConfig& cfg);

/// CSV emission.  The bench header is
/// V,arcs,required,formulation,variant,afgr,vars_bin,vars_cont,constraints,
/// of_avg,of_std,gap,pct_solved,time_avg_ms,time_std_ms,var_red_pct
/// with 17-significant-digit numbers and empty cells for absent stats.
std::string bench_rows_to_csv(const std::vector<BenchRow>& rows);
std::string run_records_to_csv(const std::vector<RunRecord>& runs);
void write_bench_csv(const std::vector<BenchRow>& rows, const std::string& path);
void write_runs_csv(const std::vector<RunRecord>& runs, const std::string& path);

/// Recomputes aggregate rows from raw records (same fold as
/// run_benchmark); lets a reader verify the aggregation is loss-free.
std::vector<BenchRow> aggregate_runs(const std::vector<RunRecord>& runs);

/// Parses a bench CSV back into rows.  Throws IoError / invalid_argument
/// on malformed input.
std::vector<BenchRow> bench_rows_from_csv(const std::string& text);

/// Objective-vs-V chart data: writes a CSV (columns V,variant,of_avg; one
/// row per (V, variant) with data, averaged over formulations and afgr
/// states) and, when at least two V values exist, an SVG line chart with
/// one polyline per variant.  Returns true when the SVG was written.
bool emit_scaling_plot(const std::vector<BenchRow>& rows,
                       const std::string& csv_path,
                       const std::string& svg_path);

}  // namespace stsp
