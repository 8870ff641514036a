#include "stsp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "stsp/afgr.hpp"
#include "stsp/errors.hpp"
#include "stsp/instance_gen.hpp"
#include "stsp/model_builder.hpp"
#include "stsp/svg.hpp"

namespace stsp {

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << text;
    if (!f.good()) throw IoError("write failed: " + path);
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

double mean(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double pop_std(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double mu = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

}  // namespace

void BenchConfig::validate() const {
    if (v_range.empty()) throw std::invalid_argument("bench: empty v_range");
    for (int v : v_range)
        if (v < 3)
            throw std::invalid_argument("bench: v_range entries must be >= 3");
    if (seeds_per_v < 1)
        throw std::invalid_argument("bench: seeds_per_v must be >= 1");
    if (radius <= 0.0) throw std::invalid_argument("bench: radius must be > 0");
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("bench: fraction must be in (0,1)");
    if (afgr != "on" && afgr != "off" && afgr != "both")
        throw std::invalid_argument("bench: afgr must be on, off, or both");
    if (formulations.empty())
        throw std::invalid_argument("bench: no formulations selected");
    if (solvers.empty()) throw std::invalid_argument("bench: no solvers selected");
    for (const std::string& s : solvers)
        if (s != "oracle" && s != "anneal")
            throw std::invalid_argument("bench: unknown solver " + s);
    if (time_budget_ms < 0.0)
        throw std::invalid_argument("bench: negative time budget");
    if (anneal.iterations <= 0 || anneal.restarts < 1)
        throw std::invalid_argument("bench: anneal iterations/restarts invalid");
    if (!(anneal.cooling > 0.0 && anneal.cooling < 1.0))
        throw std::invalid_argument("bench: cooling rate must be in (0,1)");
    if (anneal.t0 < 0.0 || anneal.penalty < 0.0)
        throw std::invalid_argument("bench: negative anneal parameter");
}

BenchConfig bench_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bench config: ") + e.what());
    }
    BenchConfig cfg;
    try {
        if (!j.contains("v_range"))
            throw std::invalid_argument("bench config: missing v_range");
        cfg.v_range = j.at("v_range").get<std::vector<int>>();
        cfg.seeds_per_v = j.value("seeds_per_v", cfg.seeds_per_v);
        cfg.seed_base = j.value("seed_base", cfg.seed_base);
        cfg.radius = j.value("radius", cfg.radius);
        cfg.fraction = j.value("fraction", cfg.fraction);
        cfg.variant = variant_from_string(j.value("variant", std::string("full")));
        if (j.contains("formulations")) {
            for (const auto& f : j.at("formulations"))
                cfg.formulations.push_back(
                    formulation_from_string(f.get<std::string>()));
        } else {
            cfg.formulations = {Formulation::abf, Formulation::nbf};
        }
        if (j.contains("solvers"))
            cfg.solvers = j.at("solvers").get<std::vector<std::string>>();
        else
            cfg.solvers = {"oracle"};
        cfg.afgr = j.value("afgr", cfg.afgr);
        cfg.time_budget_ms = j.value("time_budget_ms", cfg.time_budget_ms);
        cfg.out_dir = j.value("out_dir", cfg.out_dir);
        if (j.contains("anneal")) {
            const auto& a = j.at("anneal");
            cfg.anneal.iterations = a.value("iterations", cfg.anneal.iterations);
            cfg.anneal.restarts = a.value("restarts", cfg.anneal.restarts);
            cfg.anneal.cooling = a.value("cooling", cfg.anneal.cooling);
            cfg.anneal.t0 = a.value("t0", cfg.anneal.t0);
            cfg.anneal.penalty = a.value("penalty", cfg.anneal.penalty);
            cfg.anneal.seed = a.value("seed", cfg.anneal.seed);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bench config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

BenchConfig read_bench_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return bench_config_from_json(buf.str());
}

BenchResult run_benchmark(const BenchConfig& cfg_in) {
    BenchConfig cfg = cfg_in;
    if (cfg.formulations.empty())
        cfg.formulations = {Formulation::abf, Formulation::nbf};
    if (cfg.solvers.empty()) cfg.solvers = {"oracle"};
    cfg.validate();

    const bool run_oracle = contains(cfg.solvers, "oracle");
    const bool run_anneal = contains(cfg.solvers, "anneal");
    const std::string measured = run_anneal ? "anneal" : "oracle";
    std::vector<int> afgr_states;
    if (cfg.afgr == "off" || cfg.afgr == "both") afgr_states.push_back(0);
    if (cfg.afgr == "on" || cfg.afgr == "both") afgr_states.push_back(1);

    using Clock = std::chrono::steady_clock;
    auto ms_since = [](Clock::time_point start) {
        return std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    };

    BenchResult res;
    for (int V : cfg.v_range) {
        for (int i = 0; i < cfg.seeds_per_v; ++i) {
            const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(i);
            Instance base = generate_instance_with_retries(
                V, cfg.radius, cfg.fraction, cfg.variant, seed);
            for (int red : afgr_states) {
                Instance ins = base;
                double red_pct = 0.0;
                if (red) {
                    auto [reduced, rep] = reduce(base);
                    ins = std::move(reduced);
                    red_pct = rep.var_reduction_abf * 100.0;
                }

                bool has_oracle = false;
                double oracle_obj = 0.0, oracle_ms = 0.0;
                Solution oracle_sol;
                if (run_oracle) {
                    try {
                        auto t0 = Clock::now();
                        oracle_sol = solve_exact(ins);
                        oracle_ms = ms_since(t0);
                        if (oracle_sol.feasible) {
                            has_oracle = true;
                            oracle_obj = oracle_sol.objective;
                        }
                    } catch (const CapacityError&) {
                        // too many required nodes for enumeration; no reference
                    }
                }

                Solution sol;
                double time_ms = 0.0;
                if (run_anneal) {
                    auto t0 = Clock::now();
                    sol = solve_anneal(ins, cfg.anneal);
                    time_ms = ms_since(t0);
                } else {
                    sol = oracle_sol;
                    time_ms = oracle_ms;
                }
                if (cfg.time_budget_ms > 0.0 && time_ms > cfg.time_budget_ms)
                    sol.feasible = false;  // over budget counts as unsolved

                // a claimed-feasible solution must check out against every
                // requested formulation before its objective is reported
                bool validated = sol.feasible;
                std::vector<ModelSpec> models;
                for (Formulation f : cfg.formulations) {
                    models.push_back(build_model(ins, f));
                    if (validated) {
                        try {
                            Assignment asg =
                                route_to_assignment(ins, models.back(), sol);
                            validated =
                                check_assignment(models.back(), asg).feasible;
                        } catch (const std::invalid_argument&) {
                            validated = false;
                        }
                    }
                }

                for (std::size_t fi = 0; fi < cfg.formulations.size(); ++fi) {
                    RunRecord rec;
                    rec.V = V;
                    rec.seed = seed;
                    rec.arcs = ins.graph.num_arcs();
                    rec.required = static_cast<int>(ins.required.size());
                    rec.formulation = cfg.formulations[fi];
                    rec.variant = cfg.variant;
                    rec.afgr = red != 0;
                    rec.solver = measured;
                    rec.feasible = validated;
                    rec.objective = validated ? sol.objective : 0.0;
                    rec.time_ms = time_ms;
                    rec.vars_bin = models[fi].num_binary();
                    rec.vars_cont = models[fi].num_continuous();
                    rec.constraints =
                        static_cast<long long>(models[fi].constraints.size());
                    rec.var_red_pct = red ? red_pct : 0.0;
                    rec.has_oracle = has_oracle;
                    rec.oracle_objective = has_oracle ? oracle_obj : 0.0;
                    res.runs.push_back(std::move(rec));
                }
            }
        }
    }
    res.rows = aggregate_runs(res.runs);
    return res;
}

std::vector<BenchRow> aggregate_runs(const std::vector<RunRecord>& runs) {
    using Key = std::tuple<int, int, int, int>;  // V, formulation, variant, afgr
    std::map<Key, std::vector<const RunRecord*>> groups;
    for (const RunRecord& r : runs)
        groups[Key{r.V, static_cast<int>(r.formulation),
                   static_cast<int>(r.variant), r.afgr ? 1 : 0}]
            .push_back(&r);

    std::vector<BenchRow> rows;
    for (const auto& [key, recs] : groups) {
        BenchRow row;
        row.V = std::get<0>(key);
        row.formulation = static_cast<Formulation>(std::get<1>(key));
        row.variant = static_cast<Variant>(std::get<2>(key));
        row.afgr = std::get<3>(key) != 0;

        std::vector<double> arcs, req, bin, cont, cons, times, reds;
        std::vector<double> objs, oracle_pair_obj, oracle_pair_ref;
        int solved = 0;
        for (const RunRecord* r : recs) {
            arcs.push_back(r->arcs);
            req.push_back(r->required);
            bin.push_back(static_cast<double>(r->vars_bin));
            cont.push_back(static_cast<double>(r->vars_cont));
            cons.push_back(static_cast<double>(r->constraints));
            times.push_back(r->time_ms);
            reds.push_back(r->var_red_pct);
            if (r->feasible) {
                ++solved;
                objs.push_back(r->objective);
                if (r->has_oracle) {
                    oracle_pair_obj.push_back(r->objective);
                    oracle_pair_ref.push_back(r->oracle_objective);
                }
            }
        }
        row.arcs_avg = mean(arcs);
        row.required_avg = mean(req);
        row.vars_bin_avg = mean(bin);
        row.vars_cont_avg = mean(cont);
        row.constraints_avg = mean(cons);
        row.pct_solved =
            100.0 * static_cast<double>(solved) / static_cast<double>(recs.size());
        row.time_avg_ms = mean(times);
        row.time_std_ms = pop_std(times);
        if (!objs.empty()) {
            row.has_objective = true;
            row.of_avg = mean(objs);
            row.of_std = pop_std(objs);
        }
        if (!oracle_pair_obj.empty()) {
            double ref = mean(oracle_pair_ref);
            if (ref > 0.0) {
                row.has_gap = true;
                row.gap = (mean(oracle_pair_obj) - ref) / ref;
            }
        }
        if (row.afgr) {
            row.has_var_red = true;
            row.var_red_pct = mean(reds);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

const char* kBenchHeader =
    "V,arcs,required,formulation,variant,afgr,vars_bin,vars_cont,constraints,"
    "of_avg,of_std,gap,pct_solved,time_avg_ms,time_std_ms,var_red_pct";

}  // namespace

std::string bench_rows_to_csv(const std::vector<BenchRow>& rows) {
    std::string out = kBenchHeader;
    out += '\n';
    for (const BenchRow& r : rows) {
        out += std::to_string(r.V);
        out += ',' + format_sig17(r.arcs_avg);
        out += ',' + format_sig17(r.required_avg);
        out += ',' + to_string(r.formulation);
        out += ',' + to_string(r.variant);
        out += ',';
        out += r.afgr ? "on" : "off";
        out += ',' + format_sig17(r.vars_bin_avg);
        out += ',' + format_sig17(r.vars_cont_avg);
        out += ',' + format_sig17(r.constraints_avg);
        out += ',';
        if (r.has_objective) out += format_sig17(r.of_avg);
        out += ',';
        if (r.has_objective) out += format_sig17(r.of_std);
        out += ',';
        if (r.has_gap) out += format_sig17(r.gap);
        out += ',' + format_sig17(r.pct_solved);
        out += ',' + format_sig17(r.time_avg_ms);
        out += ',' + format_sig17(r.time_std_ms);
        out += ',';
        if (r.has_var_red) out += format_sig17(r.var_red_pct);
        out += '\n';
    }
    return out;
}

std::string run_records_to_csv(const std::vector<RunRecord>& runs) {
    std::string out =
        "V,seed,arcs,required,formulation,variant,afgr,solver,feasible,"
        "objective,time_ms,vars_bin,vars_cont,constraints,var_red_pct,"
        "oracle_objective";
    out += '\n';
    for (const RunRecord& r : runs) {
        out += std::to_string(r.V);
        out += ',' + std::to_string(r.seed);
        out += ',' + std::to_string(r.arcs);
        out += ',' + std::to_string(r.required);
        out += ',' + to_string(r.formulation);
        out += ',' + to_string(r.variant);
        out += ',';
        out += r.afgr ? "on" : "off";
        out += ',' + r.solver;
        out += ',';
        out += r.feasible ? '1' : '0';
        out += ',';
        if (r.feasible) out += format_sig17(r.objective);
        out += ',' + format_sig17(r.time_ms);
        out += ',' + std::to_string(r.vars_bin);
        out += ',' + std::to_string(r.vars_cont);
        out += ',' + std::to_string(r.constraints);
        out += ',' + format_sig17(r.var_red_pct);
        out += ',';
        if (r.has_oracle) out += format_sig17(r.oracle_objective);
        out += '\n';
    }
    return out;
}

void write_bench_csv(const std::vector<BenchRow>& rows, const std::string& path) {
    write_text(path, bench_rows_to_csv(rows));
}

void write_runs_csv(const std::vector<RunRecord>& runs, const std::string& path) {
    write_text(path, run_records_to_csv(runs));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

double parse_num(const std::string& cell, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bench csv: bad " + what + " value '" +
                                    cell + "'");
    }
}

}  // namespace

std::vector<BenchRow> bench_rows_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("bench csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kBenchHeader)
        throw std::invalid_argument("bench csv: unexpected header '" + line +
                                    "'");
    std::vector<BenchRow> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> c = split_csv_line(line);
        if (c.size() != 16)
            throw std::invalid_argument("bench csv: expected 16 cells, got " +
                                        std::to_string(c.size()));
        BenchRow r;
        r.V = static_cast<int>(parse_num(c[0], "V"));
        r.arcs_avg = parse_num(c[1], "arcs");
        r.required_avg = parse_num(c[2], "required");
        r.formulation = formulation_from_string(c[3]);
        r.variant = variant_from_string(c[4]);
        if (c[5] != "on" && c[5] != "off")
            throw std::invalid_argument("bench csv: bad afgr cell '" + c[5] + "'");
        r.afgr = c[5] == "on";
        r.vars_bin_avg = parse_num(c[6], "vars_bin");
        r.vars_cont_avg = parse_num(c[7], "vars_cont");
        r.constraints_avg = parse_num(c[8], "constraints");
        if (!c[9].empty()) {
            r.has_objective = true;
            r.of_avg = parse_num(c[9], "of_avg");
            r.of_std = c[10].empty() ? 0.0 : parse_num(c[10], "of_std");
        }
        if (!c[11].empty()) {
            r.has_gap = true;
            r.gap = parse_num(c[11], "gap");
        }
        r.pct_solved = parse_num(c[12], "pct_solved");
        r.time_avg_ms = parse_num(c[13], "time_avg_ms");
        r.time_std_ms = parse_num(c[14], "time_std_ms");
        if (!c[15].empty()) {
            r.has_var_red = true;
            r.var_red_pct = parse_num(c[15], "var_red_pct");
        }
        rows.push_back(r);
    }
    return rows;
}

bool emit_scaling_plot(const std::vector<BenchRow>& rows,
                       const std::string& csv_path,
                       const std::string& svg_path) {
    // mean of of_avg per (V, variant) across formulations and afgr states
    std::map<std::pair<int, std::string>, std::pair<double, int>> cells;
    for (const BenchRow& r : rows) {
        if (!r.has_objective) continue;
        auto& cell = cells[{r.V, to_string(r.variant)}];
        cell.first += r.of_avg;
        cell.second += 1;
    }

    std::string csv = "V,variant,of_avg\n";
    std::set<int> vs;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (const auto& [key, acc] : cells) {
        double of = acc.first / acc.second;
        csv += std::to_string(key.first) + ',' + key.second + ',' +
               format_sig17(of) + '\n';
        vs.insert(key.first);
        series[key.second].push_back({static_cast<double>(key.first), of});
    }
    write_text(csv_path, csv);
    if (vs.size() < 2) return false;
    write_text(svg_path, render_scaling_svg(series));
    return true;
}

}  // namespace stsp
