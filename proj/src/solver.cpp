#include "stsp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stsp/errors.hpp"
#include "stsp/model_builder.hpp"
#include "stsp/rng.hpp"

namespace stsp {

namespace detail {

LegTable::LegTable(const Instance& ins) {
    std::vector<NodeId> relevant;
    relevant.push_back(0);
    relevant.insert(relevant.end(), ins.required.begin(), ins.required.end());
    depot_legs_ = metric_closure(ins.graph, relevant);
    mid_legs_ = metric_closure(ins.graph, ins.required, 0);
}

const ClosureEntry& LegTable::leg(NodeId from, NodeId to) const {
    const auto& table = (from == 0 || to == 0) ? depot_legs_ : mid_legs_;
    auto it = table.find({from, to});
    if (it == table.end())
        throw std::invalid_argument("no leg " + std::to_string(from) + "->" +
                                    std::to_string(to));
    return it->second;
}

}  // namespace detail

namespace {

constexpr double kInfObj = std::numeric_limits<double>::infinity();

Solution reject(std::vector<NodeId> order, double violation) {
    Solution s;
    s.feasible = false;
    s.objective = kInfObj;
    s.violation = violation;
    s.order = std::move(order);
    s.evaluations = 1;
    return s;
}

}  // namespace

Solution schedule_route(const Instance& ins, const detail::LegTable& legs,
                        const std::vector<NodeId>& order, bool strict) {
    {
        std::vector<NodeId> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != ins.required)
            throw std::invalid_argument(
                "order is not a permutation of the required set");
    }
    const Graph& g = ins.graph;
    const bool windows = ins.variant != Variant::no_time_windows;
    const int horizon = g.num_arcs();

    Solution s;
    s.order = order;
    s.evaluations = 1;

    double clock = 0.0;
    double travel = 0.0;
    double avail = ins.variant == Variant::delivery_only ? 0.0 : ins.Q;
    NodeId at = 0;

    auto take_leg = [&](NodeId to) -> bool {
        const ClosureEntry& e = legs.leg(at, to);
        if (!e.reachable) return false;
        for (ArcId k : e.arcs) {
            double len = g.arc(k).length;
            clock += len;
            travel += len;
            s.walk.push_back(k);
        }
        s.leg_ends.push_back(static_cast<int>(s.walk.size()));
        at = to;
        return true;
    };

    for (NodeId node : order) {
        if (!take_leg(node)) return reject(order, kInfObj);
        double arrival = clock;
        double start = arrival;
        if (windows) {
            start = std::max(arrival, ins.a.at(node));
            double late = start - ins.b.at(node);
            if (late > 0.0) {
                if (strict) return reject(order, late);
                s.violation += late;
            }
        }
        clock = start + ins.s.at(node);
        avail -= ins.d.at(node);
        double out_of_range = std::max(0.0, -avail) + std::max(0.0, avail - ins.Q);
        if (out_of_range > 0.0) {
            if (strict) return reject(order, out_of_range);
            s.violation += out_of_range;
        }
        s.stops.push_back(ScheduleStop{node, arrival, start, clock, avail});
    }
    if (!take_leg(0)) return reject(order, kInfObj);

    double overrun =
        static_cast<double>(static_cast<int>(s.walk.size()) - horizon);
    if (overrun > 0.0) {
        if (strict) return reject(order, overrun);
        s.violation += overrun;
    }

    s.objective = travel;
    s.return_time = clock;
    s.final_load = avail;
    s.feasible = s.violation == 0.0;
    return s;
}

Solution schedule_route(const Instance& ins, const std::vector<NodeId>& order,
                        bool strict) {
    detail::LegTable legs(ins);
    return schedule_route(ins, legs, order, strict);
}

Solution solve_exact(const Instance& ins) {
    if (ins.required.size() > 9)
        throw CapacityError("exact solver handles at most 9 required nodes, got " +
                            std::to_string(ins.required.size()));
    detail::LegTable legs(ins);
    std::vector<NodeId> order = ins.required;  // ascending = first permutation
    Solution best;
    best.feasible = false;
    best.objective = kInfObj;
    long long evals = 0;
    do {
        Solution cand = schedule_route(ins, legs, order, true);
        ++evals;
        if (cand.feasible && cand.objective < best.objective) best = cand;
    } while (std::next_permutation(order.begin(), order.end()));
    best.evaluations = evals;
    return best;
}

namespace {

std::vector<NodeId> greedy_order(const Instance& ins,
                                 const detail::LegTable& legs) {
    const bool windows = ins.variant != Variant::no_time_windows;
    std::vector<NodeId> remaining = ins.required;
    std::vector<NodeId> order;
    NodeId at = 0;
    double clock = 0.0;
    while (!remaining.empty()) {
        int pick = -1;
        // nearest next stop whose window is still open on arrival; failing
        // that, nearest reachable; failing that, smallest id
        for (int pass = 0; pass < 2 && pick < 0; ++pass) {
            double best_dist = kInfObj;
            for (std::size_t i = 0; i < remaining.size(); ++i) {
                const ClosureEntry& e = legs.leg(at, remaining[i]);
                if (!e.reachable) continue;
                if (pass == 0 && windows &&
                    clock + e.dist > ins.b.at(remaining[i]))
                    continue;
                if (e.dist < best_dist) {
                    best_dist = e.dist;
                    pick = static_cast<int>(i);
                }
            }
        }
        if (pick < 0) pick = 0;
        NodeId node = remaining[pick];
        const ClosureEntry& e = legs.leg(at, node);
        if (e.reachable) {
            clock += e.dist;
            if (windows) clock = std::max(clock, ins.a.at(node));
            clock += ins.s.at(node);
        }
        at = node;
        order.push_back(node);
        remaining.erase(remaining.begin() + pick);
    }
    return order;
}

}  // namespace

Solution solve_anneal(const Instance& ins, const AnnealParams& p) {
    detail::LegTable legs(ins);
    const int n = static_cast<int>(ins.required.size());
    long long evals = 0;

    auto energy_of = [&](const std::vector<NodeId>& order) {
        Solution s = schedule_route(ins, legs, order, false);
        ++evals;
        if (!std::isfinite(s.objective)) return kInfObj;
        return s.objective + p.penalty * s.violation;
    };

    std::vector<NodeId> best_order = greedy_order(ins, legs);
    double best_e = energy_of(best_order);
    double t0 = p.t0 > 0.0 ? p.t0
                           : (std::isfinite(best_e) && best_e > 1.0 ? best_e : 1.0);

    for (int r = 0; r < p.restarts; ++r) {
        SplitMix64 rng(p.seed + static_cast<std::uint64_t>(r));
        std::vector<NodeId> cur;
        if (r == 0) {
            cur = best_order;
        } else {
            cur = ins.required;
            rng.shuffle(cur);
        }
        double cur_e = energy_of(cur);
        if (cur_e < best_e) {
            best_e = cur_e;
            best_order = cur;
        }
        if (n < 2) continue;

        double temp = t0;
        for (long long it = 0; it < p.iterations; ++it) {
            std::vector<NodeId> cand = cur;
            switch (rng.next_int(0, 3)) {
                case 0: {
                    int i = static_cast<int>(rng.next_int(0, n - 2));
                    std::swap(cand[i], cand[i + 1]);
                    break;
                }
                case 1: {
                    int i = static_cast<int>(rng.next_int(0, n - 1));
                    int j = static_cast<int>(rng.next_int(0, n - 1));
                    std::swap(cand[i], cand[j]);
                    break;
                }
                case 2: {
                    int i = static_cast<int>(rng.next_int(0, n - 1));
                    int j = static_cast<int>(rng.next_int(0, n - 1));
                    NodeId v = cand[static_cast<std::size_t>(i)];
                    cand.erase(cand.begin() + i);
                    cand.insert(cand.begin() + j, v);
                    break;
                }
                default: {
                    int i = static_cast<int>(rng.next_int(0, n - 1));
                    int j = static_cast<int>(rng.next_int(0, n - 1));
                    if (i > j) std::swap(i, j);
                    std::reverse(cand.begin() + i, cand.begin() + j + 1);
                    break;
                }
            }
            double cand_e = energy_of(cand);
            bool accept = cand_e <= cur_e;
            if (!accept && std::isfinite(cand_e))
                accept = rng.next_unit() < std::exp(-(cand_e - cur_e) / temp);
            if (accept) {
                cur = std::move(cand);
                cur_e = cand_e;
                if (cur_e < best_e) {
                    best_e = cur_e;
                    best_order = cur;
                }
            }
            temp = std::max(temp * p.cooling, 1e-12);
        }
    }

    Solution out = schedule_route(ins, legs, best_order, false);
    out.evaluations = evals + 1;
    return out;
}

std::string solution_to_json(const Solution& sol, const std::string& solver_tag,
                             double elapsed_ms) {
    auto num = [](double v) {
        return std::isfinite(v) ? format_sig17(v) : std::string("null");
    };
    std::string out = "{";
    out += "\"feasible\":" + std::string(sol.feasible ? "true" : "false");
    out += ",\"objective\":" + num(sol.objective);
    out += ",\"violation\":" + num(sol.violation);
    out += ",\"solver\":\"" + solver_tag + "\"";
    out += ",\"elapsed_ms\":" + format_sig17(elapsed_ms);
    out += ",\"order\":[";
    for (std::size_t i = 0; i < sol.order.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(sol.order[i]);
    }
    out += "],\"walk\":[";
    for (std::size_t i = 0; i < sol.walk.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(sol.walk[i]);
    }
    out += "],\"schedule\":[";
    for (std::size_t i = 0; i < sol.stops.size(); ++i) {
        const ScheduleStop& st = sol.stops[i];
        if (i) out += ',';
        out += "{\"node\":" + std::to_string(st.node);
        out += ",\"arrival\":" + format_sig17(st.arrival);
        out += ",\"service_start\":" + format_sig17(st.start);
        out += ",\"departure\":" + format_sig17(st.departure);
        out += ",\"load_after\":" + format_sig17(st.load) + "}";
    }
    out += "],\"return_time\":" + format_sig17(sol.return_time);
    out += ",\"final_load\":" + format_sig17(sol.final_load);
    out += ",\"evaluations\":" + std::to_string(sol.evaluations);
    out += "}";
    return out;
}

Assignment route_to_assignment(const Instance& ins, const ModelSpec& model,
                               const Solution& sol) {
    if (!sol.feasible)
        throw std::invalid_argument(
            "route_to_assignment needs a feasible solution");
    const Graph& g = ins.graph;
    const int horizon = g.num_arcs();
    const int len = static_cast<int>(sol.walk.size());
    if (len == 0 || len > horizon)
        throw std::invalid_argument("walk does not fit the model horizon");
    if (sol.stops.size() != sol.order.size() ||
        sol.leg_ends.size() != sol.order.size() + 1)
        throw std::invalid_argument("solution is missing its leg structure");

    NodeId at = 0;
    for (ArcId k : sol.walk) {
        const Arc& a = g.arc(k);
        if (a.from != at)
            throw std::invalid_argument("walk arcs do not chain");
        at = a.to;
    }
    if (at != 0)
        throw std::invalid_argument("walk does not return to the depot");

    Assignment asg;
    for (const VarDef& v : model.variables) asg.emplace(v.name, 0.0);
    auto set = [&](const std::string& name, double value) {
        auto it = asg.find(name);
        if (it == asg.end())
            throw std::invalid_argument("model lacks variable " + name);
        it->second = value;
    };

    double clock = 0.0;
    double avail = ins.variant == Variant::delivery_only ? 0.0 : ins.Q;
    set(var_q(0, 0), avail);  // tau_0_0 stays 0: departure at the epoch

    std::size_t next_stop = 0;
    at = 0;
    for (int t = 1; t <= len; ++t) {
        const Arc& a = g.arc(sol.walk[static_cast<std::size_t>(t - 1)]);
        set(var_y(g, model.formulation, a.id, t), 1.0);
        clock += a.length;
        at = a.to;
        if (next_stop < sol.stops.size() && sol.leg_ends[next_stop] == t) {
            const ScheduleStop& st = sol.stops[next_stop];
            if (st.node != at)
                throw std::invalid_argument("stop list disagrees with walk");
            set(var_x(at, t), 1.0);
            clock = st.departure;
            avail = st.load;
            ++next_stop;
        }
        set(var_tau(at, t), clock);
        set(var_q(at, t), avail);
    }
    return asg;
}

}  // namespace stsp
