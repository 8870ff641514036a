#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "stsp/graph.hpp"
#include "stsp/instance.hpp"
#include "stsp/model.hpp"

namespace stsp {

namespace detail {

/// Precomputed point-to-point legs between the depot and the required
/// nodes.  Legs that start or end at the depot use unrestricted shortest
/// paths; legs between two required nodes ban the depot as an interior
/// node, because the models allow exactly one depot departure, so a route
/// may never pass through node 0 mid-tour.
struct LegTable {
    explicit LegTable(const Instance& ins);
    const ClosureEntry& leg(NodeId from, NodeId to) const;

  private:
    std::map<std::pair<NodeId, NodeId>, ClosureEntry> depot_legs_;
    std::map<std::pair<NodeId, NodeId>, ClosureEntry> mid_legs_;
};

}  // namespace detail

struct ScheduleStop {
    NodeId node = -1;
    double arrival = 0.0;    // clock on reaching the node
    double start = 0.0;      // service start (>= arrival when waiting)
    double departure = 0.0;  // start + service time
    double load = 0.0;       // capacity still available afterwards
};

struct Solution {
    bool feasible = false;
    double objective = 0.0;  // total travel length of the walk
    double violation = 0.0;  // relaxed evaluation: summed overshoot
    std::vector<NodeId> order;      // required nodes in service order
    std::vector<ArcId> walk;        // full depot-to-depot arc sequence
    std::vector<int> leg_ends;      // 1-based walk step ending each leg
    std::vector<ScheduleStop> stops;
    double return_time = 0.0;  // clock on the final depot arrival
    double final_load = 0.0;   // available capacity on return
    long long evaluations = 0;
};

/// Evaluates one service order with earliest-start scheduling: legs come
/// from the table above, the vehicle waits (at no cost) when it arrives
/// before a window opens, service takes s_i, and loads move by d_i.
///
/// strict=true rejects at the first violated window, load bound, or
/// horizon overrun (walk longer than |A| steps) and returns an infeasible
/// solution with infinite objective.  strict=false always finishes the
/// walk and accumulates every overshoot into `violation` instead.  Orders
/// that are not a permutation of the required set throw
/// std::invalid_argument; an unreachable leg yields infeasible in both
/// modes.
Solution schedule_route(const Instance& ins, const detail::LegTable& legs,
                        const std::vector<NodeId>& order, bool strict);
Solution schedule_route(const Instance& ins, const std::vector<NodeId>& order,
                        bool strict = true);

/// Exhaustive search over all service orders (lexicographic, first best
/// kept on ties).  Throws CapacityError beyond 9 required nodes.
Solution solve_exact(const Instance& ins);

struct AnnealParams {
    long long iterations = 20000;  // per restart
    int restarts = 8;
    double cooling = 0.999;
    double t0 = 0.0;  // starting temperature; 0 picks the greedy energy
    double penalty = 1000.0;  // weight of violations in the energy
    std::uint64_t seed = 1;
};

/// Simulated annealing over service orders.  Energy is travel length plus
/// penalty-weighted violations of the relaxed schedule; moves are adjacent
/// swap, arbitrary swap, single-node reinsertion, and segment reversal.
/// Each restart runs an independent deterministic stream (seed + restart
/// index), so results are reproducible for fixed parameters.  The returned
/// solution is the best order re-evaluated strictly; `feasible` is false
/// if even the best order violates a constraint.
Solution solve_anneal(const Instance& ins, const AnnealParams& p = {});

/// Serializes a solution for the CLI: keys walk, schedule (node, arrival,
/// service_start, departure, load_after per stop), objective, feasible,
/// violation, order, solver, elapsed_ms.  Deterministic for fixed inputs.
std::string solution_to_json(const Solution& sol, const std::string& solver_tag,
                             double elapsed_ms);

/// Expands a feasible solution into a full variable assignment for a
/// model built from the same instance: traversal binaries along the walk,
/// service binaries at each stop's arrival step, departure clocks and
/// remaining capacity at every visited step, zeros elsewhere.  Throws
/// std::invalid_argument if the solution is infeasible, the walk is not a
/// closed depot walk, or it needs more steps than the model horizon.
Assignment route_to_assignment(const Instance& ins, const ModelSpec& model,
                               const Solution& sol);

}  // namespace stsp
