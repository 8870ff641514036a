#pragma once

#include "stsp/instance.hpp"
#include "stsp/model.hpp"

namespace stsp {

struct VarCounts {
    long long binary = 0;
    long long continuous = 0;
    long long total() const { return binary + continuous; }
};

/// Closed-form size of either time-indexed model for a graph with
/// `num_nodes` nodes and `num_arcs` arcs: num_arcs^2 + num_nodes*num_arcs
/// binaries (arc-step plus node-step choices) and
/// 2*num_nodes*(num_arcs + 1) continuous variables (departure time and
/// remaining capacity per node over steps 0..num_arcs).  Both builders
/// produce exactly these counts.
VarCounts predicted_var_counts(int num_nodes, int num_arcs);

/// Materializes the time-indexed MILP for `ins`.
///
/// The planning horizon is T = |A| steps.  Shared variables: x_i_t
/// (service of node i happens at step t, t in 1..T), tau_i_t (departure
/// time, t in 0..T, nonnegative), q_i_t (capacity still available after
/// servicing, t in 0..T, in [0, Q]).  The arc-based model indexes its
/// traversal binaries by arc id (y_k_t); the node-based one by endpoint
/// pair (y_i_j_t).  Besides that indexing, the two differ only in the
/// step-1 restriction: arc-based pins every non-depot arc variable at
/// step 1 to zero (one row per arc), node-based pins each non-depot
/// node's outgoing step-1 sum to zero (one row per node).
///
/// Variant behavior: no_time_windows omits the window_lower/window_upper
/// families; delivery_only starts the vehicle with zero free capacity
/// (initial_load_depot rhs 0) and requires the returned free capacity to
/// equal the total delivered amount (capacity_total rhs -sum of demands).
ModelSpec build_model(const Instance& ins, Formulation f);

ModelSpec build_abf(const Instance& ins);
ModelSpec build_nbf(const Instance& ins);

/// Canonical variable names shared by the builders and the route mapper.
std::string var_x(NodeId i, int t);
std::string var_tau(NodeId i, int t);
std::string var_q(NodeId i, int t);
std::string var_y(const Graph& g, Formulation f, ArcId k, int t);

}  // namespace stsp
