#pragma once

#include <utility>
#include <vector>

#include "stsp/instance.hpp"

namespace stsp {

/// What a reduction pass did, plus the variable-count savings it implies
/// for the two time-indexed formulations (identical formulas, so the two
/// estimates coincide; both are kept because reports track them per
/// formulation).  Reductions are fractions in [0, 1] of the *total*
/// variable count |A|^2 + |V||A| + 2|V|(|A|+1); an untouched instance
/// reports exactly 0.
struct ReductionReport {
    int nodes_before = 0, nodes_after = 0;
    int arcs_before = 0, arcs_after = 0;
    std::vector<NodeId> removed_nodes;
    std::vector<ArcId> removed_arcs;  // original arc ids
    double var_reduction_abf = 0.0;
    double var_reduction_nbf = 0.0;
};

/// Arc-filtering graph reduction.
///
/// Keeps exactly the arcs lying on one canonical shortest path per ordered
/// pair of relevant nodes (depot plus required set) — both the
/// unrestricted paths and, between required pairs, the depot-free paths
/// that mid-tour legs must use — drops every other arc, removes
/// non-relevant nodes left without incident arcs, and reindexes the
/// surviving arcs.  Parameter maps are restricted to the survivors; Q is
/// untouched and M only changes through its max-arc-length term.
/// Distances between relevant nodes are preserved exactly, in both leg
/// flavors (bit-for-bit: every kept path realizes the original Dijkstra
/// distance, and removing arcs can only eliminate non-witness paths), so
/// optimal route costs survive the reduction unchanged.
std::pair<Instance, ReductionReport> reduce(const Instance& ins);

}  // namespace stsp
