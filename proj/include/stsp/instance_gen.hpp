#pragma once

#include <cstdint>
#include <map>

#include "stsp/instance.hpp"

namespace stsp {

/// Evenly spaced circle layout: node i sits at angle 2*pi*i/n on a circle
/// of the given radius, node 0 (the depot) at angle 0.  Throws
/// std::invalid_argument for n < 3 or a non-positive radius.
std::map<NodeId, Point> generate_layout(int n, double radius);

/// Greedy geometric edge selection plus connectivity repair.
///
/// The depot is first anchored to its two nearest neighbors (segments
/// obeying the same geometric rules as everything below; candidate
/// segments never touch the depot, and without anchors the greedy phase
/// closes a ring that walls the depot off on every circle layout).
/// Candidate segments then connect non-depot node pairs only, are visited
/// in ascending (length, min id, max id) order, and are accepted when
/// they (a) intersect no previously accepted segment anywhere except a
/// shared endpoint and (b) meet every accepted segment sharing an
/// endpoint at an angle of at least 60 degrees.  Accepted segments become
/// symmetric arc pairs.  Repair then wires any in/out-degree-0 node and
/// finally forces strong connectivity, adding single directed arcs toward
/// the nearest admissible neighbor under the same geometric rules; no
/// phase draws randomness, so the topology depends only on the
/// coordinates.  Throws GenerationFailure (carrying `seed`) when no
/// admissible anchor or repair arc exists; callers retry with seed + 1.
Graph select_edges(const std::map<NodeId, Point>& coords, std::uint64_t seed);

/// Samples the required set and all node parameters onto a finished graph.
///
/// Derivations: l_min/l_max are the shortest and longest simple-path
/// distances from the depot; the window blends are 0.7/0.3 and 0.3/0.7
/// mixes of the two; a_i = blend + eps with eps uniform in (0, blend/2);
/// b_i = a_i + w_i with w_i uniform between the two blends; s_i integer in
/// [5,10]; demands are pickups in [10,20] for ceil(|V_r|/2) required nodes
/// and deliveries in [-5,-1] for the rest (all deliveries under
/// delivery_only); Q = sum|d| + theta with theta uniform in
/// (min|d|, max|d|); M = max b + max s + max arc length.
Instance assign_parameters(const Graph& graph, const std::map<NodeId, Point>& coords,
                           double required_fraction, Variant variant, std::uint64_t seed,
                           double radius);

/// layout + select_edges + assign_parameters for one seed.
Instance generate_instance(int n, double radius, double required_fraction, Variant variant,
                           std::uint64_t seed);

/// Retries generate_instance with seed+1, seed+2, ... when a seed fails
/// the geometric rules.  Rethrows the last GenerationFailure when
/// `max_attempts` seeds all fail.
Instance generate_instance_with_retries(int n, double radius, double required_fraction,
                                        Variant variant, std::uint64_t seed,
                                        int max_attempts = 64);

}  // namespace stsp
