#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stsp/graph.hpp"

namespace stsp {

/// Problem flavors.  `full` keeps time windows and mixed pickup/delivery
/// demands; `no_time_windows` drops the window constraints (demands stay
/// mixed); `delivery_only` makes every required demand negative and starts
/// the vehicle fully loaded.
enum class Variant { full, no_time_windows, delivery_only };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// A complete routing instance: sparse directed graph, node coordinates,
/// required-service set, service windows [a,b], service durations s,
/// demands d, vehicle capacity Q, and the big-M constant used by the
/// formulations (max window end + max service time + max arc length).
struct Instance {
    // generation metadata (the meta block of the JSON form)
    std::uint64_t seed = 0;
    int n = 0;
    double radius = 0.0;
    double fraction = 0.0;
    Variant variant = Variant::full;

    Graph graph;
    std::map<NodeId, Point> coords;
    std::vector<NodeId> required;         // ascending; never contains the depot
    std::map<NodeId, double> a, b, s, d;  // keyed by every node id
    double Q = 0.0;
    double M = 0.0;

    explicit Instance(Graph g) : graph(std::move(g)) {}

    bool is_required(NodeId v) const;
    double sum_required_demand() const;

    /// Structural sanity: required set nonempty/sorted/depot-free and a
    /// subset of the nodes, every node carrying coordinates and parameters,
    /// non-required rows at their fixed defaults (a=0, b=100000, s=0, d=0),
    /// required windows strictly ordered, Q and M positive, total absolute
    /// demand within Q.  Throws std::invalid_argument with the first
    /// offense.
    void validate() const;
};

/// Serializes with fixed key order and 17-significant-digit numbers, so
/// equal instances always produce byte-identical text.
std::string instance_to_json(const Instance& ins);
void write_instance(const Instance& ins, const std::string& path);

/// Parses and validates.  Throws IoError on unreadable/malformed input and
/// std::invalid_argument on schema or invariant violations.
Instance instance_from_json(const std::string& text);
Instance read_instance(const std::string& path);

/// Shared number formatting: shortest form carrying 17 significant digits
/// (printf %.17g), used by every normative writer in the toolkit.
std::string format_sig17(double v);

}  // namespace stsp
