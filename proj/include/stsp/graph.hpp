#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace stsp {

using NodeId = int;
using ArcId = int;

struct Arc {
    ArcId id;
    NodeId from;
    NodeId to;
    double length;  // strictly positive and finite
};

/// Sparse directed graph with stable node ids and consecutively numbered
/// arcs.  Node 0 is the depot and must always be present with at least one
/// outgoing and one incoming arc.  Node ids need not be contiguous
/// (preprocessing may delete interior nodes), but arc ids always run
/// 0..m-1 and match their position in arcs().
class Graph {
public:
    Graph(std::vector<NodeId> nodes, std::vector<Arc> arcs);

    const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    int num_nodes() const noexcept { return static_cast<int>(nodes_.size()); }
    int num_arcs() const noexcept { return static_cast<int>(arcs_.size()); }

    bool has_node(NodeId v) const { return out_.count(v) != 0; }
    const Arc& arc(ArcId k) const;
    const std::vector<ArcId>& out_arcs(NodeId v) const;
    const std::vector<ArcId>& in_arcs(NodeId v) const;

    /// True when an arc (from, to) exists.
    bool has_arc(NodeId from, NodeId to) const;

private:
    std::vector<NodeId> nodes_;  // ascending
    std::vector<Arc> arcs_;      // ids equal positions
    std::map<NodeId, std::vector<ArcId>> out_;
    std::map<NodeId, std::vector<ArcId>> in_;
};

/// One row of a shortest-path tree.
struct PathNode {
    double dist = 0.0;
    std::optional<ArcId> pred;  // arc into this node on the canonical path
    bool reachable = false;
};

/// Single-source shortest paths (Dijkstra; lengths are nonnegative by the
/// Graph invariant).
///
/// Tie-break: the settling order is (distance, node id), and each node's
/// predecessor is re-derived afterwards as the incoming arc whose tail has
/// the smallest id among arcs that exactly realize the node's distance.
/// The canonical tree is therefore independent of arc numbering, which is
/// what keeps graph reduction idempotent.
///
/// `banned_interior`, when set, forbids that node as an intermediate hop:
/// a path may start at it (when it is the source) or end on it, but never
/// pass through it.  Throws std::invalid_argument when `source` is absent.
std::map<NodeId, PathNode> shortest_paths(
    const Graph& g, NodeId source,
    std::optional<NodeId> banned_interior = std::nullopt);

/// Arc sequence source -> target extracted from a shortest_paths tree.
/// Empty sequence for target == source; std::nullopt when unreachable.
std::optional<std::vector<ArcId>> tree_path(const Graph& g,
                                            const std::map<NodeId, PathNode>& tree,
                                            NodeId source, NodeId target);

/// Longest *simple*-path lengths from `source` to each node in `targets`,
/// found by exhaustive depth-first enumeration (a simple path never repeats
/// a node, so requesting the source itself yields no entry).  Unreachable
/// targets are absent from the result.  Throws CapacityError when the graph
/// has more than `node_cap` nodes - the search is exponential by design and
/// meant for generator-scale graphs only.
std::map<NodeId, double> longest_simple_path(const Graph& g, NodeId source,
                                             const std::vector<NodeId>& targets,
                                             int node_cap = 24);

/// Metric-closure cell: shortest distance plus its witness arc sequence.
struct ClosureEntry {
    double dist = 0.0;
    std::vector<ArcId> arcs;
    bool reachable = false;
};

/// All ordered pairs over `nodes_of_interest`; the diagonal is
/// (0, empty path, reachable).  Honors `banned_interior` like
/// shortest_paths.  Unreachable pairs are present with reachable = false.
std::map<std::pair<NodeId, NodeId>, ClosureEntry> metric_closure(
    const Graph& g, const std::vector<NodeId>& nodes_of_interest,
    std::optional<NodeId> banned_interior = std::nullopt);

}  // namespace stsp
