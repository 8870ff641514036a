#include "stsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "stsp/errors.hpp"

namespace stsp {

Graph::Graph(std::vector<NodeId> nodes, std::vector<Arc> arcs)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
    std::sort(nodes_.begin(), nodes_.end());
    if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
        throw std::invalid_argument("graph: duplicate node id");
    for (NodeId v : nodes_) {
        out_[v];
        in_[v];
    }
    if (!has_node(0)) throw std::invalid_argument("graph: depot (node 0) missing");

    std::set<std::pair<NodeId, NodeId>> seen;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const Arc& k = arcs_[i];
        if (k.id != static_cast<ArcId>(i))
            throw std::invalid_argument("graph: arc ids must run 0..m-1 in order (arc " +
                                        std::to_string(i) + " has id " + std::to_string(k.id) + ")");
        if (!has_node(k.from) || !has_node(k.to))
            throw std::invalid_argument("graph: arc " + std::to_string(k.id) +
                                        " references an unknown node");
        if (!(k.length > 0.0) || !std::isfinite(k.length))
            throw std::invalid_argument("graph: arc " + std::to_string(k.id) +
                                        " must have a positive finite length");
        if (!seen.insert({k.from, k.to}).second)
            throw std::invalid_argument("graph: duplicate arc (" + std::to_string(k.from) + "," +
                                        std::to_string(k.to) + ")");
        out_[k.from].push_back(k.id);
        in_[k.to].push_back(k.id);
    }
    if (out_.at(0).empty() || in_.at(0).empty())
        throw std::invalid_argument("graph: depot needs at least one outgoing and one incoming arc");
}

const Arc& Graph::arc(ArcId k) const {
    if (k < 0 || k >= num_arcs()) throw std::invalid_argument("graph: arc id out of range");
    return arcs_[static_cast<std::size_t>(k)];
}

const std::vector<ArcId>& Graph::out_arcs(NodeId v) const {
    auto it = out_.find(v);
    if (it == out_.end()) throw std::invalid_argument("graph: unknown node " + std::to_string(v));
    return it->second;
}

const std::vector<ArcId>& Graph::in_arcs(NodeId v) const {
    auto it = in_.find(v);
    if (it == in_.end()) throw std::invalid_argument("graph: unknown node " + std::to_string(v));
    return it->second;
}

bool Graph::has_arc(NodeId from, NodeId to) const {
    auto it = out_.find(from);
    if (it == out_.end()) return false;
    for (ArcId k : it->second)
        if (arcs_[static_cast<std::size_t>(k)].to == to) return true;
    return false;
}

namespace {

struct PQEntry {
    double dist;
    NodeId node;
    bool operator>(const PQEntry& o) const {
        if (dist != o.dist) return dist > o.dist;
        return node > o.node;  // lower id settles first on distance ties
    }
};

}  // namespace

std::map<NodeId, PathNode> shortest_paths(const Graph& g, NodeId source,
                                          std::optional<NodeId> banned_interior) {
    if (!g.has_node(source)) throw std::invalid_argument("shortest_paths: unknown source node");

    std::map<NodeId, PathNode> result;
    for (NodeId v : g.nodes()) result[v] = PathNode{};
    result[source] = PathNode{0.0, std::nullopt, true};

    std::priority_queue<PQEntry, std::vector<PQEntry>, std::greater<PQEntry>> heap;
    heap.push({0.0, source});
    std::set<NodeId> settled;

    auto relaxes = [&](NodeId v) {
        // A banned interior node may start a path (as source) but never
        // continue one.
        return v == source || !banned_interior || v != *banned_interior;
    };

    while (!heap.empty()) {
        auto [dist, u] = heap.top();
        heap.pop();
        if (settled.count(u)) continue;
        settled.insert(u);
        if (!relaxes(u)) continue;
        for (ArcId k : g.out_arcs(u)) {
            const Arc& a = g.arc(k);
            const double cand = dist + a.length;
            PathNode& row = result[a.to];
            if (!row.reachable || cand < row.dist) {
                row.dist = cand;
                row.reachable = true;
                heap.push({cand, a.to});
            }
        }
    }

    // Canonical predecessors: among the incoming arcs that realize the
    // distance exactly, take the one with the smallest tail id.  This makes
    // the tree independent of arc numbering.
    for (NodeId v : g.nodes()) {
        PathNode& row = result[v];
        if (!row.reachable || v == source) continue;
        std::optional<ArcId> best;
        for (ArcId k : g.in_arcs(v)) {
            const Arc& a = g.arc(k);
            const PathNode& tail = result[a.from];
            if (!tail.reachable || !relaxes(a.from)) continue;
            if (tail.dist + a.length == row.dist) {
                if (!best || a.from < g.arc(*best).from) best = k;
            }
        }
        row.pred = best;  // always set for reachable non-source nodes
    }
    return result;
}

std::optional<std::vector<ArcId>> tree_path(const Graph& g,
                                            const std::map<NodeId, PathNode>& tree,
                                            NodeId source, NodeId target) {
    auto it = tree.find(target);
    if (it == tree.end() || !it->second.reachable) return std::nullopt;
    std::vector<ArcId> path;
    NodeId v = target;
    while (v != source) {
        const PathNode& row = tree.at(v);
        if (!row.pred) return std::nullopt;  // detached row: tree from another source
        path.push_back(*row.pred);
        v = g.arc(*row.pred).from;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

void lsp_dfs(const Graph& g, const std::map<NodeId, int>& index, NodeId u, std::uint32_t visited,
             double len, std::map<NodeId, double>& best) {
    for (ArcId k : g.out_arcs(u)) {
        const Arc& a = g.arc(k);
        const std::uint32_t bit = 1u << index.at(a.to);
        if (visited & bit) continue;
        const double next = len + a.length;
        auto it = best.find(a.to);
        if (it == best.end() || next > it->second) best[a.to] = next;
        lsp_dfs(g, index, a.to, visited | bit, next, best);
    }
}

}  // namespace

std::map<NodeId, double> longest_simple_path(const Graph& g, NodeId source,
                                             const std::vector<NodeId>& targets, int node_cap) {
    if (!g.has_node(source)) throw std::invalid_argument("longest_simple_path: unknown source");
    for (NodeId t : targets)
        if (!g.has_node(t)) throw std::invalid_argument("longest_simple_path: unknown target");
    if (g.num_nodes() > node_cap)
        throw CapacityError("longest_simple_path: graph has " + std::to_string(g.num_nodes()) +
                            " nodes, cap is " + std::to_string(node_cap));

    std::map<NodeId, int> index;
    for (NodeId v : g.nodes()) index[v] = static_cast<int>(index.size());

    std::map<NodeId, double> best;
    lsp_dfs(g, index, source, 1u << index.at(source), 0.0, best);

    std::map<NodeId, double> out;
    for (NodeId t : targets) {
        auto it = best.find(t);
        if (it != best.end()) out[t] = it->second;
    }
    return out;
}

std::map<std::pair<NodeId, NodeId>, ClosureEntry> metric_closure(
    const Graph& g, const std::vector<NodeId>& nodes_of_interest,
    std::optional<NodeId> banned_interior) {
    for (NodeId v : nodes_of_interest)
        if (!g.has_node(v)) throw std::invalid_argument("metric_closure: unknown node");

    std::map<std::pair<NodeId, NodeId>, ClosureEntry> cells;
    for (NodeId u : nodes_of_interest) {
        auto tree = shortest_paths(g, u, banned_interior);
        for (NodeId v : nodes_of_interest) {
            ClosureEntry cell;
            if (u == v) {
                cell = ClosureEntry{0.0, {}, true};
            } else if (tree.at(v).reachable) {
                cell.dist = tree.at(v).dist;
                cell.arcs = *tree_path(g, tree, u, v);
                cell.reachable = true;
            }
            cells[{u, v}] = cell;
        }
    }
    return cells;
}

}  // namespace stsp
