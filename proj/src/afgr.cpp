#include "stsp/afgr.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "stsp/graph.hpp"

namespace stsp {

namespace {

// total variable count of the time-indexed models for a graph with n nodes
// and m arcs: m*m + n*m binaries plus 2*n*(m+1) continuous.
double total_vars(int n, int m) {
    return static_cast<double>(m) * m + static_cast<double>(n) * m +
           2.0 * n * (m + 1.0);
}

}  // namespace

std::pair<Instance, ReductionReport> reduce(const Instance& ins) {
    const Graph& g = ins.graph;

    std::vector<NodeId> relevant;
    relevant.push_back(0);
    relevant.insert(relevant.end(), ins.required.begin(), ins.required.end());

    // Mark every arc on the canonical shortest path of each ordered
    // relevant pair.  The tie-break inside shortest_paths() makes the
    // marked set independent of arc numbering, which in turn makes this
    // whole pass idempotent.
    std::set<ArcId> marked;
    for (NodeId r : relevant) {
        auto tree = shortest_paths(g, r);
        for (NodeId t : relevant) {
            if (t == r) continue;
            if (!tree.at(t).reachable) {
                throw std::invalid_argument(
                    "reduce: node " + std::to_string(t) +
                    " unreachable from " + std::to_string(r));
            }
            auto path = tree_path(g, tree, r, t);
            for (ArcId k : *path) marked.insert(k);
        }
    }

    // Routes may not revisit the depot mid-tour, so legs between two
    // required nodes travel on depot-free shortest paths.  Keep those
    // canonical paths too; otherwise a reduction could lengthen (or sever)
    // exactly the legs a solver is allowed to use.  Pairs with no
    // depot-free connection are left alone: they are just as unreachable
    // after the reduction as before it.
    for (NodeId r : ins.required) {
        auto tree = shortest_paths(g, r, /*banned_interior=*/0);
        for (NodeId t : ins.required) {
            if (t == r || !tree.at(t).reachable) continue;
            auto path = tree_path(g, tree, r, t);
            for (ArcId k : *path) marked.insert(k);
        }
    }

    std::set<NodeId> kept_nodes(relevant.begin(), relevant.end());
    for (ArcId k : marked) {
        kept_nodes.insert(g.arc(k).from);
        kept_nodes.insert(g.arc(k).to);
    }

    ReductionReport rep;
    rep.nodes_before = static_cast<int>(g.nodes().size());
    rep.arcs_before = static_cast<int>(g.arcs().size());
    for (NodeId v : g.nodes())
        if (!kept_nodes.count(v)) rep.removed_nodes.push_back(v);
    for (const Arc& a : g.arcs())
        if (!marked.count(a.id)) rep.removed_arcs.push_back(a.id);

    std::vector<NodeId> new_nodes(kept_nodes.begin(), kept_nodes.end());
    std::vector<Arc> new_arcs;
    for (ArcId k : marked) {
        const Arc& a = g.arc(k);
        new_arcs.push_back(Arc{static_cast<ArcId>(new_arcs.size()), a.from,
                               a.to, a.length});
    }

    Instance out{Graph(new_nodes, new_arcs)};
    out.seed = ins.seed;
    out.n = static_cast<int>(new_nodes.size());
    out.radius = ins.radius;
    out.fraction = ins.fraction;
    out.variant = ins.variant;
    out.required = ins.required;
    for (NodeId v : new_nodes) {
        out.coords[v] = ins.coords.at(v);
        out.a[v] = ins.a.at(v);
        out.b[v] = ins.b.at(v);
        out.s[v] = ins.s.at(v);
        out.d[v] = ins.d.at(v);
    }
    out.Q = ins.Q;

    double max_b = 0.0, max_s = 0.0, max_len = 0.0;
    for (NodeId v : new_nodes) {
        max_b = std::max(max_b, out.b.at(v));
        max_s = std::max(max_s, out.s.at(v));
    }
    for (const Arc& a : out.graph.arcs()) max_len = std::max(max_len, a.length);
    out.M = max_b + max_s + max_len;

    out.validate();

    rep.nodes_after = static_cast<int>(new_nodes.size());
    rep.arcs_after = static_cast<int>(new_arcs.size());
    double before = total_vars(rep.nodes_before, rep.arcs_before);
    double after = total_vars(rep.nodes_after, rep.arcs_after);
    double frac = (before > 0.0) ? 1.0 - after / before : 0.0;
    if (rep.nodes_after == rep.nodes_before && rep.arcs_after == rep.arcs_before)
        frac = 0.0;
    rep.var_reduction_abf = frac;
    rep.var_reduction_nbf = frac;

    return {std::move(out), std::move(rep)};
}

}  // namespace stsp
