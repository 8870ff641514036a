#pragma once

// Hand-pinned instances shared by the unit and acceptance suites.  Keeping
// them in one place guarantees the golden LP files, the variable-count
// anchors, and the checker tests all talk about the same bytes.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "stsp/graph.hpp"
#include "stsp/instance.hpp"
#include "stsp/instance_gen.hpp"
#include "stsp/rng.hpp"

namespace fixtures {

// Four nodes on the axes, seven arcs, two required stops.  Chosen so the
// arc-based model lands exactly on 77 binary + 64 continuous variables and
// 223 constraint rows, which the tests pin.
inline stsp::Instance make_anchor_instance(
    stsp::Variant variant = stsp::Variant::full) {
    using namespace stsp;
    std::vector<Arc> arcs = {{0, 0, 1, 5.0}, {1, 0, 2, 7.0}, {2, 0, 3, 4.0},
                             {3, 1, 2, 3.0}, {4, 2, 3, 6.0}, {5, 3, 0, 4.0},
                             {6, 2, 0, 7.0}};
    Instance ins{Graph({0, 1, 2, 3}, arcs)};
    ins.seed = 0;
    ins.n = 4;
    ins.radius = 100.0;
    ins.fraction = 0.5;
    ins.variant = variant;
    ins.required = {1, 3};
    ins.coords[0] = Point{100.0, 0.0};
    ins.coords[1] = Point{0.0, 100.0};
    ins.coords[2] = Point{-100.0, 0.0};
    ins.coords[3] = Point{0.0, -100.0};
    for (NodeId v : {0, 2}) {
        ins.a[v] = 0.0;
        ins.b[v] = 100000.0;
        ins.s[v] = 0.0;
        ins.d[v] = 0.0;
    }
    ins.a[1] = 10.0;
    ins.b[1] = 40.0;
    ins.s[1] = 2.0;
    ins.d[1] = variant == Variant::delivery_only ? -3.0 : 3.0;
    ins.a[3] = 12.0;
    ins.b[3] = 60.0;
    ins.s[3] = 1.0;
    ins.d[3] = -2.0;
    ins.Q = 8.0;
    ins.M = 100000.0 + 2.0 + 7.0;
    ins.validate();
    return ins;
}

// Unit equilateral-style triangle with both directions on every side and
// two required stops; small enough to reason about every model row by
// hand.
inline stsp::Instance make_triangle_instance() {
    using namespace stsp;
    std::vector<Arc> arcs = {{0, 0, 1, 1.0}, {1, 1, 0, 1.0}, {2, 1, 2, 1.0},
                             {3, 2, 1, 1.0}, {4, 0, 2, 1.0}, {5, 2, 0, 1.0}};
    Instance ins{Graph({0, 1, 2}, arcs)};
    ins.seed = 0;
    ins.n = 3;
    ins.radius = 1.0;
    ins.fraction = 0.7;
    ins.variant = Variant::full;
    ins.required = {1, 2};
    ins.coords[0] = Point{1.0, 0.0};
    ins.coords[1] = Point{-0.5, 0.8660254};
    ins.coords[2] = Point{-0.5, -0.8660254};
    ins.a[0] = 0.0;
    ins.b[0] = 100000.0;
    ins.s[0] = 0.0;
    ins.d[0] = 0.0;
    ins.a[1] = 10.0;
    ins.b[1] = 50.0;
    ins.s[1] = 1.0;
    ins.d[1] = 1.0;
    ins.a[2] = 11.0;
    ins.b[2] = 51.0;
    ins.s[2] = 1.0;
    ins.d[2] = -1.0;
    ins.Q = 4.0;
    ins.M = 100000.0 + 1.0 + 1.0;
    ins.validate();
    return ins;
}

// Dense synthetic instance on the standard circle layout: one directed
// arc per unordered non-depot pair (orientation drawn from the seed) plus
// two arcs out of the depot and two into it, for |A| = 4 + (n-1)(n-2)/2.
// The anchor fixture above is the n = 4 member of this shape family.
// Dense graphs carry many arcs that no canonical shortest path uses, so
// they exercise the reducer's pruning in a way sparse planar graphs
// cannot; orientations are redrawn until the graph is strongly connected.
inline stsp::Instance make_dense_instance(int n, std::uint64_t seed,
                                          stsp::Variant variant) {
    using namespace stsp;
    auto coords = generate_layout(n, 100.0);
    auto dist = [&](NodeId u, NodeId v) {
        return std::hypot(coords.at(u).x - coords.at(v).x,
                          coords.at(u).y - coords.at(v).y);
    };
    auto strongly_connected = [](const Graph& g) {
        auto fwd = shortest_paths(g, 0);
        std::vector<Arc> rev;
        for (const Arc& a : g.arcs()) rev.push_back({a.id, a.to, a.from, a.length});
        Graph gr(g.nodes(), rev);
        auto bwd = shortest_paths(gr, 0);
        for (NodeId v : g.nodes())
            if (!fwd.at(v).reachable || !bwd.at(v).reachable) return false;
        return true;
    };
    for (std::uint64_t attempt = 0;; ++attempt) {
        SplitMix64 rng(seed * 1000003ull + attempt);
        std::vector<NodeId> nodes;
        for (int i = 0; i < n; ++i) nodes.push_back(i);
        std::vector<Arc> arcs;
        ArcId next = 0;
        for (int i = 1; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                bool flip = (rng.next_u64() & 1ull) != 0;
                NodeId u = flip ? j : i, v = flip ? i : j;
                arcs.push_back({next++, u, v, dist(u, v)});
            }
        std::vector<NodeId> wires;
        for (int i = 1; i < n; ++i) wires.push_back(i);
        rng.shuffle(wires);
        arcs.push_back({next++, 0, wires[0], dist(0, wires[0])});
        arcs.push_back({next++, 0, wires[1], dist(0, wires[1])});
        arcs.push_back({next++, wires[2], 0, dist(wires[2], 0)});
        arcs.push_back({next++, wires[3 % wires.size()], 0,
                        dist(wires[3 % wires.size()], 0)});
        Graph g(nodes, arcs);
        if (!strongly_connected(g)) continue;
        return assign_parameters(g, coords, 0.7, variant, seed, 100.0);
    }
}

}  // namespace fixtures
