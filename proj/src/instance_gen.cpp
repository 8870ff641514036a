#include "stsp/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stsp/errors.hpp"
#include "stsp/rng.hpp"

namespace stsp {

std::map<NodeId, Point> generate_layout(int n, double radius) {
    if (n < 3) throw std::invalid_argument("generate_layout: need at least 3 nodes");
    if (!(radius > 0.0)) throw std::invalid_argument("generate_layout: radius must be positive");
    std::map<NodeId, Point> coords;
    const double step = 2.0 * M_PI / static_cast<double>(n);
    for (int i = 0; i < n; ++i)
        coords[i] = Point{radius * std::cos(step * i), radius * std::sin(step * i)};
    return coords;
}

namespace {

constexpr double kMinAngle = M_PI / 3.0;        // 60 degrees
constexpr double kAngleSlack = 1e-9;            // radians
constexpr double kOrientEps = 1e-9;             // relative orientation tolerance

struct Segment {
    NodeId u, v;  // u < v not required; endpoints as given
};

double dist(const Point& p, const Point& q) { return std::hypot(p.x - q.x, p.y - q.y); }

/// Sign of the z component of (b-a) x (c-a), snapped to 0 inside a
/// scale-relative band so nearly collinear triples are treated as collinear.
int orientation(const Point& a, const Point& b, const Point& c) {
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    const double scale = std::max({std::fabs(b.x - a.x), std::fabs(b.y - a.y),
                                   std::fabs(c.x - a.x), std::fabs(c.y - a.y), 1.0});
    if (std::fabs(cross) <= kOrientEps * scale * scale) return 0;
    return cross > 0.0 ? 1 : -1;
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
    return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
           std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

/// True when segments pq and rs intersect anywhere other than a shared
/// endpoint.  Proper crossings, T-touches, and collinear overlap all count
/// as intersecting; meeting exactly at a common endpoint does not.
bool segments_conflict(const Point& p, const Point& q, NodeId pi, NodeId qi, const Point& r,
                       const Point& s, NodeId ri, NodeId si) {
    const bool share = pi == ri || pi == si || qi == ri || qi == si;
    const int o1 = orientation(p, q, r);
    const int o2 = orientation(p, q, s);
    const int o3 = orientation(r, s, p);
    const int o4 = orientation(r, s, q);

    if (share) {
        // Segments meeting at a shared node conflict only when they are
        // collinear and overlap beyond the shared point.
        if (o1 == 0 && o2 == 0) {
            // All four points collinear; overlap iff a non-shared endpoint
            // lies strictly inside the other segment.
            auto interior = [&](const Point& a, const Point& b, const Point& x, NodeId xi,
                                NodeId ai, NodeId bi) {
                return xi != ai && xi != bi && on_segment(a, b, x) && dist(a, x) > 1e-12 &&
                       dist(b, x) > 1e-12;
            };
            return interior(p, q, r, ri, pi, qi) || interior(p, q, s, si, pi, qi) ||
                   interior(r, s, p, pi, ri, si) || interior(r, s, q, qi, ri, si);
        }
        return false;
    }

    if (o1 != o2 && o3 != o4) return true;  // proper crossing or T-touch
    if (o1 == 0 && on_segment(p, q, r)) return true;
    if (o2 == 0 && on_segment(p, q, s)) return true;
    if (o3 == 0 && on_segment(r, s, p)) return true;
    if (o4 == 0 && on_segment(r, s, q)) return true;
    return false;
}

/// Angle at `apex` between rays toward m and n, in [0, pi].
double angle_at(const Point& apex, const Point& m, const Point& n) {
    const double ux = m.x - apex.x, uy = m.y - apex.y;
    const double vx = n.x - apex.x, vy = n.y - apex.y;
    const double cross = ux * vy - uy * vx;
    const double dot = ux * vx + uy * vy;
    return std::atan2(std::fabs(cross), dot);
}

/// Shared state of the greedy selection + repair phases.
struct Builder {
    const std::map<NodeId, Point>& coords;
    std::uint64_t seed;
    std::vector<Segment> segments;                 // accepted geometry
    std::vector<Arc> arcs;                         // directed arcs, ids assigned at the end
    std::set<std::pair<NodeId, NodeId>> arc_set;   // (from, to) present

    bool admissible(NodeId u, NodeId v) const {
        const Point& pu = coords.at(u);
        const Point& pv = coords.at(v);
        for (const Segment& s : segments) {
            if (segments_conflict(pu, pv, u, v, coords.at(s.u), coords.at(s.v), s.u, s.v))
                return false;
            // 60-degree rule at each shared endpoint.
            for (NodeId apex : {u, v}) {
                NodeId other = apex == u ? v : u;
                NodeId far;
                if (s.u == apex) far = s.v;
                else if (s.v == apex) far = s.u;
                else continue;
                if (far == other) continue;  // same segment re-examined
                if (angle_at(coords.at(apex), coords.at(other), coords.at(far)) <
                    kMinAngle - kAngleSlack)
                    return false;
            }
        }
        return true;
    }

    void add_arc(NodeId from, NodeId to) {
        if (!arc_set.insert({from, to}).second) return;
        arcs.push_back(Arc{0, from, to, dist(coords.at(from), coords.at(to))});
    }

    bool has_arc(NodeId from, NodeId to) const { return arc_set.count({from, to}) != 0; }

    bool segment_present(NodeId u, NodeId v) const {
        for (const Segment& s : segments)
            if ((s.u == u && s.v == v) || (s.u == v && s.v == u)) return true;
        return false;
    }

    /// Adds the single directed arc from->to, creating (and geometry-testing)
    /// its segment when the opposite direction is not already drawn.
    /// Returns false when the segment would violate the geometric rules.
    bool add_repair_arc(NodeId from, NodeId to) {
        if (has_arc(from, to)) return true;
        if (!segment_present(from, to)) {
            if (!admissible(from, to)) return false;
            segments.push_back(Segment{from, to});
        }
        add_arc(from, to);
        return true;
    }

    /// Candidate partners for `v`: every other node, nearest first, ties by
    /// ascending id.
    std::vector<NodeId> partners(NodeId v) const {
        std::vector<NodeId> out;
        for (const auto& [u, p] : coords)
            if (u != v) out.push_back(u);
        const Point& pv = coords.at(v);
        std::stable_sort(out.begin(), out.end(), [&](NodeId x, NodeId y) {
            const double dx = dist(pv, coords.at(x));
            const double dy = dist(pv, coords.at(y));
            if (dx != dy) return dx < dy;
            return x < y;
        });
        return out;
    }
};

std::set<NodeId> forward_reach(const std::map<NodeId, Point>& coords,
                               const std::set<std::pair<NodeId, NodeId>>& arc_set, NodeId start,
                               bool reverse) {
    std::set<NodeId> seen{start};
    std::vector<NodeId> stack{start};
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (const auto& [from, to] : arc_set) {
            NodeId tail = reverse ? to : from;
            NodeId head = reverse ? from : to;
            if (tail != u || seen.count(head)) continue;
            seen.insert(head);
            stack.push_back(head);
        }
    }
    (void)coords;
    return seen;
}

}  // namespace

Graph select_edges(const std::map<NodeId, Point>& coords, std::uint64_t seed) {
    if (coords.size() < 2) throw std::invalid_argument("select_edges: need at least 2 nodes");
    if (coords.count(0) == 0) throw std::invalid_argument("select_edges: depot (node 0) missing");
    for (const auto& [u, pu] : coords)
        for (const auto& [v, pv] : coords)
            if (u < v && dist(pu, pv) <= 0.0)
                throw std::invalid_argument("select_edges: coincident nodes " + std::to_string(u) +
                                            " and " + std::to_string(v));

    Builder b{coords, seed, {}, {}, {}};

    // Phase 0: depot anchoring.  Candidate segments never touch the depot,
    // and on circle layouts the greedy phase reliably closes a ring around
    // it whose chords block every later depot connection (the repair phase
    // then fails for every seed, since the geometry is seed-independent).
    // Anchoring the depot to its two nearest neighbors first keeps it
    // connectable, and the anchors constrain the greedy phase through the
    // ordinary crossing/angle rules like any accepted segment.
    {
        int anchored = 0;
        for (NodeId u : b.partners(0)) {
            if (anchored == 2) break;
            if (!b.admissible(0, u)) continue;
            b.segments.push_back(Segment{0, u});
            b.add_arc(0, u);
            b.add_arc(u, 0);
            ++anchored;
        }
        if (anchored == 0)
            throw GenerationFailure(seed, "select_edges: cannot anchor the depot");
    }

    // Phase 1: greedy selection over non-depot pairs, shortest first.
    struct Candidate {
        double len;
        NodeId u, v;  // u < v
    };
    std::vector<Candidate> cands;
    for (auto iu = coords.begin(); iu != coords.end(); ++iu)
        for (auto iv = std::next(iu); iv != coords.end(); ++iv) {
            if (iu->first == 0 || iv->first == 0) continue;
            cands.push_back({dist(iu->second, iv->second), iu->first, iv->first});
        }
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
        if (x.len != y.len) return x.len < y.len;
        if (x.u != y.u) return x.u < y.u;
        return x.v < y.v;
    });
    for (const Candidate& c : cands) {
        if (!b.admissible(c.u, c.v)) continue;
        b.segments.push_back(Segment{c.u, c.v});
        b.add_arc(c.u, c.v);
        b.add_arc(c.v, c.u);
    }

    // Phase 2: degree repair.  The depot always lands here: it had no
    // candidate segments.
    for (const auto& [v, p] : coords) {
        (void)p;
        bool has_out = false, has_in = false;
        for (const auto& [from, to] : b.arc_set) {
            has_out |= from == v;
            has_in |= to == v;
        }
        if (!has_out) {
            bool fixed = false;
            for (NodeId u : b.partners(v))
                if (b.add_repair_arc(v, u)) {
                    fixed = true;
                    break;
                }
            if (!fixed)
                throw GenerationFailure(seed, "select_edges: no admissible outgoing arc for node " +
                                                  std::to_string(v));
        }
        if (!has_in) {
            bool fixed = false;
            for (NodeId u : b.partners(v))
                if (b.add_repair_arc(u, v)) {
                    fixed = true;
                    break;
                }
            if (!fixed)
                throw GenerationFailure(seed, "select_edges: no admissible incoming arc for node " +
                                                  std::to_string(v));
        }
    }

    // Phase 3: strong-connectivity repair.  Each round links the
    // smallest-id offender to/from the depot component and retests.
    for (;;) {
        const auto reached = forward_reach(coords, b.arc_set, 0, false);
        const auto reaching = forward_reach(coords, b.arc_set, 0, true);
        NodeId offender = -1;
        bool need_inbound = false;  // offender unreachable from depot
        for (const auto& [v, p] : coords) {
            (void)p;
            if (!reached.count(v)) {
                offender = v;
                need_inbound = true;
                break;
            }
            if (!reaching.count(v)) {
                offender = v;
                need_inbound = false;
                break;
            }
        }
        if (offender < 0) break;

        bool fixed = false;
        for (NodeId u : b.partners(offender)) {
            if (need_inbound) {
                if (!reached.count(u)) continue;  // must come from the reachable side
                if (b.add_repair_arc(u, offender)) {
                    fixed = true;
                    break;
                }
            } else {
                if (!reaching.count(u)) continue;  // must lead toward the depot
                if (b.add_repair_arc(offender, u)) {
                    fixed = true;
                    break;
                }
            }
        }
        if (!fixed)
            throw GenerationFailure(seed,
                                    "select_edges: cannot restore strong connectivity at node " +
                                        std::to_string(offender));
    }

    std::vector<NodeId> nodes;
    for (const auto& [v, p] : coords) {
        (void)p;
        nodes.push_back(v);
    }
    std::vector<Arc> arcs = b.arcs;
    for (std::size_t i = 0; i < arcs.size(); ++i) arcs[i].id = static_cast<ArcId>(i);
    return Graph(std::move(nodes), std::move(arcs));
}

Instance assign_parameters(const Graph& graph, const std::map<NodeId, Point>& coords,
                           double required_fraction, Variant variant, std::uint64_t seed,
                           double radius) {
    if (!(required_fraction > 0.0) || required_fraction > 1.0)
        throw std::invalid_argument("assign_parameters: fraction must lie in (0, 1]");
    const int v_count = graph.num_nodes();
    if (v_count < 2) throw std::invalid_argument("assign_parameters: need at least 2 nodes");

    SplitMix64 rng(seed);

    // Required set: uniform subset of the non-depot nodes, floor(f*(|V|-1))
    // of them, at least one.
    std::vector<NodeId> pool;
    for (NodeId v : graph.nodes())
        if (v != 0) pool.push_back(v);
    const int want = std::max(1, static_cast<int>(std::floor(
                                     required_fraction * static_cast<double>(v_count - 1))));
    rng.shuffle(pool);
    std::vector<NodeId> required(pool.begin(), pool.begin() + want);
    std::sort(required.begin(), required.end());

    // Depot distances: shortest and longest simple paths.
    const auto sp = shortest_paths(graph, 0);
    const auto lp = longest_simple_path(graph, 0, required);
    for (NodeId v : required) {
        if (!sp.at(v).reachable || lp.count(v) == 0)
            throw GenerationFailure(seed, "assign_parameters: required node " + std::to_string(v) +
                                              " unreachable from depot");
    }

    // Window blends: half of the required set leans toward the shortest
    // distance, the other half toward the longest.
    std::vector<NodeId> halves = required;
    rng.shuffle(halves);
    const std::size_t near_count = (halves.size() + 1) / 2;
    std::set<NodeId> near_half(halves.begin(), halves.begin() + static_cast<long>(near_count));

    Instance ins{graph};
    ins.seed = seed;
    ins.n = v_count;
    ins.radius = radius;
    ins.fraction = required_fraction;
    ins.variant = variant;
    ins.coords = coords;
    ins.required = required;

    for (NodeId v : graph.nodes()) {
        ins.a[v] = 0.0;
        ins.b[v] = 100000.0;
        ins.s[v] = 0.0;
        ins.d[v] = 0.0;
    }

    std::map<NodeId, double> blend1, blend2;
    for (NodeId v : required) {
        const double lmin = sp.at(v).dist;
        const double lmax = lp.at(v);
        blend1[v] = 0.7 * lmin + 0.3 * lmax;
        blend2[v] = 0.3 * lmin + 0.7 * lmax;
    }

    for (NodeId v : required) {
        const double base = near_half.count(v) ? blend1[v] : blend2[v];
        const double eps = rng.next_open(0.0, 0.5 * base);
        ins.a[v] = base + eps;
    }
    for (NodeId v : required) {
        const double lo = std::min(blend1[v], blend2[v]);
        const double hi = std::max(blend1[v], blend2[v]);
        const double w = lo < hi ? rng.next_open(lo, hi) : lo;
        ins.b[v] = ins.a[v] + w;
    }
    for (NodeId v : required) ins.s[v] = static_cast<double>(rng.next_int(5, 10));

    // Demands: pickups for ceil(|V_r|/2) nodes unless the variant is
    // delivery-only.
    std::set<NodeId> pickups;
    if (variant != Variant::delivery_only) {
        std::vector<NodeId> order = required;
        rng.shuffle(order);
        const std::size_t k = (order.size() + 1) / 2;
        pickups.insert(order.begin(), order.begin() + static_cast<long>(k));
    }
    for (NodeId v : required)
        ins.d[v] = static_cast<double>(pickups.count(v) ? rng.next_int(10, 20)
                                                        : rng.next_int(-5, -1));

    double abs_sum = 0.0, abs_min = 0.0, abs_max = 0.0;
    bool first = true;
    for (NodeId v : required) {
        const double m = std::fabs(ins.d[v]);
        abs_sum += m;
        abs_min = first ? m : std::min(abs_min, m);
        abs_max = first ? m : std::max(abs_max, m);
        first = false;
    }
    const double theta = abs_min < abs_max ? rng.next_open(abs_min, abs_max) : abs_min;
    ins.Q = abs_sum + theta;

    double max_b = 0.0, max_s = 0.0, max_len = 0.0;
    for (NodeId v : graph.nodes()) {
        max_b = std::max(max_b, ins.b[v]);
        max_s = std::max(max_s, ins.s[v]);
    }
    for (const Arc& k : graph.arcs()) max_len = std::max(max_len, k.length);
    ins.M = max_b + max_s + max_len;

    ins.validate();
    return ins;
}

Instance generate_instance(int n, double radius, double required_fraction, Variant variant,
                           std::uint64_t seed) {
    const auto coords = generate_layout(n, radius);
    const Graph g = select_edges(coords, seed);
    return assign_parameters(g, coords, required_fraction, variant, seed, radius);
}

Instance generate_instance_with_retries(int n, double radius, double required_fraction,
                                        Variant variant, std::uint64_t seed, int max_attempts) {
    for (int attempt = 0;; ++attempt) {
        try {
            return generate_instance(n, radius, required_fraction, variant,
                                     seed + static_cast<std::uint64_t>(attempt));
        } catch (const GenerationFailure&) {
            if (attempt + 1 >= max_attempts) throw;
        }
    }
}

}  // namespace stsp
