#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "stsp/errors.hpp"
#include "stsp/instance.hpp"
#include "stsp/instance_gen.hpp"

#include "support/oracles.hpp"

using namespace stsp;

TEST_CASE("layout: nodes sit on the circle at uniform angles") {
    auto xy = generate_layout(4, 100.0);
    CHECK(xy.at(0).x == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(xy.at(0).y == doctest::Approx(0.0).scale(100).epsilon(1e-12));
    CHECK(xy.at(1).x == doctest::Approx(0.0).scale(100).epsilon(1e-12));
    CHECK(xy.at(1).y == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(xy.at(2).x == doctest::Approx(-100.0).epsilon(1e-12));
    CHECK(xy.at(3).y == doctest::Approx(-100.0).epsilon(1e-12));

    auto hex = generate_layout(6, 100.0);
    CHECK(hex.at(1).x == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(hex.at(1).y == doctest::Approx(86.602540378443864676).epsilon(1e-12));

    CHECK_THROWS_AS(generate_layout(1, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(generate_layout(2, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(generate_layout(5, 0.0), std::invalid_argument);
}

TEST_CASE("edge selection: the equilateral triangle keeps all three sides") {
    auto xy = generate_layout(3, 100.0);
    Graph g = select_edges(xy, 1);
    CHECK(g.num_arcs() == 6);  // three segments, both directions each
    for (NodeId u : {0, 1, 2})
        for (NodeId v : {0, 1, 2})
            if (u != v) CHECK(g.has_arc(u, v));
}

TEST_CASE("edge selection: geometric rules hold across sizes") {
    for (int n : {4, 5, 6, 9, 12, 17, 20}) {
        auto xy = generate_layout(n, 100.0);
        Graph g = select_edges(xy, 7);
        INFO("n = ", n);
        CHECK(oracles::count_proper_crossings(g, xy) == 0);
        CHECK(oracles::min_incident_angle(g, xy) >= M_PI / 3.0 - 1e-9);
        CHECK(oracles::strongly_connected(g));
        // arc lengths match endpoint geometry
        for (const Arc& a : g.arcs())
            CHECK(a.length ==
                  std::hypot(xy.at(a.from).x - xy.at(a.to).x,
                             xy.at(a.from).y - xy.at(a.to).y));
    }
}

TEST_CASE("edge selection is deterministic for fixed coordinates") {
    auto xy = generate_layout(9, 100.0);
    Graph g1 = select_edges(xy, 1);
    Graph g2 = select_edges(xy, 99);  // seed only matters on failure paths
    REQUIRE(g1.num_arcs() == g2.num_arcs());
    for (int k = 0; k < g1.num_arcs(); ++k) {
        CHECK(g1.arc(k).from == g2.arc(k).from);
        CHECK(g1.arc(k).to == g2.arc(k).to);
        CHECK(g1.arc(k).length == g2.arc(k).length);
    }
}

TEST_CASE("parameters: required set size and non-required defaults") {
    for (int n : {4, 7, 10}) {
        Instance ins =
            generate_instance_with_retries(n, 100.0, 0.7, Variant::full, 3);
        const int want =
            std::max(1, static_cast<int>(std::floor(0.7 * (n - 1))));
        CHECK(static_cast<int>(ins.required.size()) == want);
        CHECK(std::is_sorted(ins.required.begin(), ins.required.end()));
        CHECK(!ins.is_required(0));
        for (NodeId v : ins.graph.nodes()) {
            if (ins.is_required(v)) continue;
            CHECK(ins.a.at(v) == 0.0);
            CHECK(ins.b.at(v) == 100000.0);
            CHECK(ins.s.at(v) == 0.0);
            CHECK(ins.d.at(v) == 0.0);
        }
    }
}

TEST_CASE("parameters: windows derive from the path-length blends") {
    Instance ins =
        generate_instance_with_retries(8, 100.0, 0.7, Variant::full, 17);
    auto lmin = oracles::bf_shortest(ins.graph, 0);
    auto lmax = oracles::enumerate_longest(ins.graph, 0);
    for (NodeId i : ins.required) {
        const double b1 = 0.7 * lmin.at(i) + 0.3 * lmax.at(i);
        const double b2 = 0.3 * lmin.at(i) + 0.7 * lmax.at(i);
        const double a = ins.a.at(i);
        const double w = ins.b.at(i) - a;
        // a = blend + eps with eps in (0, blend/2), for one of the blends
        const bool from_b1 = a > b1 && a < 1.5 * b1;
        const bool from_b2 = a > b2 && a < 1.5 * b2;
        CHECK((from_b1 || from_b2));
        CHECK(a > lmin.at(i));  // window never opens before arrival is possible
        CHECK(w > std::min(b1, b2));
        CHECK(w < std::max(b1, b2));
        CHECK(ins.b.at(i) > a);
        // service times are integers in [5, 10]
        CHECK(ins.s.at(i) == std::floor(ins.s.at(i)));
        CHECK(ins.s.at(i) >= 5.0);
        CHECK(ins.s.at(i) <= 10.0);
    }
}

TEST_CASE("parameters: demand split, capacity band, and big-M formula") {
    for (std::uint64_t seed : {2, 9, 23}) {
        Instance ins =
            generate_instance_with_retries(9, 100.0, 0.7, Variant::full, seed);
        int pickups = 0, deliveries = 0;
        double sum_abs = 0.0, min_abs = 1e18, max_abs = 0.0;
        for (NodeId i : ins.required) {
            const double d = ins.d.at(i);
            CHECK(d != 0.0);
            CHECK(d == std::floor(d));
            if (d > 0) {
                ++pickups;
                CHECK(d >= 10.0);
                CHECK(d <= 20.0);
            } else {
                ++deliveries;
                CHECK(d >= -5.0);
                CHECK(d <= -1.0);
            }
            sum_abs += std::fabs(d);
            min_abs = std::min(min_abs, std::fabs(d));
            max_abs = std::max(max_abs, std::fabs(d));
        }
        const int nr = static_cast<int>(ins.required.size());
        CHECK(pickups == (nr + 1) / 2);
        CHECK(pickups + deliveries == nr);
        // Q = sum|d| + theta with theta strictly inside (min|d|, max|d|)
        CHECK(ins.Q > sum_abs + min_abs);
        CHECK(ins.Q < sum_abs + max_abs);

        double max_b = 0.0, max_s = 0.0, max_len = 0.0;
        for (NodeId v : ins.graph.nodes()) {
            max_b = std::max(max_b, ins.b.at(v));
            max_s = std::max(max_s, ins.s.at(v));
        }
        for (const Arc& a : ins.graph.arcs())
            max_len = std::max(max_len, a.length);
        CHECK(ins.M == max_b + max_s + max_len);
        CHECK(max_b == 100000.0);  // some node is always non-required
    }
}

TEST_CASE("parameters: delivery-only variant flips every demand negative") {
    Instance ins = generate_instance_with_retries(8, 100.0, 0.7,
                                                  Variant::delivery_only, 5);
    for (NodeId i : ins.required) {
        CHECK(ins.d.at(i) < 0.0);
        CHECK(ins.d.at(i) >= -5.0);
    }
    CHECK_NOTHROW(ins.validate());

    Instance ntw = generate_instance_with_retries(8, 100.0, 0.7,
                                                  Variant::no_time_windows, 5);
    bool any_pickup = false;
    for (NodeId i : ntw.required) any_pickup |= ntw.d.at(i) > 0.0;
    CHECK(any_pickup);  // demands stay mixed without windows
}

TEST_CASE("generation rejects out-of-range fractions") {
    CHECK_THROWS_AS(generate_instance(6, 100.0, 0.0, Variant::full, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(6, 100.0, 1.5, Variant::full, 1),
                    std::invalid_argument);
}

TEST_CASE("identical seeds give byte-identical instances") {
    for (Variant variant :
         {Variant::full, Variant::no_time_windows, Variant::delivery_only}) {
        Instance a = generate_instance_with_retries(7, 100.0, 0.7, variant, 42);
        Instance b = generate_instance_with_retries(7, 100.0, 0.7, variant, 42);
        CHECK(instance_to_json(a) == instance_to_json(b));
    }
    Instance a = generate_instance_with_retries(7, 100.0, 0.7, Variant::full, 1);
    Instance b = generate_instance_with_retries(7, 100.0, 0.7, Variant::full, 2);
    CHECK(instance_to_json(a) != instance_to_json(b));
}

TEST_CASE("instance JSON round-trips to identical bytes") {
    Instance ins =
        generate_instance_with_retries(6, 100.0, 0.7, Variant::full, 13);
    const std::string text = instance_to_json(ins);
    Instance back = instance_from_json(text);
    CHECK(instance_to_json(back) == text);
    CHECK(back.graph.num_arcs() == ins.graph.num_arcs());
    CHECK(back.required == ins.required);
    CHECK(back.Q == ins.Q);
    CHECK(back.M == ins.M);

    const std::string path = "roundtrip_instance_tmp.json";
    write_instance(ins, path);
    Instance from_file = read_instance(path);
    CHECK(instance_to_json(from_file) == text);
    std::remove(path.c_str());
}

TEST_CASE("instance parsing errors are typed") {
    CHECK_THROWS_AS(read_instance("definitely_missing_file.json"), IoError);
    CHECK_THROWS_AS(instance_from_json("this is not json"), IoError);
    CHECK_THROWS_AS(instance_from_json("{\"meta\": {}}"), std::invalid_argument);
}

TEST_CASE("generated instances pass their own validation") {
    for (int n : {3, 5, 8, 12}) {
        Instance ins =
            generate_instance_with_retries(n, 100.0, 0.7, Variant::full, 1);
        CHECK_NOTHROW(ins.validate());
        CHECK(ins.n == n);
        CHECK(ins.radius == 100.0);
    }
}
