#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>

#include "stsp/instance_gen.hpp"
#include "stsp/model.hpp"
#include "stsp/model_builder.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace stsp;

namespace {

// tally constraint rows by family (name up to the last structured suffix)
std::map<std::string, int> family_counts(const ModelSpec& m) {
    std::map<std::string, int> out;
    for (const ConstraintDef& c : m.constraints) {
        std::string fam = c.name;
        while (!fam.empty()) {
            auto cut = fam.find_last_of('_');
            if (cut == std::string::npos) break;
            std::string tail = fam.substr(cut + 1);
            if (tail.empty() ||
                tail.find_first_not_of("0123456789") != std::string::npos)
                break;
            fam.resize(cut);
        }
        ++out[fam];
    }
    return out;
}

const ConstraintDef& find_row(const ModelSpec& m, const std::string& name) {
    for (const ConstraintDef& c : m.constraints)
        if (c.name == name) return c;
    throw std::runtime_error("missing row " + name);
}

int count_sense(const ModelSpec& m, Sense s) {
    int n = 0;
    for (const ConstraintDef& c : m.constraints) n += (c.sense == s);
    return n;
}

// all-zeros assignment over the model's variable table
Assignment zeros(const ModelSpec& m) {
    Assignment asg;
    for (const VarDef& v : m.variables) asg[v.name] = 0.0;
    return asg;
}

// the hand-checked optimal walk 0 -> 1 -> 2 -> 0 on the unit triangle
Assignment triangle_walk_assignment(const ModelSpec& m) {
    Assignment asg = zeros(m);
    asg.at("y_0_1") = 1.0;  // arc 0: 0 -> 1 at step 1
    asg.at("y_2_2") = 1.0;  // arc 2: 1 -> 2 at step 2
    asg.at("y_5_3") = 1.0;  // arc 5: 2 -> 0 at step 3
    asg.at("x_1_1") = 1.0;
    asg.at("x_2_2") = 1.0;
    asg.at("tau_1_1") = 11.0;  // wait for the window, then one unit of service
    asg.at("tau_2_2") = 13.0;
    asg.at("tau_0_3") = 14.0;
    asg.at("q_0_0") = 4.0;  // full free capacity at departure
    asg.at("q_1_1") = 3.0;  // pickup of 1 consumes one unit
    asg.at("q_2_2") = 4.0;  // delivery of 1 releases it again
    asg.at("q_0_3") = 4.0;
    return asg;
}

}  // namespace

TEST_CASE("closed-form variable counts hit the pinned anchors") {
    CHECK(predicted_var_counts(4, 7).binary == 77);
    CHECK(predicted_var_counts(4, 7).continuous == 64);
    CHECK(predicted_var_counts(5, 10).binary == 150);
    CHECK(predicted_var_counts(5, 10).continuous == 110);
    CHECK(predicted_var_counts(6, 14).binary == 280);
    CHECK(predicted_var_counts(6, 14).continuous == 180);
}

TEST_CASE("both builders produce exactly the predicted variable counts") {
    Instance ins = fixtures::make_anchor_instance();
    for (Formulation f : {Formulation::abf, Formulation::nbf}) {
        ModelSpec m = build_model(ins, f);
        CHECK(m.num_binary() == 77);
        CHECK(m.num_continuous() == 64);
        CHECK(static_cast<long long>(m.variables.size()) ==
              predicted_var_counts(4, 7).total());
    }
    for (int n : {5, 6}) {
        Instance gen =
            generate_instance_with_retries(n, 100.0, 0.7, Variant::full, 1);
        const int arcs = gen.graph.num_arcs();
        REQUIRE(arcs == (n == 5 ? 10 : 14));
        for (Formulation f : {Formulation::abf, Formulation::nbf}) {
            ModelSpec m = build_model(gen, f);
            CHECK(m.num_binary() == predicted_var_counts(n, arcs).binary);
            CHECK(m.num_continuous() == predicted_var_counts(n, arcs).continuous);
        }
    }
}

TEST_CASE("anchor model: row family census and sense split") {
    ModelSpec abf = build_abf(fixtures::make_anchor_instance());
    CHECK(abf.constraints.size() == 223);
    CHECK(count_sense(abf, Sense::eq) == 29);
    CHECK(count_sense(abf, Sense::le) == 89);
    CHECK(count_sense(abf, Sense::ge) == 105);

    auto fam = family_counts(abf);
    CHECK(fam.at("depot_start_first") == 1);
    CHECK(fam.at("depot_start_total") == 1);
    CHECK(fam.at("depot_flow_balance") == 1);
    CHECK(fam.at("start_restriction") == 4);  // one per non-depot arc
    CHECK(fam.at("flow_conservation") == 18); // (V-1) * (T-1)
    CHECK(fam.at("service_link") == 24);      // V * (T-1)
    CHECK(fam.at("unique_visit") == 2);
    CHECK(fam.at("time_consistency") == 49);  // |A| * T
    CHECK(fam.at("tau_link") == 24);
    CHECK(fam.at("window_lower") == 14);      // |V_r| * T
    CHECK(fam.at("window_upper") == 14);
    CHECK(fam.at("initial_load") == 3);
    CHECK(fam.at("initial_load_depot") == 1);
    CHECK(fam.at("capacity_link") == 24);
    CHECK(fam.at("load_propagation") == 42);  // |A| * (T-1)
    CHECK(fam.at("capacity_total") == 1);

    ModelSpec nbf = build_nbf(fixtures::make_anchor_instance());
    CHECK(nbf.constraints.size() == 222);  // per-node step-1 restriction
    CHECK(family_counts(nbf).at("start_restriction") == 3);
    CHECK(count_sense(nbf, Sense::eq) == 28);
}

TEST_CASE("formulations differ only in traversal-variable naming") {
    Instance ins = fixtures::make_anchor_instance();
    ModelSpec abf = build_abf(ins);
    ModelSpec nbf = build_nbf(ins);
    // arc 3 is 1 -> 2
    CHECK(var_y(ins.graph, Formulation::abf, 3, 2) == "y_3_2");
    CHECK(var_y(ins.graph, Formulation::nbf, 3, 2) == "y_1_2_2");
    CHECK_NOTHROW(abf.var("y_3_2"));
    CHECK_THROWS_AS(abf.var("y_1_2_2"), std::invalid_argument);
    CHECK_NOTHROW(nbf.var("y_1_2_2"));
    // shared variables appear verbatim in both
    for (const char* name : {"x_1_1", "tau_0_0", "q_3_7"}) {
        CHECK_NOTHROW(abf.var(name));
        CHECK_NOTHROW(nbf.var(name));
    }
    // identical objective values term by term (lengths over steps)
    REQUIRE(abf.objective.size() == nbf.objective.size());
    for (std::size_t i = 0; i < abf.objective.size(); ++i)
        CHECK(abf.objective[i].coef == nbf.objective[i].coef);
}

TEST_CASE("variants: dropped window rows and shifted load equations") {
    Instance full = fixtures::make_anchor_instance(Variant::full);
    Instance ntw = fixtures::make_anchor_instance(Variant::no_time_windows);
    Instance del = fixtures::make_anchor_instance(Variant::delivery_only);

    ModelSpec mf = build_abf(full);
    ModelSpec mn = build_abf(ntw);
    ModelSpec md = build_abf(del);

    auto fn = family_counts(mn);
    CHECK(fn.count("window_lower") == 0);
    CHECK(fn.count("window_upper") == 0);
    CHECK(mn.constraints.size() == mf.constraints.size() - 28);

    CHECK(find_row(mf, "initial_load_depot").rhs == 8.0);
    CHECK(find_row(md, "initial_load_depot").rhs == 0.0);
    // full: sum d = +3 - 2 = 1, rhs = Q - 1; delivery: sum d = -5, rhs = 5
    CHECK(find_row(mf, "capacity_total").rhs == 7.0);
    CHECK(find_row(md, "capacity_total").rhs == 5.0);
    // delivery keeps its windows
    CHECK(family_counts(md).at("window_lower") == 14);
}

TEST_CASE("hand-built walk on the unit triangle satisfies every row") {
    Instance ins = fixtures::make_triangle_instance();
    for (Formulation f : {Formulation::abf, Formulation::nbf}) {
        ModelSpec m = build_model(ins, f);
        Assignment asg = zeros(m);
        if (f == Formulation::abf) {
            asg = triangle_walk_assignment(m);
        } else {
            asg.at("y_0_1_1") = 1.0;
            asg.at("y_1_2_2") = 1.0;
            asg.at("y_2_0_3") = 1.0;
            asg.at("x_1_1") = 1.0;
            asg.at("x_2_2") = 1.0;
            asg.at("tau_1_1") = 11.0;
            asg.at("tau_2_2") = 13.0;
            asg.at("tau_0_3") = 14.0;
            asg.at("q_0_0") = 4.0;
            asg.at("q_1_1") = 3.0;
            asg.at("q_2_2") = 4.0;
            asg.at("q_0_3") = 4.0;
        }
        ViolationReport rep = check_assignment(m, asg);
        INFO(to_string(f), ": worst offender ",
             rep.violations.empty() ? std::string("none")
                                    : rep.violations.front().constraint);
        CHECK(rep.feasible);
        CHECK(rep.violations.empty());
        CHECK(rep.objective == 3.0);
        CHECK(rep.constraints_checked ==
              static_cast<int>(m.constraints.size()));
    }
}

TEST_CASE("the checker reports violated rows with their slack") {
    Instance ins = fixtures::make_triangle_instance();
    ModelSpec m = build_abf(ins);
    Assignment asg = triangle_walk_assignment(m);
    asg.at("x_1_1") = 0.0;  // skip the service of node 1
    ViolationReport rep = check_assignment(m, asg);
    CHECK(!rep.feasible);
    CHECK(!rep.violations.empty());
    CHECK(rep.worst >= 1.0);
    bool unique_visit_hit = false;
    for (const Violation& v : rep.violations)
        if (v.constraint == "unique_visit_1") {
            unique_visit_hit = true;
            CHECK(v.amount == doctest::Approx(1.0));
        }
    CHECK(unique_visit_hit);
}

TEST_CASE("the checker rejects malformed assignments outright") {
    Instance ins = fixtures::make_triangle_instance();
    ModelSpec m = build_abf(ins);

    Assignment fractional = triangle_walk_assignment(m);
    fractional.at("y_0_1") = 0.5;
    CHECK_THROWS_AS(check_assignment(m, fractional), std::invalid_argument);

    Assignment unknown = triangle_walk_assignment(m);
    unknown["zzz_not_a_var"] = 0.0;
    CHECK_THROWS_AS(check_assignment(m, unknown), std::invalid_argument);

    Assignment missing = triangle_walk_assignment(m);
    missing.erase("q_2_2");
    CHECK_THROWS_AS(check_assignment(m, missing), std::invalid_argument);

    // a bound breach beyond tol is malformed, within tol it is absorbed
    Assignment nudged = triangle_walk_assignment(m);
    nudged.at("q_0_0") = 4.0 + 5e-7;  // ub is Q = 4
    CHECK_THROWS_AS(check_assignment(m, nudged, 1e-9), std::invalid_argument);
    ViolationReport rep = check_assignment(m, nudged);  // default tol 1e-6
    CHECK(rep.feasible);
}

TEST_CASE("LP export is deterministic and matches the golden files") {
    const std::string dir = std::string(STSP_TEST_DATA_DIR) + "/fixtures/";
    struct Row {
        Variant variant;
        Formulation f;
        const char* file;
    } rows[] = {
        {Variant::full, Formulation::abf, "anchor_abf_full.lp"},
        {Variant::full, Formulation::nbf, "anchor_nbf_full.lp"},
        {Variant::no_time_windows, Formulation::abf, "anchor_abf_no_windows.lp"},
    };
    for (const Row& r : rows) {
        ModelSpec m = build_model(fixtures::make_anchor_instance(r.variant), r.f);
        const std::string text = export_lp(m);
        CHECK(text == export_lp(m));  // stable across calls
        CHECK(text == oracles::slurp(dir + r.file));
    }
}

TEST_CASE("exported LP text parses back to the full model size") {
    ModelSpec m = build_abf(fixtures::make_anchor_instance());
    oracles::LpSummary lp = oracles::parse_lp(export_lp(m));
    CHECK(lp.variables.size() == 141);
    CHECK(lp.binaries.size() == 77);
    CHECK(lp.constraint_names.size() == 223);
    // section ordering is part of the format contract
    const std::string text = export_lp(m);
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("Subject To") > text.find("Minimize"));
    CHECK(text.find("Bounds") > text.find("Subject To"));
    CHECK(text.find("Binaries") > text.find("Bounds"));
    CHECK(text.rfind("End") > text.find("Binaries"));
}

TEST_CASE("model JSON dump reflects the variable table") {
    ModelSpec m = build_nbf(fixtures::make_anchor_instance());
    auto j = nlohmann::json::parse(model_to_json(m));
    CHECK(j.at("model").at("formulation") == "nbf");
    CHECK(j.at("model").at("num_binary") == 77);
    CHECK(j.at("model").at("num_continuous") == 64);
    CHECK(j.at("model").at("num_constraints") == 222);
    CHECK(j.at("model").at("variables").size() == 141);
    CHECK(j.at("model").at("constraints").size() == 222);
}

TEST_CASE("duplicate variable names are rejected at build time") {
    ModelSpec m;
    m.add_var("v", VarKind::binary, 0.0, 1.0);
    CHECK_THROWS_AS(m.add_var("v", VarKind::binary, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(m.var("w"), std::invalid_argument);
}
