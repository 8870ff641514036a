#include "stsp/model_builder.hpp"

#include <string>
#include <vector>

namespace stsp {

VarCounts predicted_var_counts(int num_nodes, int num_arcs) {
    VarCounts c;
    long long n = num_nodes, m = num_arcs;
    c.binary = m * m + n * m;
    c.continuous = 2 * n * (m + 1);
    return c;
}

namespace {

std::string idx(NodeId i, int t) {
    return std::to_string(i) + "_" + std::to_string(t);
}

}  // namespace

std::string var_x(NodeId i, int t) { return "x_" + idx(i, t); }
std::string var_tau(NodeId i, int t) { return "tau_" + idx(i, t); }
std::string var_q(NodeId i, int t) { return "q_" + idx(i, t); }

std::string var_y(const Graph& g, Formulation f, ArcId k, int t) {
    const Arc& a = g.arc(k);
    if (f == Formulation::abf)
        return "y_" + std::to_string(a.id) + "_" + std::to_string(t);
    return "y_" + std::to_string(a.from) + "_" + idx(a.to, t);
}

namespace {

struct Builder {
    const Instance& ins;
    const Graph& g;
    Formulation f;
    int T;
    ModelSpec m;

    Builder(const Instance& ins_, Formulation f_)
        : ins(ins_), g(ins_.graph), f(f_),
          T(static_cast<int>(ins_.graph.arcs().size())) {
        m.formulation = f;
        m.name = to_string(f) + "_" + to_string(ins.variant);
    }

    std::string y_name(ArcId k, int t) const { return var_y(g, f, k, t); }

    int y(ArcId k, int t) const { return m.var(y_name(k, t)); }
    int x(NodeId i, int t) const { return m.var(var_x(i, t)); }
    int tau(NodeId i, int t) const { return m.var(var_tau(i, t)); }
    int q(NodeId i, int t) const { return m.var(var_q(i, t)); }

    void row(std::string name, std::vector<LinTerm> terms, Sense sense,
             double rhs) {
        m.constraints.push_back(
            ConstraintDef{std::move(name), std::move(terms), sense, rhs});
    }

    void add_variables() {
        for (const Arc& a : g.arcs())
            for (int t = 1; t <= T; ++t)
                m.add_var(y_name(a.id, t), VarKind::binary, 0.0, 1.0);
        for (NodeId i : g.nodes())
            for (int t = 1; t <= T; ++t)
                m.add_var(var_x(i, t), VarKind::binary, 0.0, 1.0);
        for (NodeId i : g.nodes())
            for (int t = 0; t <= T; ++t)
                m.add_var(var_tau(i, t), VarKind::continuous, 0.0, kInf);
        for (NodeId i : g.nodes())
            for (int t = 0; t <= T; ++t)
                m.add_var(var_q(i, t), VarKind::continuous, 0.0, ins.Q);
    }

    void add_objective() {
        for (const Arc& a : g.arcs())
            for (int t = 1; t <= T; ++t)
                m.objective.push_back(LinTerm{y(a.id, t), a.length});
    }

    void add_routing() {
        // exactly one departure from the depot, and it happens at step 1
        std::vector<LinTerm> first, total;
        for (ArcId k : g.out_arcs(0)) first.push_back(LinTerm{y(k, 1), 1.0});
        for (int t = 1; t <= T; ++t)
            for (ArcId k : g.out_arcs(0)) total.push_back(LinTerm{y(k, t), 1.0});
        row("depot_start_first", std::move(first), Sense::eq, 1.0);
        row("depot_start_total", std::move(total), Sense::eq, 1.0);

        std::vector<LinTerm> balance;
        for (int t = 1; t <= T; ++t) {
            for (ArcId k : g.out_arcs(0)) balance.push_back(LinTerm{y(k, t), 1.0});
            for (ArcId k : g.in_arcs(0)) balance.push_back(LinTerm{y(k, t), -1.0});
        }
        row("depot_flow_balance", std::move(balance), Sense::eq, 0.0);

        if (f == Formulation::abf) {
            for (const Arc& a : g.arcs()) {
                if (a.from == 0) continue;
                row("start_restriction_" + std::to_string(a.id),
                    {LinTerm{y(a.id, 1), 1.0}}, Sense::eq, 0.0);
            }
        } else {
            for (NodeId i : g.nodes()) {
                if (i == 0) continue;
                std::vector<LinTerm> terms;
                for (ArcId k : g.out_arcs(i)) terms.push_back(LinTerm{y(k, 1), 1.0});
                row("start_restriction_" + std::to_string(i), std::move(terms),
                    Sense::eq, 0.0);
            }
        }

        for (NodeId i : g.nodes()) {
            if (i == 0) continue;
            for (int t = 1; t <= T - 1; ++t) {
                std::vector<LinTerm> terms;
                for (ArcId k : g.in_arcs(i)) terms.push_back(LinTerm{y(k, t), 1.0});
                for (ArcId k : g.out_arcs(i))
                    terms.push_back(LinTerm{y(k, t + 1), -1.0});
                row("flow_conservation_" + idx(i, t), std::move(terms), Sense::eq,
                    0.0);
            }
        }
    }

    void add_service() {
        for (NodeId i : g.nodes()) {
            for (int t = 1; t <= T - 1; ++t) {
                std::vector<LinTerm> terms{LinTerm{x(i, t), 1.0}};
                for (ArcId k : g.in_arcs(i))
                    terms.push_back(LinTerm{y(k, t), -ins.M});
                row("service_link_" + idx(i, t), std::move(terms), Sense::le, 0.0);
            }
        }
        for (NodeId i : ins.required) {
            std::vector<LinTerm> terms;
            for (int t = 1; t <= T; ++t) terms.push_back(LinTerm{x(i, t), 1.0});
            row("unique_visit_" + std::to_string(i), std::move(terms), Sense::eq,
                1.0);
        }
    }

    void add_time() {
        // departure chaining: using arc (i,j) at step t+1 forces
        // tau_j(t+1) >= tau_i(t) + s_j x_j(t+1) + l_ij
        for (const Arc& a : g.arcs()) {
            for (int t = 0; t <= T - 1; ++t) {
                std::vector<LinTerm> terms{LinTerm{tau(a.to, t + 1), 1.0},
                                           LinTerm{tau(a.from, t), -1.0},
                                           LinTerm{x(a.to, t + 1), -ins.s.at(a.to)},
                                           LinTerm{y(a.id, t + 1), -ins.M}};
                std::string name =
                    f == Formulation::abf
                        ? "time_consistency_" + std::to_string(a.id) + "_" +
                              std::to_string(t)
                        : "time_consistency_" + std::to_string(a.from) + "_" +
                              idx(a.to, t);
                row(std::move(name), std::move(terms), Sense::ge,
                    a.length - ins.M);
            }
        }
        for (NodeId i : g.nodes()) {
            for (int t = 1; t <= T - 1; ++t) {
                std::vector<LinTerm> terms{LinTerm{tau(i, t), 1.0}};
                for (ArcId k : g.in_arcs(i))
                    terms.push_back(LinTerm{y(k, t), -ins.M});
                row("tau_link_" + idx(i, t), std::move(terms), Sense::le, 0.0);
            }
        }
        if (ins.variant == Variant::no_time_windows) return;
        for (NodeId i : ins.required) {
            for (int t = 1; t <= T; ++t) {
                row("window_lower_" + idx(i, t),
                    {LinTerm{tau(i, t), 1.0},
                     LinTerm{x(i, t), -(ins.a.at(i) + ins.s.at(i))}},
                    Sense::ge, 0.0);
            }
        }
        for (NodeId i : ins.required) {
            for (int t = 1; t <= T; ++t) {
                row("window_upper_" + idx(i, t),
                    {LinTerm{tau(i, t), 1.0},
                     LinTerm{x(i, t), ins.M - (ins.b.at(i) + ins.s.at(i))}},
                    Sense::le, ins.M);
            }
        }
    }

    void add_capacity() {
        bool delivery = ins.variant == Variant::delivery_only;
        // delivery_only departs fully loaded (zero free capacity); the
        // other variants depart empty with all of Q available
        row("initial_load_depot", {LinTerm{q(0, 0), 1.0}}, Sense::eq,
            delivery ? 0.0 : ins.Q);
        for (NodeId i : g.nodes()) {
            if (i == 0) continue;
            row("initial_load_" + std::to_string(i), {LinTerm{q(i, 0), 1.0}},
                Sense::le, 0.0);
        }
        for (NodeId i : g.nodes()) {
            for (int t = 1; t <= T - 1; ++t) {
                std::vector<LinTerm> terms{LinTerm{q(i, t), 1.0}};
                for (ArcId k : g.in_arcs(i))
                    terms.push_back(LinTerm{y(k, t), -ins.Q});
                row("capacity_link_" + idx(i, t), std::move(terms), Sense::le,
                    0.0);
            }
        }
        for (const Arc& a : g.arcs()) {
            for (int t = 0; t <= T - 2; ++t) {
                std::vector<LinTerm> terms{LinTerm{q(a.to, t + 1), 1.0},
                                           LinTerm{q(a.from, t), -1.0},
                                           LinTerm{x(a.to, t + 1), ins.d.at(a.to)},
                                           LinTerm{y(a.id, t + 1), -ins.Q}};
                std::string name =
                    f == Formulation::abf
                        ? "load_propagation_" + std::to_string(a.id) + "_" +
                              std::to_string(t)
                        : "load_propagation_" + std::to_string(a.from) + "_" +
                              idx(a.to, t);
                row(std::move(name), std::move(terms), Sense::ge, -ins.Q);
            }
        }
        std::vector<LinTerm> total;
        for (int t = 1; t <= T; ++t) total.push_back(LinTerm{q(0, t), 1.0});
        row("capacity_total", std::move(total), Sense::eq,
            delivery ? -ins.sum_required_demand()
                     : ins.Q - ins.sum_required_demand());
    }
};

}  // namespace

ModelSpec build_model(const Instance& ins, Formulation f) {
    Builder b(ins, f);
    b.add_variables();
    b.add_objective();
    b.add_routing();
    b.add_service();
    b.add_time();
    b.add_capacity();
    return std::move(b.m);
}

ModelSpec build_abf(const Instance& ins) {
    return build_model(ins, Formulation::abf);
}

ModelSpec build_nbf(const Instance& ins) {
    return build_model(ins, Formulation::nbf);
}

}  // namespace stsp
