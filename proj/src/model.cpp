#include "stsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stsp/errors.hpp"
#include "stsp/instance.hpp"  // format_sig17

namespace stsp {

std::string to_string(Formulation f) {
    return f == Formulation::abf ? "abf" : "nbf";
}

Formulation formulation_from_string(const std::string& s) {
    if (s == "abf") return Formulation::abf;
    if (s == "nbf") return Formulation::nbf;
    throw std::invalid_argument("unknown formulation: " + s);
}

int ModelSpec::num_binary() const {
    int n = 0;
    for (const VarDef& v : variables)
        if (v.kind == VarKind::binary) ++n;
    return n;
}

int ModelSpec::num_continuous() const {
    return static_cast<int>(variables.size()) - num_binary();
}

int ModelSpec::add_var(const std::string& vname, VarKind kind, double lb,
                       double ub) {
    if (var_index.count(vname))
        throw std::invalid_argument("duplicate variable: " + vname);
    int idx = static_cast<int>(variables.size());
    variables.push_back(VarDef{vname, kind, lb, ub});
    var_index.emplace(vname, idx);
    return idx;
}

int ModelSpec::var(const std::string& vname) const {
    auto it = var_index.find(vname);
    if (it == var_index.end())
        throw std::invalid_argument("unknown variable: " + vname);
    return it->second;
}

ViolationReport check_assignment(const ModelSpec& m, const Assignment& asg,
                                 double tol) {
    std::vector<double> vals(m.variables.size(), 0.0);
    for (const auto& [name, value] : asg) {
        auto it = m.var_index.find(name);
        if (it == m.var_index.end())
            throw std::invalid_argument("assignment names unknown variable: " +
                                        name);
        vals[it->second] = value;
    }
    for (std::size_t i = 0; i < m.variables.size(); ++i) {
        const VarDef& v = m.variables[i];
        if (!asg.count(v.name))
            throw std::invalid_argument("assignment missing variable: " +
                                        v.name);
        double x = vals[i];
        if (v.kind == VarKind::binary) {
            if (x != 0.0 && x != 1.0)
                throw std::invalid_argument("binary variable " + v.name +
                                            " set to non-binary value " +
                                            format_sig17(x));
        }
        if (x < v.lb - tol || x > v.ub + tol)
            throw std::invalid_argument("variable " + v.name +
                                        " outside bounds: " + format_sig17(x));
    }

    ViolationReport rep;
    rep.constraints_checked = static_cast<int>(m.constraints.size());
    for (const ConstraintDef& c : m.constraints) {
        double lhs = 0.0;
        for (const LinTerm& t : c.terms) lhs += t.coef * vals[t.var];
        double over = 0.0;
        switch (c.sense) {
            case Sense::le: over = lhs - c.rhs; break;
            case Sense::ge: over = c.rhs - lhs; break;
            case Sense::eq: over = std::fabs(lhs - c.rhs); break;
        }
        if (over > tol) {
            rep.violations.push_back(Violation{c.name, over});
            rep.worst = std::max(rep.worst, over);
        }
    }
    rep.feasible = rep.violations.empty();
    for (const LinTerm& t : m.objective) rep.objective += t.coef * vals[t.var];
    return rep;
}

namespace {

void append_terms(std::string& out, const ModelSpec& m,
                  std::vector<LinTerm> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
    bool first = true;
    for (const LinTerm& t : terms) {
        if (t.coef == 0.0) continue;
        double mag = std::fabs(t.coef);
        if (first) {
            if (t.coef < 0.0) out += "- ";
        } else {
            out += (t.coef < 0.0) ? " - " : " + ";
        }
        out += format_sig17(mag);
        out += ' ';
        out += m.variables[t.var].name;
        first = false;
    }
    if (first) {
        // empty row: keep the file syntactically valid
        out += "0 ";
        out += m.variables.front().name;
    }
}

}  // namespace

std::string export_lp(const ModelSpec& m) {
    if (m.variables.empty())
        throw std::invalid_argument("export_lp: model has no variables");
    std::string out;
    out += "\\ ";
    out += m.name;
    out += "\nMinimize\n obj: ";
    append_terms(out, m, m.objective);
    out += "\nSubject To\n";

    std::vector<const ConstraintDef*> rows;
    rows.reserve(m.constraints.size());
    for (const ConstraintDef& c : m.constraints) rows.push_back(&c);
    std::sort(rows.begin(), rows.end(),
              [](const ConstraintDef* a, const ConstraintDef* b) {
                  return a->name < b->name;
              });
    for (const ConstraintDef* c : rows) {
        out += ' ';
        out += c->name;
        out += ": ";
        append_terms(out, m, c->terms);
        switch (c->sense) {
            case Sense::le: out += " <= "; break;
            case Sense::ge: out += " >= "; break;
            case Sense::eq: out += " = "; break;
        }
        out += format_sig17(c->rhs);
        out += '\n';
    }

    out += "Bounds\n";
    for (const VarDef& v : m.variables) {
        if (v.kind == VarKind::binary) continue;
        if (std::isinf(v.ub)) {
            out += ' ';
            out += v.name;
            out += " >= ";
            out += format_sig17(v.lb);
            out += '\n';
        } else {
            out += ' ';
            out += format_sig17(v.lb);
            out += " <= ";
            out += v.name;
            out += " <= ";
            out += format_sig17(v.ub);
            out += '\n';
        }
    }

    out += "Binaries\n";
    std::string line;
    for (const VarDef& v : m.variables) {
        if (v.kind != VarKind::binary) continue;
        if (line.size() + v.name.size() + 1 > 200) {
            out += line;
            out += '\n';
            line.clear();
        }
        line += ' ';
        line += v.name;
    }
    if (!line.empty()) {
        out += line;
        out += '\n';
    }
    out += "End\n";
    return out;
}

void write_lp(const ModelSpec& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << export_lp(m);
    if (!f.good()) throw IoError("write failed: " + path);
}

namespace {

void append_json_escaped(std::string& out, const std::string& s) {
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
            out += ch;
        } else {
            out += ch;
        }
    }
}

}  // namespace

std::string model_to_json(const ModelSpec& m) {
    std::string out;
    out += "{\"model\":{";
    out += "\"name\":\"";
    append_json_escaped(out, m.name);
    out += "\",\"formulation\":\"";
    out += to_string(m.formulation);
    out += "\",\"num_binary\":" + std::to_string(m.num_binary());
    out += ",\"num_continuous\":" + std::to_string(m.num_continuous());
    out += ",\"num_constraints\":" + std::to_string(m.constraints.size());
    out += ",\"variables\":[";
    for (std::size_t i = 0; i < m.variables.size(); ++i) {
        const VarDef& v = m.variables[i];
        if (i) out += ',';
        out += "{\"name\":\"";
        append_json_escaped(out, v.name);
        out += "\",\"kind\":\"";
        out += (v.kind == VarKind::binary) ? "binary" : "continuous";
        out += "\",\"lb\":" + format_sig17(v.lb);
        out += ",\"ub\":";
        out += std::isinf(v.ub) ? std::string("null") : format_sig17(v.ub);
        out += '}';
    }
    out += "],\"objective\":[";
    for (std::size_t i = 0; i < m.objective.size(); ++i) {
        if (i) out += ',';
        out += "{\"var\":\"";
        append_json_escaped(out, m.variables[m.objective[i].var].name);
        out += "\",\"coef\":" + format_sig17(m.objective[i].coef) + '}';
    }
    out += "],\"constraints\":[";
    for (std::size_t i = 0; i < m.constraints.size(); ++i) {
        const ConstraintDef& c = m.constraints[i];
        if (i) out += ',';
        out += "{\"name\":\"";
        append_json_escaped(out, c.name);
        out += "\",\"sense\":\"";
        switch (c.sense) {
            case Sense::le: out += "le"; break;
            case Sense::ge: out += "ge"; break;
            case Sense::eq: out += "eq"; break;
        }
        out += "\",\"rhs\":" + format_sig17(c.rhs);
        out += ",\"terms\":[";
        for (std::size_t j = 0; j < c.terms.size(); ++j) {
            if (j) out += ',';
            out += "{\"var\":\"";
            append_json_escaped(out, m.variables[c.terms[j].var].name);
            out += "\",\"coef\":" + format_sig17(c.terms[j].coef) + '}';
        }
        out += "]}";
    }
    out += "]}}";
    return out;
}

}  // namespace stsp
