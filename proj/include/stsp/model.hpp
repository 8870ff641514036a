#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace stsp {

enum class Formulation { abf, nbf };

std::string to_string(Formulation f);
Formulation formulation_from_string(const std::string& s);

enum class VarKind { binary, continuous };
enum class Sense { le, ge, eq };

struct VarDef {
    std::string name;
    VarKind kind = VarKind::binary;
    double lb = 0.0;
    double ub = 1.0;  // infinity() for an unbounded continuous variable
};

/// One term of a linear expression; `var` indexes ModelSpec::variables.
struct LinTerm {
    int var = -1;
    double coef = 0.0;
};

struct ConstraintDef {
    std::string name;
    std::vector<LinTerm> terms;
    Sense sense = Sense::le;
    double rhs = 0.0;
};

/// A fully materialized mixed-integer model: variable table, minimization
/// objective, and constraint rows.  Everything downstream (LP export, the
/// feasibility checker, the benchmark size columns) works off this one
/// structure, so the builders are the only place formulation knowledge
/// lives.
struct ModelSpec {
    Formulation formulation = Formulation::abf;
    std::string name;
    std::vector<VarDef> variables;
    std::vector<LinTerm> objective;
    std::vector<ConstraintDef> constraints;
    std::map<std::string, int> var_index;

    int num_binary() const;
    int num_continuous() const;

    /// Appends a variable; the name must be new.  Returns its index.
    int add_var(const std::string& name, VarKind kind, double lb, double ub);

    /// Index lookup; throws std::invalid_argument for unknown names.
    int var(const std::string& name) const;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A candidate solution: one value per model variable, keyed by name.
using Assignment = std::map<std::string, double>;

struct Violation {
    std::string constraint;
    double amount = 0.0;  // how far past the row's rhs the lhs landed
};

struct ViolationReport {
    std::vector<Violation> violations;  // rows violated beyond tolerance
    double worst = 0.0;
    bool feasible = true;
    double objective = 0.0;
    int constraints_checked = 0;
};

/// Evaluates every constraint row of `m` at `asg`.
///
/// Malformed assignments fail fast with std::invalid_argument: a missing
/// or unknown variable name, a binary variable whose value is not exactly
/// 0 or 1, or a continuous value outside its declared bounds by more than
/// `tol`.  Well-formed assignments always yield a report; rows off by more
/// than `tol` are listed as violations.
ViolationReport check_assignment(const ModelSpec& m, const Assignment& asg,
                                 double tol = 1e-6);

/// Renders the model in CPLEX LP text format, deterministically: sections
/// Minimize / Subject To / Bounds / Binaries / End, constraint rows sorted
/// by name, terms sorted by variable index, numbers via format_sig17.
std::string export_lp(const ModelSpec& m);
void write_lp(const ModelSpec& m, const std::string& path);

/// Debug view of the full model as JSON (one top-level "model" object).
std::string model_to_json(const ModelSpec& m);

}  // namespace stsp
