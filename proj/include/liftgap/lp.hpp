// Linear program container shared by every relaxation builder and the exact
// solver, plus the one-line-per-constraint textual format.
#pragma once

#include "liftgap/rational.hpp"

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace liftgap {

enum class Rel { Le, Eq, Ge };

inline std::string rel_to_string(Rel r) {
    switch (r) {
        case Rel::Le: return "<=";
        case Rel::Eq: return "=";
        case Rel::Ge: return ">=";
    }
    return "?";
}

struct LpConstraint {
    std::map<int, Rat> coef;  // variable index -> coefficient, sparse
    Rel rel = Rel::Le;
    Rat rhs = 0;
    std::string name;
};

struct LpVariable {
    std::string name;
    std::optional<Rat> lo;  // nullopt = -infinity
    std::optional<Rat> hi;  // nullopt = +infinity
};

/// Minimization LP over named variables with rational bounds.
class LinearProgram {
public:
    int add_variable(const std::string& name, std::optional<Rat> lo = Rat(0),
                     std::optional<Rat> hi = std::nullopt) {
        if (lo && hi && *lo > *hi)
            throw std::invalid_argument("variable " + name + " has lo > hi");
        if (index_.count(name))
            throw std::invalid_argument("duplicate variable name " + name);
        vars_.push_back(LpVariable{name, std::move(lo), std::move(hi)});
        index_[name] = static_cast<int>(vars_.size()) - 1;
        return static_cast<int>(vars_.size()) - 1;
    }

    void add_constraint(std::map<int, Rat> coef, Rel rel, Rat rhs,
                        std::string name = "") {
        for (const auto& [v, c] : coef) {
            if (v < 0 || v >= static_cast<int>(vars_.size()))
                throw std::invalid_argument("constraint references unknown variable");
            (void)c;
        }
        cons_.push_back(LpConstraint{std::move(coef), rel, std::move(rhs), std::move(name)});
    }

    void set_objective(std::map<int, Rat> coef) { objective_ = std::move(coef); }
    void add_objective_term(int var, const Rat& c) {
        if (c == 0) return;
        objective_[var] += c;
        if (objective_[var] == 0) objective_.erase(var);
    }

    int variable_index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown variable " + name);
        return it->second;
    }
    bool has_variable(const std::string& name) const { return index_.count(name) > 0; }

    int num_variables() const { return static_cast<int>(vars_.size()); }
    int num_constraints() const { return static_cast<int>(cons_.size()); }
    const std::vector<LpVariable>& variables() const { return vars_; }
    const std::vector<LpConstraint>& constraints() const { return cons_; }
    const std::map<int, Rat>& objective() const { return objective_; }

    Rat objective_value(const std::vector<Rat>& point) const {
        Rat v = 0;
        for (const auto& [j, c] : objective_) v += c * point.at(j);
        return v;
    }

    Rat constraint_lhs(int row, const std::vector<Rat>& point) const {
        Rat v = 0;
        for (const auto& [j, c] : cons_.at(row).coef) v += c * point.at(j);
        return v;
    }

private:
    std::vector<LpVariable> vars_;
    std::vector<LpConstraint> cons_;
    std::map<int, Rat> objective_;
    std::unordered_map<std::string, int> index_;
};

struct ConstraintViolation {
    int constraint = -1;
    std::string name;
    Rat lhs = 0;
    Rel rel = Rel::Le;
    Rat rhs = 0;
    Rat slack = 0;  // signed distance to satisfaction; negative means violated
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<ConstraintViolation> violations;
};

/// Exact satisfaction check of every constraint and bound at `point`.
/// Violated variable bounds are reported as pseudo-constraints with
/// constraint index -1.
inline FeasibilityReport check_feasible(const std::vector<Rat>& point,
                                        const LinearProgram& lp) {
    if (static_cast<int>(point.size()) != lp.num_variables())
        throw std::invalid_argument("point dimension does not match LP");
    FeasibilityReport rep;
    for (int j = 0; j < lp.num_variables(); ++j) {
        const auto& v = lp.variables()[j];
        if (v.lo && point[j] < *v.lo)
            rep.violations.push_back({-1, v.name + ">=lo", point[j], Rel::Ge, *v.lo,
                                      point[j] - *v.lo});
        if (v.hi && point[j] > *v.hi)
            rep.violations.push_back({-1, v.name + "<=hi", point[j], Rel::Le, *v.hi,
                                      *v.hi - point[j]});
    }
    for (int r = 0; r < lp.num_constraints(); ++r) {
        const auto& c = lp.constraints()[r];
        const Rat lhs = lp.constraint_lhs(r, point);
        Rat slack = 0;
        bool ok = true;
        switch (c.rel) {
            case Rel::Le: slack = c.rhs - lhs; ok = lhs <= c.rhs; break;
            case Rel::Ge: slack = lhs - c.rhs; ok = lhs >= c.rhs; break;
            case Rel::Eq: slack = -rat_abs(lhs - c.rhs); ok = lhs == c.rhs; break;
        }
        if (!ok) rep.violations.push_back({r, c.name, lhs, c.rel, c.rhs, slack});
    }
    rep.feasible = rep.violations.empty();
    return rep;
}

inline FeasibilityReport check_feasible(const std::map<std::string, Rat>& point,
                                        const LinearProgram& lp) {
    std::vector<Rat> vec(lp.num_variables(), Rat(0));
    int assigned = 0;
    for (const auto& [name, val] : point) {
        vec[lp.variable_index(name)] = val;
        ++assigned;
    }
    if (assigned != lp.num_variables())
        throw std::invalid_argument("point does not cover all variables");
    return check_feasible(vec, lp);
}

// --- textual format ---------------------------------------------------------
//
// min: 3*y_0 1*x_0_1
// c0: 1*x_0_1 -1*y_0 <= 0
// bound: 0 <= y_0 <= 1
//
// Coefficients and rhs are rational literals ("p" or "p/q").

inline void write_lp_text(const LinearProgram& lp, std::ostream& os) {
    os << "min:";
    for (const auto& [j, c] : lp.objective())
        os << " " << rat_to_string(c) << "*" << lp.variables()[j].name;
    os << "\n";
    for (int j = 0; j < lp.num_variables(); ++j) {
        const auto& v = lp.variables()[j];
        os << "bound: " << (v.lo ? rat_to_string(*v.lo) : std::string("-inf")) << " <= "
           << v.name << " <= " << (v.hi ? rat_to_string(*v.hi) : std::string("inf"))
           << "\n";
    }
    int anon = 0;
    for (const auto& c : lp.constraints()) {
        os << (c.name.empty() ? "c" + std::to_string(anon) : c.name) << ":";
        for (const auto& [j, coef] : c.coef)
            os << " " << rat_to_string(coef) << "*" << lp.variables()[j].name;
        os << " " << rel_to_string(c.rel) << " " << rat_to_string(c.rhs) << "\n";
        ++anon;
    }
}

inline std::string lp_to_text(const LinearProgram& lp) {
    std::ostringstream os;
    write_lp_text(lp, os);
    return os.str();
}

inline LinearProgram lp_from_text(std::istream& is) {
    LinearProgram lp;
    std::string line;
    std::vector<std::string> pending_objective;
    std::vector<std::string> pending_constraints;
    // First pass collects everything; bounds declare variables in order.
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("malformed LP line: " + line);
        const std::string head = line.substr(0, colon);
        const std::string body = line.substr(colon + 1);
        if (head == "min") {
            pending_objective.push_back(body);
        } else if (head == "bound") {
            std::istringstream bs(body);
            std::string lo_s, le1, name, le2, hi_s;
            bs >> lo_s >> le1 >> name >> le2 >> hi_s;
            if (le1 != "<=" || le2 != "<=")
                throw std::invalid_argument("malformed bound line: " + line);
            std::optional<Rat> lo, hi;
            if (lo_s != "-inf") lo = rat_from_string(lo_s);
            if (hi_s != "inf") hi = rat_from_string(hi_s);
            lp.add_variable(name, lo, hi);
        } else {
            pending_constraints.push_back(line);
        }
    }
    auto parse_terms = [&lp](std::istringstream& ts, std::map<int, Rat>& coef,
                             std::string& stop_token) {
        std::string tok;
        while (ts >> tok) {
            if (tok == "<=" || tok == "=" || tok == ">=") {
                stop_token = tok;
                return;
            }
            const auto star = tok.find('*');
            if (star == std::string::npos)
                throw std::invalid_argument("malformed term: " + tok);
            const Rat c = rat_from_string(tok.substr(0, star));
            const int j = lp.variable_index(tok.substr(star + 1));
            coef[j] += c;
        }
        stop_token.clear();
    };
    for (const std::string& body : pending_objective) {
        std::istringstream ts(body);
        std::map<int, Rat> coef;
        std::string stop;
        parse_terms(ts, coef, stop);
        lp.set_objective(std::move(coef));
    }
    for (const std::string& full : pending_constraints) {
        const auto colon = full.find(':');
        std::istringstream ts(full.substr(colon + 1));
        std::map<int, Rat> coef;
        std::string stop;
        parse_terms(ts, coef, stop);
        if (stop.empty()) throw std::invalid_argument("constraint missing relation: " + full);
        Rel rel = stop == "<=" ? Rel::Le : stop == ">=" ? Rel::Ge : Rel::Eq;
        std::string rhs_s;
        ts >> rhs_s;
        lp.add_constraint(std::move(coef), rel, rat_from_string(rhs_s),
                          full.substr(0, colon));
    }
    return lp;
}

inline LinearProgram lp_from_text(const std::string& text) {
    std::istringstream is(text);
    return lp_from_text(is);
}

}  // namespace liftgap
