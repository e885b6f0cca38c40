// Lift-and-project machinery: cone membership after m rounds of the N
// operator, decided two independent ways (a flattened exact feasibility
// system in cone form, and a witness-row encoding of the one-round survival
// conditions), plus the structural checks used to verify explicit protection
// matrices, and the exact PSD test for the restricted matrices.
#pragma once

#include "liftgap/errors.hpp"
#include "liftgap/lp.hpp"
#include "liftgap/rational.hpp"
#include "liftgap/solver.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace liftgap {

/// Homogenized point: z0 is the cone coordinate, coords are aligned with the
/// variables of the polytope's LP.
struct ConeVector {
    Rat z0 = 1;
    std::vector<Rat> coords;
};

/// Homogenization of an LP's feasible region: every constraint and bound
/// becomes sum(coef_v * u_v) + coef0 * u_0 REL 0, plus u_0 >= 0.
struct ConeSystem {
    struct Row {
        std::map<int, Rat> coef;  // variable index -> coefficient
        Rat coef0 = 0;            // coefficient on the homogenizing coordinate
        Rel rel = Rel::Le;
    };
    int dim = 0;
    std::vector<Row> rows;
};

inline ConeSystem cone_of(const LinearProgram& lp) {
    ConeSystem cs;
    cs.dim = lp.num_variables();
    for (const auto& c : lp.constraints()) {
        ConeSystem::Row row;
        row.coef = c.coef;
        row.coef0 = -c.rhs;
        row.rel = c.rel;
        cs.rows.push_back(std::move(row));
    }
    for (int j = 0; j < cs.dim; ++j) {
        const auto& v = lp.variables()[j];
        if (v.lo) {
            ConeSystem::Row row;
            row.coef[j] = 1;
            row.coef0 = -*v.lo;
            row.rel = Rel::Ge;
            cs.rows.push_back(std::move(row));
        }
        if (v.hi) {
            ConeSystem::Row row;
            row.coef[j] = 1;
            row.coef0 = -*v.hi;
            row.rel = Rel::Le;
            cs.rows.push_back(std::move(row));
        }
    }
    ConeSystem::Row nonneg;
    nonneg.coef0 = 1;
    nonneg.rel = Rel::Ge;
    cs.rows.push_back(std::move(nonneg));
    return cs;
}

namespace detail {

/// Affine expression over the variables of a feasibility LP under
/// construction.
struct Expr {
    std::map<int, Rat> lin;
    Rat cst = 0;

    static Expr constant(const Rat& c) { return Expr{{}, c}; }
    static Expr variable(int v) { return Expr{{{v, Rat(1)}}, Rat(0)}; }

    Expr operator-(const Expr& o) const {
        Expr r = *this;
        for (const auto& [v, c] : o.lin) {
            r.lin[v] -= c;
            if (r.lin[v] == 0) r.lin.erase(v);
        }
        r.cst -= o.cst;
        return r;
    }
};

struct MembershipBuilder {
    const ConeSystem& K;
    LinearProgram out;
    long long rows_budget;
    long long vars_budget;

    void require_in_cone_power(const std::vector<Expr>& u, int level) {
        if (level == 0) {
            for (const auto& row : K.rows) {
                Expr e = Expr::constant(0);
                // coef0 * u0 + sum coef_v * u_{v+1}
                accumulate(e, row.coef0, u[0]);
                for (const auto& [v, c] : row.coef) accumulate(e, c, u[v + 1]);
                if (out.num_constraints() >= rows_budget)
                    throw BudgetExceeded("membership system exceeded row budget");
                out.add_constraint(e.lin, row.rel, -e.cst);
            }
            return;
        }
        // Fresh symmetric matrix W with first row and diagonal pinned to u.
        const int d = K.dim;
        std::vector<std::vector<Expr>> W(d + 1, std::vector<Expr>(d + 1));
        for (int k = 0; k <= d; ++k) {
            W[0][k] = u[k];
            W[k][0] = u[k];
            W[k][k] = u[k];
        }
        for (int p = 1; p <= d; ++p)
            for (int q = p + 1; q <= d; ++q) {
                if (out.num_variables() >= vars_budget)
                    throw BudgetExceeded("membership system exceeded variable budget");
                const int v = out.add_variable(
                    "w" + std::to_string(out.num_variables()), std::nullopt, std::nullopt);
                W[p][q] = Expr::variable(v);
                W[q][p] = W[p][q];
            }
        for (int i = 1; i <= d; ++i) {
            std::vector<Expr> col(d + 1), rest(d + 1);
            for (int k = 0; k <= d; ++k) {
                col[k] = W[k][i];
                rest[k] = W[k][0] - W[k][i];
            }
            require_in_cone_power(col, level - 1);
            require_in_cone_power(rest, level - 1);
        }
    }

    static void accumulate(Expr& e, const Rat& scale, const Expr& term) {
        if (scale == 0) return;
        for (const auto& [v, c] : term.lin) {
            e.lin[v] += scale * c;
            if (e.lin[v] == 0) e.lin.erase(v);
        }
        e.cst += scale * term.cst;
    }
};

}  // namespace detail

/// Decides membership of z (given at z0 = 1) in the polytope refined by
/// `rounds` applications of the lifting operator, by one exact feasibility
/// solve of the recursively flattened matrix conditions: the top matrix has
/// its first row and diagonal pinned to z, and every column quotient must
/// recursively lie in the previous level, bottoming out at the cone rows.
/// Level 0 is a plain feasibility check.
inline bool brute_membership(const LinearProgram& K, const std::vector<Rat>& z,
                             int rounds, long long rows_budget = 40000,
                             long long vars_budget = 8000) {
    if (rounds < 0 || rounds > 3)
        throw std::invalid_argument("membership oracle supports 0..3 rounds");
    if (K.num_variables() > 12)
        throw BudgetExceeded("membership oracle limited to 12 variables");
    if (rounds >= 2 && K.num_variables() > 8)
        throw BudgetExceeded("membership beyond one round limited to 8 variables");
    if (rounds == 0) return check_feasible(z, K).feasible;

    const ConeSystem cone = cone_of(K);
    detail::MembershipBuilder builder{cone, LinearProgram{}, rows_budget, vars_budget};
    std::vector<detail::Expr> u(cone.dim + 1);
    u[0] = detail::Expr::constant(1);
    for (int v = 0; v < cone.dim; ++v) u[v + 1] = detail::Expr::constant(z[v]);
    builder.require_in_cone_power(u, rounds);
    const LpSolution sol = solve_lp(builder.out);
    // Both answers are load-bearing; accept neither without its certificate.
    if (sol.status == LpStatus::Optimal) {
        verify_optimal_certificate(builder.out, sol);
        return true;
    }
    if (sol.status == LpStatus::Infeasible) {
        verify_infeasibility_certificate(builder.out, sol);
        return false;
    }
    throw std::logic_error("membership system neither feasible nor refuted");
}

struct ProtectionMatrixView;
inline std::optional<ProtectionMatrixView> protection_matrix_find(
    const LinearProgram& K, const std::vector<Rat>& z);

/// One-round survival decided through the projected conditions instead: one
/// witness-row vector per fractional coordinate, diagonal ones, integral
/// coordinates replicated, pairwise symmetry, and both quotients inside the
/// polytope. Structurally a different encoding from brute_membership, which
/// makes the two usable as independent oracles of each other.
/// protection_matrix_find additionally materializes the witness matrix the
/// feasibility solve produced, so the explicit row checker can re-verify it.
inline bool protection_matrix_exists_impl(const LinearProgram& K,
                                          const std::vector<Rat>& z,
                                          LpSolution* solution_out,
                                          std::map<int, std::vector<int>>* vars_out) {
    // Membership after one round implies membership in K (the fractional
    // quotient rows re-derive this, but integral points need it explicitly).
    if (!check_feasible(z, K).feasible) return false;
    const int d = K.num_variables();
    const ConeSystem cone = cone_of(K);
    std::vector<int> fractional;
    for (int i = 0; i < d; ++i)
        if (z[i] != 0 && z[i] != 1) fractional.push_back(i);

    LinearProgram lp;
    std::map<int, std::vector<int>> w;  // witness coordinates per fractional var
    for (int i : fractional) {
        auto& vars = w[i];
        for (int k = 0; k < d; ++k)
            vars.push_back(lp.add_variable("w_" + std::to_string(i) + "_" + std::to_string(k),
                                           std::nullopt, std::nullopt));
    }
    for (int i : fractional) {
        lp.add_constraint({{w[i][i], Rat(1)}}, Rel::Eq, Rat(1));
        for (int t = 0; t < d; ++t)
            if (z[t] == 0 || z[t] == 1)
                lp.add_constraint({{w[i][t], Rat(1)}}, Rel::Eq, z[t]);
        // Type-1 witness inside K (z0 = 1): coef0 + sum coef_v w_i[v] REL 0.
        for (const auto& row : cone.rows) {
            std::map<int, Rat> lhs;
            for (const auto& [v, c] : row.coef) lhs[w[i][v]] += c;
            lp.add_constraint(std::move(lhs), row.rel, -row.coef0);
        }
        // Type-2 witness (z - z_i w_i) / (1 - z_i) inside K; scaled by the
        // positive factor (1 - z_i) the rows stay linear in w_i.
        for (const auto& row : cone.rows) {
            std::map<int, Rat> lhs;
            Rat constant = row.coef0 * (1 - z[i]);
            for (const auto& [v, c] : row.coef) {
                constant += c * z[v];
                lhs[w[i][v]] -= c * z[i];
            }
            lp.add_constraint(std::move(lhs), row.rel, -constant);
        }
    }
    for (size_t a = 0; a < fractional.size(); ++a)
        for (size_t b = a + 1; b < fractional.size(); ++b) {
            const int q = fractional[a], t = fractional[b];
            lp.add_constraint({{w[q][t], z[q]}, {w[t][q], -z[t]}}, Rel::Eq, Rat(0));
        }
    LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::Optimal) verify_optimal_certificate(lp, sol);
    else if (sol.status == LpStatus::Infeasible) verify_infeasibility_certificate(lp, sol);
    else throw std::logic_error("witness system neither feasible nor refuted");
    const bool ok = sol.status == LpStatus::Optimal;
    if (solution_out) *solution_out = std::move(sol);
    if (vars_out) *vars_out = std::move(w);
    return ok;
}

inline bool protection_matrix_exists(const LinearProgram& K, const std::vector<Rat>& z) {
    return protection_matrix_exists_impl(K, z, nullptr, nullptr);
}

// --- explicit protection matrix views ------------------------------------------

/// Row-structured view of a protection matrix: explicit rows for fractional
/// coordinates, structural zero rows for zero coordinates, and unit rows
/// (equal to the base vector) implied for coordinates at one.
struct ProtectionMatrixView {
    ConeVector base;                 // z, with z0 = 1
    std::map<int, ConeVector> rows;  // Y_i as stored: coords scaled by z_i
    std::set<int> zero_rows;
};

struct ProtectionViolation {
    std::string condition;
    int i = -1;
    int k = -1;
    Rat lhs = 0;
    Rat rhs = 0;
};

struct ProtectionCheckResult {
    bool ok = true;
    std::vector<ProtectionViolation> violations;
};

/// Materialized one-round witness matrix from the existence LP, or nullopt
/// when none exists. The returned view carries the scaled rows z_i * w_i for
/// every fractional coordinate plus structural zero rows.
inline std::optional<ProtectionMatrixView> protection_matrix_find(
    const LinearProgram& K, const std::vector<Rat>& z) {
    LpSolution sol;
    std::map<int, std::vector<int>> vars;
    if (!protection_matrix_exists_impl(K, z, &sol, &vars)) return std::nullopt;
    const int d = K.num_variables();
    ProtectionMatrixView view;
    view.base = ConeVector{Rat(1), z};
    for (int i = 0; i < d; ++i) {
        if (z[i] == 0) {
            view.zero_rows.insert(i);
            continue;
        }
        if (z[i] == 1) continue;  // unit rows are implied
        ConeVector row;
        row.z0 = z[i];
        row.coords.resize(d);
        for (int k = 0; k < d; ++k) row.coords[k] = z[i] * sol.values[vars.at(i)[k]];
        view.rows[i] = std::move(row);
    }
    return view;
}

using MembershipOracle = std::function<bool(const std::vector<Rat>&)>;

inline MembershipOracle feasibility_oracle(const LinearProgram& K) {
    return [&K](const std::vector<Rat>& v) { return check_feasible(v, K).feasible; };
}

/// Verifies every survival condition of the view: first-column/diagonal
/// agreement with the base, structural zero and unit rows, symmetry of all
/// entries, and both quotient vectors of every fractional coordinate passing
/// the previous-level oracle.
inline ProtectionCheckResult protection_matrix_check(const ProtectionMatrixView& view,
                                                     const MembershipOracle& prev_level) {
    const int d = static_cast<int>(view.base.coords.size());
    ProtectionCheckResult res;
    auto fail = [&res](std::string cond, int i, int k, Rat lhs, Rat rhs) {
        res.ok = false;
        res.violations.push_back({std::move(cond), i, k, std::move(lhs), std::move(rhs)});
    };
    if (view.base.z0 != 1) fail("base not on the z0=1 slice", -1, -1, view.base.z0, Rat(1));

    // entry(i,k): k = -1 addresses the homogenizing column.
    auto entry = [&](int i, int k) -> Rat {
        const Rat zi = view.base.coords[i];
        auto it = view.rows.find(i);
        if (it != view.rows.end())
            return k < 0 ? it->second.z0 : it->second.coords[k];
        if (zi == 0) return 0;
        if (zi == 1) return k < 0 ? Rat(1) : view.base.coords[k];
        return 0;  // reported as missing below
    };

    for (int i = 0; i < d; ++i) {
        const Rat zi = view.base.coords[i];
        const bool has_row = view.rows.count(i) > 0;
        if (zi == 0) {
            if (!view.zero_rows.count(i) && !has_row)
                fail("zero coordinate missing from zero_rows", i, -1, zi, Rat(0));
            if (has_row) {
                const auto& r = view.rows.at(i);
                if (r.z0 != 0) fail("zero row has nonzero column 0", i, -1, r.z0, Rat(0));
                for (int k = 0; k < d; ++k)
                    if (r.coords[k] != 0) fail("zero row has nonzero entry", i, k,
                                               r.coords[k], Rat(0));
            }
            continue;
        }
        if (zi != 1 && !has_row) {
            fail("missing row for fractional coordinate", i, -1, zi, Rat(0));
            continue;
        }
        // Diagonal and first column: Y_i0 = Y_ii = z_i.
        if (entry(i, -1) != zi) fail("first column disagrees with base", i, -1,
                                     entry(i, -1), zi);
        if (entry(i, i) != zi) fail("diagonal disagrees with base", i, i, entry(i, i), zi);
        if (zi == 1 && has_row) {
            const auto& r = view.rows.at(i);
            for (int k = 0; k < d; ++k)
                if (r.coords[k] != view.base.coords[k])
                    fail("unit row differs from base", i, k, r.coords[k],
                         view.base.coords[k]);
        }
    }
    if (!res.ok) return res;

    for (int i = 0; i < d; ++i)
        for (int k = i + 1; k < d; ++k) {
            const Rat a = entry(i, k), b = entry(k, i);
            if (a != b) fail("symmetry", i, k, a, b);
        }
    if (!res.ok) return res;

    for (int i = 0; i < d; ++i) {
        const Rat zi = view.base.coords[i];
        if (zi == 0 || zi == 1) continue;
        const auto& r = view.rows.at(i);
        std::vector<Rat> type1(d), type2(d);
        for (int k = 0; k < d; ++k) {
            type1[k] = r.coords[k] / zi;
            type2[k] = (view.base.coords[k] - r.coords[k]) / (1 - zi);
        }
        if (!prev_level(type1)) fail("type-1 quotient outside previous level", i, -1, zi, Rat(0));
        if (!prev_level(type2)) fail("type-2 quotient outside previous level", i, -1, zi, Rat(0));
    }
    return res;
}

// --- witness pairs and their structural claims ----------------------------------

struct WitnessPair {
    int variable = -1;
    std::optional<std::vector<Rat>> type1;  // defined iff z_var != 0
    std::optional<std::vector<Rat>> type2;  // defined iff z_var != 1
};

struct SymmetryCheckResult {
    bool ok = true;
    int violating_q = -1;
    int violating_t = -1;
    std::string condition;
};

/// Pairwise factor symmetry: if the type-1 witness for q scales coordinate t
/// by f, the type-1 witness for t must scale coordinate q by the same f; and
/// integral coordinates are preserved verbatim in every witness.
inline SymmetryCheckResult symmetry_factor_check(const std::vector<Rat>& z,
                                                 const std::vector<WitnessPair>& witnesses) {
    SymmetryCheckResult res;
    auto fail = [&res](int q, int t, std::string cond) {
        res.ok = false;
        res.violating_q = q;
        res.violating_t = t;
        res.condition = std::move(cond);
    };
    for (const auto& wp : witnesses) {
        if (z[wp.variable] != 0) {
            if (!wp.type1) {
                fail(wp.variable, -1, "missing type-1 witness");
                return res;
            }
            if ((*wp.type1)[wp.variable] != 1) {
                fail(wp.variable, -1, "type-1 witness does not set its own coordinate to 1");
                return res;
            }
        }
        for (int t = 0; t < static_cast<int>(z.size()); ++t) {
            if (z[t] != 0 && z[t] != 1) continue;
            if (t == wp.variable) continue;
            if (wp.type1 && (*wp.type1)[t] != z[t]) {
                fail(wp.variable, t, "type-1 witness changes an integral coordinate");
                return res;
            }
            if (wp.type2 && (*wp.type2)[t] != z[t]) {
                fail(wp.variable, t, "type-2 witness changes an integral coordinate");
                return res;
            }
        }
    }
    for (const auto& wq : witnesses) {
        if (!wq.type1) continue;
        for (const auto& wt : witnesses) {
            if (wt.variable == wq.variable || !wt.type1) continue;
            const int q = wq.variable, t = wt.variable;
            if (z[q] == 0 || z[t] == 0) continue;
            // (*wq.type1)[t] = z_t * f  must imply  (*wt.type1)[q] = z_q * f.
            if ((*wq.type1)[t] * z[q] != (*wt.type1)[q] * z[t]) {
                fail(q, t, "cross factors disagree");
                return res;
            }
        }
    }
    return res;
}

/// The twin of a type-1 witness: (z - z_t * type1) / (1 - z_t). Coordinate t
/// of the result is zero, and z_t * type1 + (1 - z_t) * twin reconstructs z.
inline std::vector<Rat> twin_type2(const std::vector<Rat>& z,
                                   const std::vector<Rat>& type1, int t) {
    if (z[t] == 1) throw std::invalid_argument("twin undefined for a coordinate at one");
    std::vector<Rat> out(z.size());
    for (size_t q = 0; q < z.size(); ++q)
        out[q] = (z[q] - z[t] * type1[q]) / (1 - z[t]);
    return out;
}

// --- exact PSD restriction check -------------------------------------------------

struct PsdReport {
    bool psd = false;
    std::vector<Rat> pivots;
};

/// Exact PSD test of a symmetric rational matrix by LDL^T with diagonal
/// pivoting: pick the largest remaining diagonal; a negative one refutes, an
/// all-zero diagonal with any nonzero remaining entry refutes, otherwise
/// eliminate and continue. All recorded pivots are nonnegative on success.
inline PsdReport psd_check_matrix(std::vector<std::vector<Rat>> M) {
    const int d = static_cast<int>(M.size());
    PsdReport rep;
    std::vector<bool> active(d, true);
    for (int step = 0; step < d; ++step) {
        int p = -1;
        for (int i = 0; i < d; ++i)
            if (active[i] && (p == -1 || M[i][i] > M[p][p])) p = i;
        if (p == -1) break;
        if (M[p][p] < 0) return rep;  // psd stays false
        if (M[p][p] == 0) {
            // Largest diagonal is zero: PSD iff the remaining block vanishes.
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    if (active[r] && active[c] && M[r][c] != 0) return rep;
            break;
        }
        rep.pivots.push_back(M[p][p]);
        active[p] = false;
        for (int r = 0; r < d; ++r) {
            if (!active[r] || M[r][p] == 0) continue;
            const Rat f = M[r][p] / M[p][p];
            for (int c = 0; c < d; ++c)
                if (active[c] && M[p][c] != 0) M[r][c] -= f * M[p][c];
        }
    }
    rep.psd = true;
    return rep;
}

/// Forms y y^T + Diag(y - y^2) for y in [0,1]^d and tests it exactly.
inline PsdReport psd_restriction_check(const std::vector<Rat>& y) {
    const int d = static_cast<int>(y.size());
    for (const Rat& v : y)
        if (v < 0 || v > 1)
            throw std::invalid_argument("psd restriction check needs entries in [0,1]");
    std::vector<std::vector<Rat>> M(d, std::vector<Rat>(d));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            M[r][c] = y[r] * y[c];
            if (r == c) M[r][c] += y[r] - y[r] * y[r];
        }
    return psd_check_matrix(std::move(M));
}

}  // namespace liftgap
