// Exact rational LP solver: two-phase primal simplex on a canonicalized
// nonnegative form, with Bland's rule for anti-cycling and verifiable
// optimality / infeasibility certificates.
//
// No floating point anywhere: every pivot, every certificate check is done in
// GMP rationals, so "optimal" and "infeasible" are exact statements.
#pragma once

#include "liftgap/errors.hpp"
#include "liftgap/lp.hpp"
#include "liftgap/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liftgap {

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline std::string lp_status_to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rat> values;      // per original variable, Optimal only
    Rat objective_value = 0;      // Optimal only
    std::vector<Rat> dual;        // per canonical row, Optimal only
    std::vector<Rat> farkas;      // per canonical row, Infeasible only
    long long pivots = 0;
};

// --- canonical nonnegative form ---------------------------------------------
//
// Original variables are shifted / flipped / split so that every canonical
// variable is >= 0; finite upper widths become explicit rows appended after
// the original constraint rows.

struct CanonicalLp {
    enum class MapKind { Shift, Flip, Split };
    struct VarMap {
        MapKind kind;
        int hat1 = -1;
        int hat2 = -1;  // Split only
        Rat base = 0;   // Shift: x = base + x^; Flip: x = base - x^
    };

    int n_hat = 0;
    std::vector<std::map<int, Rat>> row_coef;
    std::vector<Rel> row_rel;
    std::vector<Rat> row_rhs;
    std::map<int, Rat> obj;
    Rat obj_shift = 0;
    std::vector<VarMap> var_map;   // per original variable
    int n_original_rows = 0;       // rows [0, n_original_rows) mirror lp.constraints()

    Rat row_lhs(int r, const std::vector<Rat>& xhat) const {
        Rat v = 0;
        for (const auto& [j, c] : row_coef[r]) v += c * xhat[j];
        return v;
    }
    Rat obj_value(const std::vector<Rat>& xhat) const {
        Rat v = obj_shift;
        for (const auto& [j, c] : obj) v += c * xhat[j];
        return v;
    }
};

inline CanonicalLp canonicalize(const LinearProgram& lp) {
    CanonicalLp c;
    c.var_map.resize(lp.num_variables());
    std::vector<std::pair<int, Rat>> width_rows;  // (hat var, width) for finite [lo,hi]
    for (int j = 0; j < lp.num_variables(); ++j) {
        const auto& v = lp.variables()[j];
        auto& m = c.var_map[j];
        if (v.lo) {
            m.kind = CanonicalLp::MapKind::Shift;
            m.base = *v.lo;
            m.hat1 = c.n_hat++;
            if (v.hi) width_rows.emplace_back(m.hat1, *v.hi - *v.lo);
        } else if (v.hi) {
            m.kind = CanonicalLp::MapKind::Flip;
            m.base = *v.hi;
            m.hat1 = c.n_hat++;
        } else {
            m.kind = CanonicalLp::MapKind::Split;
            m.hat1 = c.n_hat++;
            m.hat2 = c.n_hat++;
        }
    }
    auto substitute = [&c](const std::map<int, Rat>& coef, std::map<int, Rat>& out,
                           Rat& constant) {
        for (const auto& [j, a] : coef) {
            const auto& m = c.var_map[j];
            switch (m.kind) {
                case CanonicalLp::MapKind::Shift:
                    constant += a * m.base;
                    out[m.hat1] += a;
                    break;
                case CanonicalLp::MapKind::Flip:
                    constant += a * m.base;
                    out[m.hat1] -= a;
                    break;
                case CanonicalLp::MapKind::Split:
                    out[m.hat1] += a;
                    out[m.hat2] -= a;
                    break;
            }
        }
        for (auto it = out.begin(); it != out.end();)
            it = it->second == 0 ? out.erase(it) : std::next(it);
    };
    for (const auto& con : lp.constraints()) {
        std::map<int, Rat> row;
        Rat constant = 0;
        substitute(con.coef, row, constant);
        c.row_coef.push_back(std::move(row));
        c.row_rel.push_back(con.rel);
        c.row_rhs.push_back(con.rhs - constant);
    }
    c.n_original_rows = static_cast<int>(c.row_coef.size());
    for (const auto& [hat, width] : width_rows) {
        c.row_coef.push_back({{hat, Rat(1)}});
        c.row_rel.push_back(Rel::Le);
        c.row_rhs.push_back(width);
    }
    Rat cshift = 0;
    substitute(lp.objective(), c.obj, cshift);
    c.obj_shift = cshift;
    return c;
}

inline std::vector<Rat> canonical_point(const CanonicalLp& c,
                                        const std::vector<Rat>& original) {
    std::vector<Rat> xhat(c.n_hat, Rat(0));
    for (size_t j = 0; j < c.var_map.size(); ++j) {
        const auto& m = c.var_map[j];
        switch (m.kind) {
            case CanonicalLp::MapKind::Shift: xhat[m.hat1] = original[j] - m.base; break;
            case CanonicalLp::MapKind::Flip: xhat[m.hat1] = m.base - original[j]; break;
            case CanonicalLp::MapKind::Split:
                if (original[j] >= 0) xhat[m.hat1] = original[j];
                else xhat[m.hat2] = -original[j];
                break;
        }
    }
    return xhat;
}

// --- simplex core ------------------------------------------------------------

/// Memory cap honored by the big allocators, overridable via LIFTGAP_BUDGET_MB.
inline long long env_budget_mb() {
    if (const char* env = std::getenv("LIFTGAP_BUDGET_MB")) {
        const long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 4096;
}

class SimplexSolver {
public:
    struct Options {
        long long max_pivots = 2'000'000;
        int bland_after_degenerate = 40;  // switch to Bland after this streak
        long long budget_mb = env_budget_mb();
    };

    SimplexSolver() = default;
    explicit SimplexSolver(Options opt) : opt_(opt) {}

    LpSolution solve(const LinearProgram& lp) {
        const CanonicalLp canon = canonicalize(lp);
        LpSolution sol = solve_canonical(canon);
        if (sol.status == LpStatus::Optimal) {
            sol.values.assign(lp.num_variables(), Rat(0));
            for (int j = 0; j < lp.num_variables(); ++j) {
                const auto& m = canon.var_map[j];
                switch (m.kind) {
                    case CanonicalLp::MapKind::Shift:
                        sol.values[j] = m.base + xhat_[m.hat1];
                        break;
                    case CanonicalLp::MapKind::Flip:
                        sol.values[j] = m.base - xhat_[m.hat1];
                        break;
                    case CanonicalLp::MapKind::Split:
                        sol.values[j] = xhat_[m.hat1] - xhat_[m.hat2];
                        break;
                }
            }
            sol.objective_value = lp.objective_value(sol.values);
        }
        return sol;
    }

    /// Solves the canonical form directly; primal values land in xhat().
    LpSolution solve_canonical(const CanonicalLp& canon) {
        build_tableau(canon);
        LpSolution sol;

        // Phase 1: minimize the sum of artificials (always bounded below).
        set_phase_costs(/*phase1=*/true);
        optimize();
        sol.pivots = pivots_;
        if (zvalue_ != 0) {
            sol.status = LpStatus::Infeasible;
            sol.farkas = extract_duals(/*phase1=*/true);
            return sol;
        }
        drive_out_artificials();

        // Phase 2: minimize the real objective with artificials barred.
        for (int k = 0; k < ncols_; ++k)
            if (is_artificial_[k]) allowed_[k] = false;
        set_phase_costs(/*phase1=*/false);
        const bool bounded = optimize();
        sol.pivots = pivots_;
        if (!bounded) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        sol.status = LpStatus::Optimal;
        xhat_.assign(nhat_, Rat(0));
        for (int r = 0; r < m_; ++r)
            if (basis_[r] < nhat_) xhat_[basis_[r]] = rhs_[r];
        sol.objective_value = canon.obj_value(xhat_);
        sol.dual = extract_duals(/*phase1=*/false);
        return sol;
    }

    const std::vector<Rat>& xhat() const { return xhat_; }

private:
    Options opt_{};
    int m_ = 0;      // tableau rows (may shrink when redundant rows are dropped)
    int nhat_ = 0;   // structural canonical variables
    int ncols_ = 0;  // structural + slack + artificial
    std::vector<std::vector<Rat>> T_;
    std::vector<Rat> rhs_;
    std::vector<int> basis_;
    std::vector<Rat> cost_;   // phase cost per column
    std::vector<Rat> drow_;   // reduced costs, maintained under pivots
    Rat zvalue_ = 0;          // current phase objective value
    std::vector<bool> allowed_;
    std::vector<bool> is_artificial_;
    std::vector<int> art_col_of_row_;   // artificial column of each tableau row
    std::vector<int> canon_row_of_;     // tableau row -> canonical row index
    std::vector<bool> row_flipped_;     // per canonical row
    int n_canon_rows_ = 0;
    std::map<int, Rat> phase2_obj_;
    std::vector<Rat> xhat_;
    long long pivots_ = 0;
    bool bland_ = false;
    int degenerate_streak_ = 0;

    void build_tableau(const CanonicalLp& canon) {
        nhat_ = canon.n_hat;
        n_canon_rows_ = static_cast<int>(canon.row_coef.size());
        m_ = n_canon_rows_;
        row_flipped_.assign(n_canon_rows_, false);

        // Column layout: [0, nhat) structural, then one slack per inequality
        // row, then one artificial per row.
        int n_slack = 0;
        for (Rel r : canon.row_rel)
            if (r != Rel::Eq) ++n_slack;
        ncols_ = nhat_ + n_slack + m_;

        const long long approx_bytes =
            static_cast<long long>(m_) * (ncols_ + 1) * 48;
        if (approx_bytes > opt_.budget_mb * 1024 * 1024)
            throw BudgetExceeded("simplex tableau of " + std::to_string(m_) + "x" +
                                 std::to_string(ncols_) + " exceeds LIFTGAP_BUDGET_MB");

        T_.assign(m_, std::vector<Rat>(ncols_, Rat(0)));
        rhs_.assign(m_, Rat(0));
        basis_.assign(m_, -1);
        allowed_.assign(ncols_, true);
        is_artificial_.assign(ncols_, false);
        art_col_of_row_.assign(m_, -1);
        canon_row_of_.resize(m_);
        pivots_ = 0;
        bland_ = false;
        degenerate_streak_ = 0;

        int slack_next = nhat_;
        const int art_base = nhat_ + n_slack;
        for (int r = 0; r < m_; ++r) {
            canon_row_of_[r] = r;
            const bool flip = canon.row_rhs[r] < 0;
            row_flipped_[r] = flip;
            Rel rel = canon.row_rel[r];
            if (flip && rel == Rel::Le) rel = Rel::Ge;
            else if (flip && rel == Rel::Ge) rel = Rel::Le;
            const Rat sign = flip ? Rat(-1) : Rat(1);
            for (const auto& [j, a] : canon.row_coef[r]) T_[r][j] = sign * a;
            rhs_[r] = sign * canon.row_rhs[r];
            if (canon.row_rel[r] != Rel::Eq) {
                const int s = slack_next++;
                T_[r][s] = rel == Rel::Le ? Rat(1) : Rat(-1);
            }
            const int a = art_base + r;
            T_[r][a] = 1;
            is_artificial_[a] = true;
            art_col_of_row_[r] = a;
            // Slack of a <= row can start basic; otherwise the artificial does.
            if (rel == Rel::Le) basis_[r] = slack_next - 1;
            else basis_[r] = a;
        }
        phase2_obj_ = canon.obj;
    }

    void set_phase_costs(bool phase1) {
        cost_.assign(ncols_, Rat(0));
        if (phase1) {
            for (int k = 0; k < ncols_; ++k)
                if (is_artificial_[k]) cost_[k] = 1;
        } else {
            for (const auto& [j, c] : phase2_obj_) cost_[j] = c;
        }
        // d_j = c_j - c_B * B^-1 A_j, computed from the current tableau.
        drow_.assign(ncols_, Rat(0));
        zvalue_ = 0;
        for (int k = 0; k < ncols_; ++k) drow_[k] = cost_[k];
        for (int r = 0; r < m_; ++r) {
            const Rat cb = cost_[basis_[r]];
            if (cb == 0) continue;
            for (int k = 0; k < ncols_; ++k)
                if (T_[r][k] != 0) drow_[k] -= cb * T_[r][k];
            zvalue_ += cb * rhs_[r];
        }
    }

    int choose_entering() const {
        int best = -1;
        if (bland_) {
            for (int k = 0; k < ncols_; ++k)
                if (allowed_[k] && drow_[k] < 0) return k;
            return -1;
        }
        for (int k = 0; k < ncols_; ++k) {
            if (!allowed_[k] || drow_[k] >= 0) continue;
            if (best == -1 || drow_[k] < drow_[best]) best = k;
        }
        return best;
    }

    int choose_leaving(int enter) const {
        int best = -1;
        Rat best_ratio = 0;
        for (int r = 0; r < m_; ++r) {
            if (T_[r][enter] <= 0) continue;
            const Rat ratio = rhs_[r] / T_[r][enter];
            if (best == -1 || ratio < best_ratio ||
                (ratio == best_ratio && basis_[r] < basis_[best])) {
                best = r;
                best_ratio = ratio;
            }
        }
        return best;
    }

    void pivot(int row, int col) {
        const Rat p = T_[row][col];
        for (int k = 0; k < ncols_; ++k)
            if (T_[row][k] != 0) T_[row][k] /= p;
        rhs_[row] /= p;
        T_[row][col] = 1;  // kill any residual normalization noise
        for (int r = 0; r < m_; ++r) {
            if (r == row) continue;
            const Rat f = T_[r][col];
            if (f == 0) continue;
            for (int k = 0; k < ncols_; ++k)
                if (T_[row][k] != 0) T_[r][k] -= f * T_[row][k];
            rhs_[r] -= f * rhs_[row];
            T_[r][col] = 0;
        }
        const Rat fd = drow_[col];
        if (fd != 0) {
            for (int k = 0; k < ncols_; ++k)
                if (T_[row][k] != 0) drow_[k] -= fd * T_[row][k];
            zvalue_ += fd * rhs_[row];
            drow_[col] = 0;
        }
        basis_[row] = col;
        ++pivots_;
    }

    /// Returns false iff unbounded (phase 2 only; phase 1 is bounded).
    bool optimize() {
        while (true) {
            const int enter = choose_entering();
            if (enter == -1) return true;
            const int leave = choose_leaving(enter);
            if (leave == -1) return false;
            const bool degenerate = rhs_[leave] == 0;
            pivot(leave, enter);
            if (pivots_ > opt_.max_pivots)
                throw BudgetExceeded("simplex exceeded pivot budget");
            if (degenerate) {
                if (++degenerate_streak_ > opt_.bland_after_degenerate) bland_ = true;
            } else {
                degenerate_streak_ = 0;
            }
        }
    }

    void drive_out_artificials() {
        for (int r = 0; r < m_; ++r) {
            if (!is_artificial_[basis_[r]]) continue;
            int col = -1;
            for (int k = 0; k < ncols_ && col == -1; ++k)
                if (!is_artificial_[k] && T_[r][k] != 0) col = k;
            if (col != -1) {
                pivot(r, col);
            } else {
                // Redundant row: every non-artificial coefficient is zero.
                erase_row(r);
                --r;
            }
        }
    }

    void erase_row(int r) {
        T_.erase(T_.begin() + r);
        rhs_.erase(rhs_.begin() + r);
        basis_.erase(basis_.begin() + r);
        art_col_of_row_.erase(art_col_of_row_.begin() + r);
        canon_row_of_.erase(canon_row_of_.begin() + r);
        --m_;
    }

    std::vector<Rat> extract_duals(bool phase1) const {
        // The artificial column of row r is the identity column e_r, so the
        // row multiplier is c_art - d_art (c_art = 1 in phase 1, 0 in phase 2).
        // Rows erased as redundant keep a zero multiplier.
        std::vector<Rat> y(n_canon_rows_, Rat(0));
        for (int r = 0; r < m_; ++r) {
            const int a = art_col_of_row_[r];
            const int cr = canon_row_of_[r];
            Rat yr = (phase1 ? Rat(1) : Rat(0)) - drow_[a];
            if (row_flipped_[cr]) yr = -yr;
            y[cr] = yr;
        }
        return y;
    }
};

inline LpSolution solve_lp(const LinearProgram& lp) {
    SimplexSolver solver;
    return solver.solve(lp);
}

inline LpSolution solve_lp(const LinearProgram& lp, SimplexSolver::Options opt) {
    SimplexSolver solver(opt);
    return solver.solve(lp);
}

// --- floating-point exploratory mode ---------------------------------------------
//
// A double-precision variant of the same two-phase tableau simplex, with a
// 1e-9 feasibility/pricing tolerance. Meant for large exploratory solves
// only; nothing on a correctness path (and no acceptance check) uses it.

struct ApproxLpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> values;
    double objective_value = 0;
};

inline ApproxLpSolution solve_lp_approx(const LinearProgram& lp,
                                        double eps = 1e-9,
                                        long long max_pivots = 2'000'000) {
    const CanonicalLp canon = canonicalize(lp);
    const int m = static_cast<int>(canon.row_coef.size());
    const int nhat = canon.n_hat;
    int n_slack = 0;
    for (Rel r : canon.row_rel)
        if (r != Rel::Eq) ++n_slack;
    const int ncols = nhat + n_slack + m;
    std::vector<std::vector<double>> T(m, std::vector<double>(ncols, 0.0));
    std::vector<double> rhs(m, 0.0);
    std::vector<int> basis(m, -1);
    std::vector<bool> artificial(ncols, false);
    int slack_next = nhat;
    const int art_base = nhat + n_slack;
    for (int r = 0; r < m; ++r) {
        const bool flip = canon.row_rhs[r] < 0;
        Rel rel = canon.row_rel[r];
        if (flip && rel == Rel::Le) rel = Rel::Ge;
        else if (flip && rel == Rel::Ge) rel = Rel::Le;
        const double sign = flip ? -1.0 : 1.0;
        for (const auto& [j, a] : canon.row_coef[r]) T[r][j] = sign * rat_to_double(a);
        rhs[r] = sign * rat_to_double(canon.row_rhs[r]);
        if (canon.row_rel[r] != Rel::Eq)
            T[r][slack_next++] = rel == Rel::Le ? 1.0 : -1.0;
        T[r][art_base + r] = 1.0;
        artificial[art_base + r] = true;
        basis[r] = rel == Rel::Le ? slack_next - 1 : art_base + r;
    }
    std::vector<bool> allowed(ncols, true);
    std::vector<double> cost(ncols, 0.0), drow(ncols, 0.0);
    long long pivots = 0;
    bool bland = false;
    int degenerate_streak = 0;
    int nrows = m;

    auto set_costs = [&](bool phase1) {
        std::fill(cost.begin(), cost.end(), 0.0);
        if (phase1) {
            for (int k = 0; k < ncols; ++k)
                if (artificial[k]) cost[k] = 1.0;
        } else {
            for (const auto& [j, c] : canon.obj) cost[j] = rat_to_double(c);
        }
        drow = cost;
        for (int r = 0; r < nrows; ++r) {
            const double cb = cost[basis[r]];
            if (cb == 0.0) continue;
            for (int k = 0; k < ncols; ++k) drow[k] -= cb * T[r][k];
        }
    };
    auto pivot = [&](int row, int col) {
        const double p = T[row][col];
        for (int k = 0; k < ncols; ++k) T[row][k] /= p;
        rhs[row] /= p;
        T[row][col] = 1.0;
        for (int r = 0; r < nrows; ++r) {
            if (r == row || T[r][col] == 0.0) continue;
            const double f = T[r][col];
            for (int k = 0; k < ncols; ++k) T[r][k] -= f * T[row][k];
            rhs[r] -= f * rhs[row];
            T[r][col] = 0.0;
        }
        const double fd = drow[col];
        if (fd != 0.0)
            for (int k = 0; k < ncols; ++k) drow[k] -= fd * T[row][k];
        drow[col] = 0.0;
        basis[row] = col;
        ++pivots;
    };
    auto optimize = [&]() {
        while (true) {
            int enter = -1;
            if (bland) {
                for (int k = 0; k < ncols && enter == -1; ++k)
                    if (allowed[k] && drow[k] < -eps) enter = k;
            } else {
                for (int k = 0; k < ncols; ++k)
                    if (allowed[k] && drow[k] < -eps &&
                        (enter == -1 || drow[k] < drow[enter]))
                        enter = k;
            }
            if (enter == -1) return true;
            int leave = -1;
            double best = 0;
            for (int r = 0; r < nrows; ++r) {
                if (T[r][enter] <= eps) continue;
                const double ratio = rhs[r] / T[r][enter];
                if (leave == -1 || ratio < best ||
                    (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == -1) return false;
            const bool degenerate = rhs[leave] <= eps;
            pivot(leave, enter);
            if (pivots > max_pivots)
                throw BudgetExceeded("approximate simplex exceeded pivot budget");
            if (degenerate) {
                if (++degenerate_streak > 60) bland = true;
            } else {
                degenerate_streak = 0;
            }
        }
    };

    ApproxLpSolution sol;
    set_costs(true);
    optimize();
    double z1 = 0;
    for (int r = 0; r < nrows; ++r)
        if (artificial[basis[r]]) z1 += rhs[r];
    if (z1 > 1e-7) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    // Pivot remaining artificials out of the basis so no later pivot can
    // drift an equality row; rows with no pivot candidate are redundant.
    for (int r = 0; r < nrows; ++r) {
        if (!artificial[basis[r]]) continue;
        int col = -1;
        for (int k = 0; k < ncols && col == -1; ++k)
            if (!artificial[k] && std::abs(T[r][k]) > eps) col = k;
        if (col != -1) {
            pivot(r, col);
        } else {
            T.erase(T.begin() + r);
            rhs.erase(rhs.begin() + r);
            basis.erase(basis.begin() + r);
            --nrows;
            --r;
        }
    }
    for (int k = 0; k < ncols; ++k)
        if (artificial[k]) allowed[k] = false;
    set_costs(false);
    if (!optimize()) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }
    std::vector<double> xhat(nhat, 0.0);
    for (int r = 0; r < nrows; ++r)
        if (basis[r] < nhat) xhat[basis[r]] = rhs[r];
    sol.status = LpStatus::Optimal;
    sol.values.assign(lp.num_variables(), 0.0);
    for (int j = 0; j < lp.num_variables(); ++j) {
        const auto& mp = canon.var_map[j];
        switch (mp.kind) {
            case CanonicalLp::MapKind::Shift:
                sol.values[j] = rat_to_double(mp.base) + xhat[mp.hat1];
                break;
            case CanonicalLp::MapKind::Flip:
                sol.values[j] = rat_to_double(mp.base) - xhat[mp.hat1];
                break;
            case CanonicalLp::MapKind::Split:
                sol.values[j] = xhat[mp.hat1] - xhat[mp.hat2];
                break;
        }
    }
    sol.objective_value = 0;
    for (const auto& [j, c] : lp.objective())
        sol.objective_value += rat_to_double(c) * sol.values[j];
    return sol;
}

// --- certificate verification -------------------------------------------------

/// Exactly verifies an Optimal solution: primal feasibility in the original
/// space, canonical dual feasibility, and strong duality. Any failure throws.
inline void verify_optimal_certificate(const LinearProgram& lp, const LpSolution& sol) {
    if (sol.status != LpStatus::Optimal)
        throw std::logic_error("verify_optimal_certificate: status not Optimal");
    const auto primal = check_feasible(sol.values, lp);
    if (!primal.feasible)
        throw std::logic_error("optimal solution fails primal feasibility");
    if (lp.objective_value(sol.values) != sol.objective_value)
        throw std::logic_error("objective value mismatch");

    const CanonicalLp canon = canonicalize(lp);
    if (static_cast<int>(sol.dual.size()) != static_cast<int>(canon.row_coef.size()))
        throw std::logic_error("dual certificate has wrong dimension");
    // Sign conditions.
    for (size_t r = 0; r < canon.row_coef.size(); ++r) {
        if (canon.row_rel[r] == Rel::Le && sol.dual[r] > 0)
            throw std::logic_error("dual sign violated on <= row");
        if (canon.row_rel[r] == Rel::Ge && sol.dual[r] < 0)
            throw std::logic_error("dual sign violated on >= row");
    }
    // Reduced costs nonnegative on every canonical (nonnegative) variable.
    std::vector<Rat> yA(canon.n_hat, Rat(0));
    for (size_t r = 0; r < canon.row_coef.size(); ++r) {
        if (sol.dual[r] == 0) continue;
        for (const auto& [j, a] : canon.row_coef[r]) yA[j] += sol.dual[r] * a;
    }
    for (int j = 0; j < canon.n_hat; ++j) {
        Rat cj = 0;
        auto it = canon.obj.find(j);
        if (it != canon.obj.end()) cj = it->second;
        if (cj - yA[j] < 0)
            throw std::logic_error("dual certificate violates reduced-cost condition");
    }
    // Strong duality: y*b + shift must equal the primal objective.
    Rat yb = canon.obj_shift;
    for (size_t r = 0; r < canon.row_coef.size(); ++r) yb += sol.dual[r] * canon.row_rhs[r];
    if (yb != sol.objective_value)
        throw std::logic_error("strong duality fails: certificate does not match objective");
}

/// Exactly verifies a Farkas certificate of infeasibility. Any failure throws.
inline void verify_infeasibility_certificate(const LinearProgram& lp,
                                             const LpSolution& sol) {
    if (sol.status != LpStatus::Infeasible)
        throw std::logic_error("verify_infeasibility_certificate: status not Infeasible");
    const CanonicalLp canon = canonicalize(lp);
    if (static_cast<int>(sol.farkas.size()) != static_cast<int>(canon.row_coef.size()))
        throw std::logic_error("farkas certificate has wrong dimension");
    for (size_t r = 0; r < canon.row_coef.size(); ++r) {
        if (canon.row_rel[r] == Rel::Le && sol.farkas[r] > 0)
            throw std::logic_error("farkas sign violated on <= row");
        if (canon.row_rel[r] == Rel::Ge && sol.farkas[r] < 0)
            throw std::logic_error("farkas sign violated on >= row");
    }
    std::vector<Rat> yA(canon.n_hat, Rat(0));
    Rat yb = 0;
    for (size_t r = 0; r < canon.row_coef.size(); ++r) {
        if (sol.farkas[r] == 0) continue;
        for (const auto& [j, a] : canon.row_coef[r]) yA[j] += sol.farkas[r] * a;
        yb += sol.farkas[r] * canon.row_rhs[r];
    }
    for (int j = 0; j < canon.n_hat; ++j)
        if (yA[j] > 0) throw std::logic_error("farkas combination not <= 0");
    if (yb <= 0) throw std::logic_error("farkas certificate has nonpositive value");
}

}  // namespace liftgap
