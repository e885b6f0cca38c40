// Brute-force integral optimization and gap reports. These are the reference
// oracles everything else is measured against, so they stay deliberately
// simple: subset enumeration plus an exact transportation solve.
#pragma once

#include "liftgap/errors.hpp"
#include "liftgap/instance.hpp"
#include "liftgap/solver.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace liftgap {

struct IntegralSolution {
    std::vector<bool> open;        // per facility
    std::vector<int> assignment;   // facility per client
    Rat cost = 0;
};

struct IntegralOptimum {
    Rat value = 0;
    std::optional<IntegralSolution> solution;  // absent for closed-form paths
};

struct GapReport {
    Rat lp_value = 0;
    Rat integral_value = 0;
    bool gap_infinite = false;
    Rat gap = 0;  // integral / lp when lp > 0
    std::string lp_kind;
    bool integral_skipped = false;  // set when the integral solve hit a budget
    std::optional<std::vector<Rat>> lp_certificate;    // optimal LP point
    std::optional<std::vector<bool>> integral_open;    // optimal opening set

    static GapReport make(const Rat& lp_value, const Rat& integral_value,
                          std::string lp_kind) {
        GapReport r;
        r.lp_value = lp_value;
        r.integral_value = integral_value;
        r.lp_kind = std::move(lp_kind);
        if (lp_value > 0) {
            r.gap = integral_value / lp_value;
        } else if (integral_value > 0) {
            r.gap_infinite = true;
        } else {
            r.gap = 1;
        }
        return r;
    }
};

namespace detail {

/// Cost of optimally assigning all clients to the open set T, or nullopt if
/// no assignment exists. Exact: either the per-facility-uniform shortcut or
/// a transportation LP whose basic optimum is integral.
inline std::optional<Rat> assignment_cost(const FacilityLocationInstance& inst,
                                          const std::vector<int>& open) {
    const long long m = inst.n_clients;
    const long long cap = inst.capacity_or_bound;
    if (open.empty()) return m == 0 ? std::optional<Rat>(Rat(0)) : std::nullopt;
    if (inst.mode == Mode::CFL &&
        static_cast<long long>(open.size()) * cap < m)
        return std::nullopt;
    if (inst.mode == Mode::LBFL &&
        static_cast<long long>(open.size()) * cap > m)
        return std::nullopt;

    if (auto uniform = inst.uniform_connection_costs()) {
        std::vector<Rat> d;
        for (int i : open) d.push_back((*uniform)[i]);
        std::sort(d.begin(), d.end());
        Rat cost = 0;
        if (inst.mode == Mode::CFL) {
            long long left = m;
            for (const Rat& di : d) {
                const long long take = std::min(left, cap);
                cost += Rat(take) * di;
                left -= take;
                if (left == 0) break;
            }
        } else {
            for (const Rat& di : d) cost += Rat(cap) * di;
            cost += Rat(m - cap * static_cast<long long>(d.size())) * d.front();
        }
        return cost;
    }

    // Transportation LP: cover each client once, capacity or lower bound per
    // open facility. The constraint matrix is a network matrix, so the basic
    // optimum the simplex returns is integral.
    LinearProgram lp;
    std::vector<std::vector<int>> var(open.size());
    for (size_t k = 0; k < open.size(); ++k) {
        var[k].resize(m);
        for (long long j = 0; j < m; ++j)
            var[k][j] = lp.add_variable(
                "x_" + std::to_string(open[k]) + "_" + std::to_string(j), Rat(0), Rat(1));
    }
    for (long long j = 0; j < m; ++j) {
        std::map<int, Rat> cover;
        for (size_t k = 0; k < open.size(); ++k) cover[var[k][j]] = 1;
        lp.add_constraint(std::move(cover), Rel::Eq, Rat(1));
    }
    for (size_t k = 0; k < open.size(); ++k) {
        std::map<int, Rat> load;
        for (long long j = 0; j < m; ++j) load[var[k][j]] = 1;
        lp.add_constraint(std::move(load), inst.mode == Mode::CFL ? Rel::Le : Rel::Ge,
                          Rat(cap));
    }
    std::map<int, Rat> obj;
    for (size_t k = 0; k < open.size(); ++k)
        for (long long j = 0; j < m; ++j) {
            const Rat c = inst.connection_cost(open[k], j);
            if (c != 0) obj[var[k][j]] = c;
        }
    lp.set_objective(std::move(obj));
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) return std::nullopt;
    return sol.objective_value;
}

}  // namespace detail

/// Exact integral optimum by enumeration over facility subsets. Instances too
/// large for subset enumeration fall back to the closed form that exists when
/// all connection costs are equal (every zero-distance family here); anything
/// else raises BudgetExceeded.
inline IntegralOptimum integral_optimum(const FacilityLocationInstance& inst,
                                        long long subset_budget = (1LL << 22)) {
    const int n = inst.n_facilities;
    if (n < 60 && (1LL << n) <= subset_budget) {
        std::optional<Rat> best;
        std::vector<int> best_open;
        for (long long mask = 1; mask < (1LL << n); ++mask) {
            std::vector<int> open;
            for (int i = 0; i < n; ++i)
                if (mask & (1LL << i)) open.push_back(i);
            Rat opening = 0;
            for (int i : open) opening += inst.opening_cost[i];
            if (best && opening >= *best) continue;  // assignment cost >= 0
            if (auto assign = detail::assignment_cost(inst, open)) {
                const Rat total = opening + *assign;
                if (!best || total < *best) {
                    best = total;
                    best_open = open;
                }
            }
        }
        if (!best) throw std::invalid_argument("instance has no integral solution");
        IntegralOptimum out;
        out.value = *best;
        IntegralSolution sol;
        sol.open.assign(n, false);
        for (int i : best_open) sol.open[i] = true;
        sol.cost = *best;
        out.solution = sol;
        return out;
    }

    const auto uniform = inst.uniform_connection_costs();
    if (uniform) {
        bool all_equal = true;
        for (const Rat& d : *uniform) all_equal = all_equal && d == uniform->front();
        if (all_equal) {
            // Connection cost is a constant; only the opening set matters.
            std::vector<Rat> f = inst.opening_cost;
            std::sort(f.begin(), f.end());
            IntegralOptimum out;
            const Rat conn = Rat(inst.n_clients) * uniform->front();
            if (inst.mode == Mode::CFL) {
                const long long k =
                    (inst.n_clients + inst.capacity_or_bound - 1) / inst.capacity_or_bound;
                Rat opening = 0;
                for (long long i = 0; i < k; ++i) opening += f[i];
                out.value = opening + conn;
            } else {
                if (inst.n_clients < inst.capacity_or_bound)
                    throw std::invalid_argument("instance has no integral solution");
                out.value = f.front() + conn;
            }
            return out;
        }
    }
    throw BudgetExceeded("integral optimum over 2^" + std::to_string(n) +
                         " subsets exceeds the enumeration budget");
}

inline GapReport integrality_gap(const FacilityLocationInstance& inst,
                                 const LinearProgram& lp, std::string lp_kind = "lp",
                                 long long subset_budget = (1LL << 22)) {
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw std::invalid_argument("relaxation did not solve to optimality: " +
                                    lp_status_to_string(sol.status));
    const IntegralOptimum opt = integral_optimum(inst, subset_budget);
    GapReport rep = GapReport::make(sol.objective_value, opt.value, std::move(lp_kind));
    rep.lp_certificate = sol.values;
    if (opt.solution) rep.integral_open = opt.solution->open;
    return rep;
}

/// All integral solutions of a tiny instance, assignments included.
/// Used as the class generator behind integral-polytope constellations and
/// by the validity check.
inline std::vector<IntegralSolution> enumerate_integral_solutions(
    const FacilityLocationInstance& inst, long long budget = 200000) {
    const int n = inst.n_facilities;
    const long long m = inst.n_clients;
    if (n >= 20 || m > 20)
        throw BudgetExceeded("integral solution enumeration needs a tiny instance");
    std::vector<IntegralSolution> out;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> open;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) open.push_back(i);
        const long long cap = inst.capacity_or_bound;
        if (inst.mode == Mode::CFL && static_cast<long long>(open.size()) * cap < m)
            continue;
        if (inst.mode == Mode::LBFL && static_cast<long long>(open.size()) * cap > m)
            continue;
        std::vector<long long> load(open.size(), 0);
        std::vector<int> assign(m, -1);
        std::function<void(long long)> rec = [&](long long j) {
            if (static_cast<long long>(out.size()) > budget)
                throw BudgetExceeded("integral solution enumeration exceeded budget");
            if (j == m) {
                if (inst.mode == Mode::LBFL)
                    for (long long ld : load)
                        if (ld < cap) return;
                IntegralSolution s;
                s.open.assign(n, false);
                for (int i : open) s.open[i] = true;
                s.assignment = assign;
                s.cost = 0;
                for (int i : open) s.cost += inst.opening_cost[i];
                for (long long cl = 0; cl < m; ++cl)
                    s.cost += inst.connection_cost(assign[cl], cl);
                out.push_back(std::move(s));
                return;
            }
            for (size_t k = 0; k < open.size(); ++k) {
                if (inst.mode == Mode::CFL && load[k] == cap) continue;
                if (inst.mode == Mode::LBFL) {
                    // Prune: remaining clients must still be able to lift
                    // every open facility to the bound.
                    long long deficit = 0;
                    for (size_t q = 0; q < open.size(); ++q)
                        deficit += std::max(0LL, cap - load[q] - (q == k ? 1 : 0));
                    if (deficit > m - j - 1) continue;
                }
                load[k]++;
                assign[j] = open[k];
                rec(j + 1);
                load[k]--;
                assign[j] = -1;
            }
        };
        rec(0);
    }
    return out;
}

}  // namespace liftgap
