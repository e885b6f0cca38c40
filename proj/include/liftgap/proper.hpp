// Bad-solution constructions for proper relaxations: the two-round LBFL
// measure distribution over admissible classes (closed forms plus an honest
// enumeration cross-check), the CFL analogue, class densities, the
// integral-polytope constellation, and the four-facility toy separation.
#pragma once

#include "liftgap/errors.hpp"
#include "liftgap/instance.hpp"
#include "liftgap/integral.hpp"
#include "liftgap/relaxations.hpp"
#include "liftgap/solver.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace liftgap {

/// Exclusive-client layout of the LBFL gap instance: one contiguous block of
/// B-1 clients per simplex facility, and the shared far cluster of size
/// n^2+n-1 owned by the two far facilities. The far cluster absorbs the one
/// client discarded from each simplex facility (the lowest-index choice).
struct ExclusiveSets {
    LbflBlocks blocks;
    int n_far = 2;

    void validate(const LabeledInstance& inst) const {
        const long long covered =
            static_cast<long long>(blocks.n_simplex) * (blocks.B - 1) + blocks.far_size;
        if (covered != inst.base.n_clients)
            throw std::logic_error("exclusive ranges do not partition the clients");
        const long long n = inst.param_ll("n");
        if (blocks.far_size != n * n + n - 1)
            throw std::logic_error("far cluster has the wrong size");
    }
};

inline ExclusiveSets exclusive_sets(const LabeledInstance& inst) {
    ExclusiveSets ex;
    ex.blocks = lbfl_blocks(inst);
    ex.validate(inst);
    return ex;
}

/// Measures spent on the two rounds of the measure-distribution argument.
struct RoundMeasures {
    Rat phi, xi;
    long long n = 0;
    long long c_or_t = 0;

    void require_positive() const {
        if (phi <= 0 || xi <= 0)
            throw std::logic_error("round measures must be positive");
    }
};

inline RoundMeasures lbfl_round_measures(long long n, long long c) {
    RoundMeasures m;
    m.n = n;
    m.c_or_t = c;
    const Rat nn(n);
    m.phi = (nn * nn + nn - 1) / (nn * nn);
    m.xi = ((nn * nn - 1) / (nn * nn) - Rat(n - c - 1) / Rat(n - 1) * m.phi) * Rat(n - 1) /
           Rat(n - c);
    m.require_positive();
    return m;
}

inline RoundMeasures cfl_round_measures(long long n, long long t) {
    RoundMeasures m;
    m.n = n;
    m.c_or_t = t;
    m.phi = Rat(1) / Rat(n * t);
    m.xi = Rat(n - 1) * (1 - Rat(1) / Rat(n * n)) / Rat(t);
    m.require_positive();
    return m;
}

/// Per-unit-measure assignment fractions of the two LBFL rounds.
struct LbflRoundFractions {
    Rat a_own;    // round A: own exclusive client to its facility
    Rat a_cross;  // round A: exclusive client of another simplex facility
    Rat a_far;    // round A: far-cluster client to one far facility
    Rat b_own;    // round B analogues (far facilities are absent)
    Rat b_cross;
};

inline LbflRoundFractions lbfl_round_fractions(long long n, long long c) {
    if (c < 2 || n - c - 1 < 1)
        throw std::invalid_argument("round fractions need c >= 2 and n - c - 1 >= 1");
    LbflRoundFractions f;
    const Rat n1(n - 1), n2(n - 2);
    const Rat B1 = Rat(n) * Rat(n) - 1;  // B - 1
    f.a_own = Rat(n - c - 1) / n1;
    f.a_cross = Rat(n - c - 1) / (n1 * n2 * B1);
    f.a_far = Rat(n * n) / (2 * (Rat(n * n) + Rat(n) - 1));
    f.b_own = Rat(n - c) / n1;
    f.b_cross = Rat(n - c) / (n1 * n2 * B1);
    return f;
}

/// Honest enumeration of every admissible class of both rounds, counting how
/// often each (facility, client) assignment occurs. Feasible at n = 4 only;
/// the closed forms above must match these counts exactly.
struct LbflEnumeratedFractions {
    LbflRoundFractions fractions;
    long long type_a_classes = 0;
    long long type_b_classes = 0;
};

inline LbflEnumeratedFractions lbfl_enumerate_round_fractions(long long n, long long c,
                                                              long long class_budget =
                                                                  1'000'000) {
    if (c < 2 || n - c - 1 < 1)
        throw std::invalid_argument("enumeration needs c >= 2 and n - c - 1 >= 1");
    const long long B = n * n;
    const int n_simplex = static_cast<int>(n - 1);
    const long long excl = B - 1;          // exclusive clients per simplex facility
    const long long far_size = n * n + n - 1;
    const long long small_in_class = n - c - 1;  // simplex facilities per type-A class
    if (small_in_class != 1)
        throw BudgetExceeded("class enumeration implemented for n - c - 1 = 1 only");
    const Int afar_count = detail::binomial(far_size, B);
    const Int a_total_est = Int(2) * Int(n_simplex) *
                            Int((n_simplex - 1) * excl) * afar_count;
    if (a_total_est > class_budget)
        throw BudgetExceeded("type-A enumeration would visit " + a_total_est.str() +
                             " classes");

    // Client indexing mirrors the instance layout: simplex blocks first, the
    // far cluster last. Counts are integers; fractions come out exact.
    std::vector<std::vector<long long>> count_a(
        n + 1, std::vector<long long>(n * n * n, 0));
    std::vector<std::vector<long long>> count_b(
        n + 1, std::vector<long long>(n * n * n, 0));
    const long long far_begin = static_cast<long long>(n_simplex) * excl;

    long long total_a = 0;
    std::vector<long long> far_pick(B);
    for (int big = n_simplex; big <= n_simplex + 1; ++big) {
        for (int small = 0; small < n_simplex; ++small) {
            for (int donor = 0; donor < n_simplex; ++donor) {
                if (donor == small) continue;
                for (long long e = 0; e < excl; ++e) {
                    const long long extra = donor * excl + e;
                    // Big facility takes any B of the far cluster.
                    for (long long t = 0; t < B; ++t) far_pick[t] = t;
                    while (true) {
                        ++total_a;
                        for (long long j = small * excl; j < (small + 1) * excl; ++j)
                            ++count_a[small][j];
                        ++count_a[small][extra];
                        for (long long t = 0; t < B; ++t)
                            ++count_a[big][far_begin + far_pick[t]];
                        long long t = B - 1;
                        while (t >= 0 && far_pick[t] == far_size - B + t) --t;
                        if (t < 0) break;
                        ++far_pick[t];
                        for (long long q = t + 1; q < B; ++q)
                            far_pick[q] = far_pick[q - 1] + 1;
                    }
                }
            }
        }
    }

    long long total_b = 0;
    // Type B: n - c simplex facilities, each taking its exclusives plus one
    // distinct client exclusive to an absent simplex facility.
    const long long small_b = n - c;
    std::vector<int> members(small_b);
    for (long long m0 = 0; m0 < small_b; ++m0) members[m0] = static_cast<int>(m0);
    auto next_combo = [&](std::vector<int>& v, int limit) {
        int t = static_cast<int>(v.size()) - 1;
        while (t >= 0 && v[t] == limit - static_cast<int>(v.size()) + t) --t;
        if (t < 0) return false;
        ++v[t];
        for (size_t q = t + 1; q < v.size(); ++q) v[q] = v[q - 1] + 1;
        return true;
    };
    while (true) {
        std::vector<bool> in_class(n_simplex, false);
        for (int i : members) in_class[i] = true;
        std::vector<long long> candidates;
        for (int donor = 0; donor < n_simplex; ++donor)
            if (!in_class[donor])
                for (long long e = 0; e < excl; ++e) candidates.push_back(donor * excl + e);
        // Assign one distinct extra to each member, in all ordered ways.
        std::vector<long long> extra(small_b, -1);
        std::vector<bool> used(candidates.size(), false);
        auto rec = [&](auto&& self, long long pos) -> void {
            if (pos == small_b) {
                ++total_b;
                if (total_b > class_budget)
                    throw BudgetExceeded("type-B enumeration exceeded its budget");
                for (long long q = 0; q < small_b; ++q) {
                    const int fac = members[q];
                    for (long long j = fac * excl; j < (fac + 1) * excl; ++j)
                        ++count_b[fac][j];
                    ++count_b[fac][extra[q]];
                }
                return;
            }
            for (size_t cidx = 0; cidx < candidates.size(); ++cidx) {
                if (used[cidx]) continue;
                used[cidx] = true;
                extra[pos] = candidates[cidx];
                self(self, pos + 1);
                used[cidx] = false;
            }
        };
        rec(rec, 0);
        if (!next_combo(members, n_simplex)) break;
    }

    // Fold the per-pair counts into the five symmetric fractions, verifying
    // on the way that symmetry really did equalize them.
    auto fraction = [](long long count, long long total) {
        return Rat(count) / Rat(total);
    };
    LbflEnumeratedFractions out;
    out.type_a_classes = total_a;
    out.type_b_classes = total_b;
    const long long own_a = count_a[0][0];
    const long long cross_a = count_a[0][excl];
    const long long far_a = count_a[n_simplex][far_begin];
    const long long own_b = count_b[0][0];
    const long long cross_b = count_b[0][excl];
    for (int i = 0; i < n_simplex; ++i)
        for (long long j = 0; j < far_begin; ++j) {
            const long long expect =
                (j >= i * excl && j < (i + 1) * excl) ? own_a : cross_a;
            if (count_a[i][j] != expect)
                throw std::logic_error("type-A counts are not client-symmetric");
            const long long expect_b =
                (j >= i * excl && j < (i + 1) * excl) ? own_b : cross_b;
            if (count_b[i][j] != expect_b)
                throw std::logic_error("type-B counts are not client-symmetric");
        }
    for (int big = n_simplex; big <= n_simplex + 1; ++big)
        for (long long j = far_begin; j < n * n * n; ++j)
            if (count_a[big][j] != far_a)
                throw std::logic_error("type-A far counts are not symmetric");
    out.fractions.a_own = fraction(own_a, total_a);
    out.fractions.a_cross = fraction(cross_a, total_a);
    out.fractions.a_far = fraction(far_a, total_a);
    out.fractions.b_own = fraction(own_b, total_b);
    out.fractions.b_cross = fraction(cross_b, total_b);
    return out;
}

// --- the LBFL bad projection ------------------------------------------------------

/// Orbit form of the constructed fractional point: per-facility openings plus
/// the three assignment values realized by the block structure.
struct LbflProjection {
    std::vector<Rat> y;
    Rat own_exclusive;  // x of a simplex facility to its own exclusive client
    Rat cross;          // x to an exclusive client of another simplex facility
    Rat far_share;      // x of each far facility to each far-cluster client
};

/// Combines the two rounds with their measures and asserts the resulting
/// pattern coordinate by coordinate. Throws naming the first mismatch.
inline LbflProjection lbfl_bad_projection(const LabeledInstance& inst) {
    const long long n = inst.param_ll("n");
    const long long c = inst.param_ll("c");
    const auto f = lbfl_round_fractions(n, c);
    const auto m = lbfl_round_measures(n, c);
    const int n_simplex = static_cast<int>(n - 1);

    LbflProjection p;
    p.own_exclusive = f.a_own * m.phi + f.b_own * m.xi;
    p.cross = f.a_cross * m.phi + f.b_cross * m.xi;
    p.far_share = f.a_far * m.phi;
    p.y.assign(inst.base.n_facilities, Rat(0));
    for (int i = 0; i < n_simplex; ++i)
        p.y[i] = Rat(n - c - 1) / Rat(n - 1) * m.phi + Rat(n - c) / Rat(n - 1) * m.xi;
    p.y[n_simplex] = m.phi / 2;
    p.y[n_simplex + 1] = m.phi / 2;

    const Rat nn(n);
    auto expect = [](const char* what, const Rat& got, const Rat& want) {
        if (got != want)
            throw std::logic_error(std::string("projection mismatch at ") + what + ": " +
                                   rat_to_string(got) + " vs " + rat_to_string(want));
    };
    expect("own-exclusive assignment", p.own_exclusive, (nn * nn - 1) / (nn * nn));
    expect("cross assignment", p.cross, 1 / (nn * nn * (nn - 2)));
    expect("far share", p.far_share, make_rat(1, 2));
    expect("simplex opening", p.y[0], (nn * nn - 1) / (nn * nn));
    expect("far opening", p.y[n_simplex], (nn * nn + nn - 1) / (2 * nn * nn));

    // Exactly B * y_i demand on every facility, and unit cover per client.
    const auto blocks = lbfl_blocks(inst);
    const Rat B(inst.base.capacity_or_bound);
    for (int i = 0; i < n_simplex; ++i) {
        const Rat load = Rat(blocks.B - 1) * p.own_exclusive +
                         Rat(n_simplex - 1) * Rat(blocks.B - 1) * p.cross;
        expect("simplex load", load, B * p.y[i]);
    }
    expect("far load", Rat(blocks.far_size) * p.far_share, B * p.y[n_simplex]);
    expect("simplex-client cover", p.own_exclusive + Rat(n_simplex - 1) * p.cross, Rat(1));
    expect("far-client cover", 2 * p.far_share, Rat(1));
    return p;
}

/// Dense (y,x) expansion of the projection over the instance's block layout.
inline std::pair<std::vector<Rat>, std::vector<std::vector<Rat>>> lbfl_projection_dense(
    const LabeledInstance& inst, const LbflProjection& p) {
    const auto blocks = lbfl_blocks(inst);
    const int nf = inst.base.n_facilities;
    const long long m = inst.base.n_clients;
    std::vector<std::vector<Rat>> x(nf, std::vector<Rat>(m, Rat(0)));
    for (long long j = 0; j < blocks.far_begin; ++j) {
        const int owner = blocks.owner(j);
        for (int i = 0; i < blocks.n_simplex; ++i)
            x[i][j] = i == owner ? p.own_exclusive : p.cross;
    }
    for (long long j = blocks.far_begin; j < m; ++j) {
        x[blocks.n_simplex][j] = p.far_share;
        x[blocks.n_simplex + 1][j] = p.far_share;
    }
    return {p.y, x};
}

/// Gap report for the constructed point: exact fractional cost against the
/// two-case integral lower bound (an unopened simplex facility strands its
/// B-1 exclusive clients at distance D; opening all of them pulls at least
/// n-1 far clients across distance D').
inline GapReport lbfl_gap_report(const LabeledInstance& inst, const LbflProjection& p) {
    auto [y, x] = lbfl_projection_dense(inst, p);
    Rat frac = 0;
    for (int i = 0; i < inst.base.n_facilities; ++i) {
        frac += inst.base.opening_cost[i] * y[i];
        for (long long j = 0; j < inst.base.n_clients; ++j)
            if (x[i][j] != 0) frac += inst.base.connection_cost(i, j) * x[i][j];
    }
    const long long n = inst.param_ll("n");
    const Rat D = inst.param("D");
    const Rat Dprime = inst.param("Dprime");
    const Rat B1(inst.base.capacity_or_bound - 1);
    const Rat integral_bound = rat_min(B1 * D, Rat(n - 1) * Dprime);
    GapReport rep = GapReport::make(frac, integral_bound, "lbfl-proper-bad-projection");
    return rep;
}

// --- the CFL side -----------------------------------------------------------------

/// Assigned-client count per non-special facility of a class.
inline Rat class_density(const Class& cl, int special_facility) {
    long long facilities = 0;
    for (int i : cl.facilities)
        if (i != special_facility) ++facilities;
    if (facilities == 0) throw std::invalid_argument("class density undefined");
    long long assigned = 0;
    for (const auto& [i, j] : cl.assignments) {
        (void)j;
        if (i != special_facility) ++assigned;
    }
    return Rat(assigned) / Rat(facilities);
}

struct CflProjection {
    std::vector<Rat> y;
    Rat x_special;  // assignment to the costly facility, per client
    Rat x_regular;  // assignment to each free facility, per client
};

inline CflProjection cfl_bad_projection(const LabeledInstance& inst,
                                        std::optional<long long> t_opt = std::nullopt) {
    const long long n = inst.param_ll("n");
    const long long t = t_opt.value_or(n - 1);
    if (t < 1 || t > n - 1)
        throw std::invalid_argument("round support size t must satisfy 1 <= t <= n-1");
    cfl_round_measures(n, t).require_positive();  // the measures behind the pattern
    const long long U = inst.base.capacity_or_bound;
    const long long m = inst.base.n_clients;
    CflProjection p;
    p.y.assign(inst.base.n_facilities, Rat(1));
    p.y[n - 1] = Rat(1) / Rat(n * n);
    p.x_special = (Rat(U) / Rat(n * n)) / Rat(m);
    p.x_regular = (1 - p.x_special) / Rat(n - 1);

    // Exact feasibility of the pattern for the standard constraints.
    auto expect = [](const char* what, bool ok) {
        if (!ok) throw std::logic_error(std::string("cfl projection violates ") + what);
    };
    expect("cover", Rat(n - 1) * p.x_regular + p.x_special == 1);
    expect("x <= y (special)", p.x_special <= p.y[n - 1]);
    expect("x <= y (regular)", p.x_regular <= 1);
    expect("capacity (special)", Rat(m) * p.x_special <= Rat(U) * p.y[n - 1]);
    expect("capacity (regular)", Rat(m) * p.x_regular <= Rat(U));
    return p;
}

inline std::pair<std::vector<Rat>, std::vector<std::vector<Rat>>> cfl_projection_dense(
    const LabeledInstance& inst, const CflProjection& p) {
    const int nf = inst.base.n_facilities;
    const long long m = inst.base.n_clients;
    std::vector<std::vector<Rat>> x(nf, std::vector<Rat>(m));
    for (long long j = 0; j < m; ++j) {
        for (int i = 0; i + 1 < nf; ++i) x[i][j] = p.x_regular;
        x[nf - 1][j] = p.x_special;
    }
    return {p.y, x};
}

inline GapReport cfl_gap_report(const LabeledInstance& inst, const CflProjection& p,
                                long long subset_budget = (1LL << 22)) {
    const long long n = inst.param_ll("n");
    Rat frac = 0;
    for (int i = 0; i < inst.base.n_facilities; ++i)
        frac += inst.base.opening_cost[i] * p.y[i];
    if (frac != Rat(1) / Rat(n * n))
        throw std::logic_error("fractional cost of the cfl projection is off");
    const auto opt = integral_optimum(inst.base, subset_budget);
    return GapReport::make(frac, opt.value, "cfl-proper-bad-projection");
}

// --- integral-polytope constellations -----------------------------------------------

struct IntegralPolytopeConstellation {
    ClassSet classes;
    Rat lp_optimum;
    Rat integral_optimum_value;
    bool weights_sum_to_one = false;
};

/// One class per distinct integral solution. The resulting LP expresses the
/// integral polytope: its optimum matches brute force, and any feasible
/// weighting is a convex combination (every class covers every client, so
/// each cover row reads sum of all weights = 1).
inline IntegralPolytopeConstellation integral_polytope_classset(
    const FacilityLocationInstance& inst, long long enumeration_budget = 200000) {
    IntegralPolytopeConstellation out;
    const auto solutions = enumerate_integral_solutions(inst, enumeration_budget);
    if (solutions.empty()) throw std::invalid_argument("no integral solutions");
    for (const auto& s : solutions)
        out.classes.classes.push_back(class_from_integral_solution(s));
    auto lp = constellation_lp(inst, out.classes);
    const auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw std::logic_error("integral-polytope constellation failed to solve");
    out.lp_optimum = sol.objective_value;
    out.integral_optimum_value = integral_optimum(inst).value;
    Rat total = 0;
    for (const Rat& w : sol.values) total += w;
    out.weights_sum_to_one = total == 1;
    return out;
}

// --- the four-facility separation ----------------------------------------------------

struct Example1Report {
    bool star_feasible = false;
    bool constellation_infeasible = false;
    bool farkas_verified = false;
    Rat forced_f34_measure;    // facility mass forced onto classes with f3/f4
    bool forced_mass_exceeds_budget = false;
    int star_columns = 0;
    int class_columns = 0;
};

namespace detail {

// The toy's group structure: client sets of sizes 13, 13, 9, 9 and the target
// fractional point, constant on each (facility, set) pair.
struct Example1Data {
    std::vector<long long> size{13, 13, 9, 9};
    std::vector<Rat> ybar{Rat(1), Rat(1), make_rat(9, 10), make_rat(9, 10)};
    // xbar[f][k]: per-client assignment of set k to facility f.
    std::vector<std::vector<Rat>> xbar{
        {Rat(1), Rat(0), Rat(0), Rat(0)},
        {Rat(0), Rat(1), Rat(0), Rat(0)},
        {Rat(0), Rat(0), make_rat(9, 10), make_rat(1, 10)},
        {Rat(0), Rat(0), make_rat(1, 10), make_rat(9, 10)},
    };
    long long B = 10;
};

}  // namespace detail

/// Decides both halves of the toy separation by exact LP feasibility over
/// orbit-reduced columns. Only columns supported by the target point appear:
/// any class assigning a pair where the target is zero is forced to weight
/// zero by the projection equalities, so dropping it loses nothing. Weights
/// of the remaining columns can be averaged over the within-set client
/// permutations fixing the target, which collapses clients to per-set counts.
inline Example1Report example1_verify() {
    const detail::Example1Data d;
    Example1Report rep;

    // Column kinds per facility under the support restriction: facilities 0
    // and 1 draw only from their own set; facilities 2 and 3 from sets 2, 3.
    struct Column {
        int facility;
        std::vector<long long> take;  // clients taken per set
    };

    auto star_columns = [&]() {
        std::vector<Column> cols;
        for (int f = 0; f < 2; ++f)
            for (long long k = d.B; k <= d.size[f]; ++k) {
                Column c{f, {0, 0, 0, 0}};
                c.take[f] = k;
                cols.push_back(c);
            }
        for (int f = 2; f < 4; ++f)
            for (long long k2 = 0; k2 <= d.size[2]; ++k2)
                for (long long k3 = 0; k3 <= d.size[3]; ++k3) {
                    if (k2 + k3 < d.B) continue;
                    Column c{f, {0, 0, k2, k3}};
                    cols.push_back(c);
                }
        return cols;
    }();

    {
        LinearProgram lp;
        for (size_t k = 0; k < star_columns.size(); ++k)
            lp.add_variable("w" + std::to_string(k), Rat(0), std::nullopt);
        // Projection equalities per supported (facility, set) pair and per
        // facility opening; cover rows are implied by the target sums.
        for (int f = 0; f < 4; ++f) {
            std::map<int, Rat> yrow;
            for (size_t k = 0; k < star_columns.size(); ++k)
                if (star_columns[k].facility == f) yrow[static_cast<int>(k)] = 1;
            lp.add_constraint(std::move(yrow), Rel::Eq, d.ybar[f]);
            for (int set = 0; set < 4; ++set) {
                std::map<int, Rat> xrow;
                for (size_t k = 0; k < star_columns.size(); ++k)
                    if (star_columns[k].facility == f && star_columns[k].take[set] > 0)
                        xrow[static_cast<int>(k)] =
                            Rat(star_columns[k].take[set]) / Rat(d.size[set]);
                if (xrow.empty() && d.xbar[f][set] == 0) continue;
                lp.add_constraint(std::move(xrow), Rel::Eq, d.xbar[f][set]);
            }
        }
        rep.star_columns = static_cast<int>(star_columns.size());
        const auto sol = solve_lp(lp);
        rep.star_feasible = sol.status == LpStatus::Optimal;
        if (rep.star_feasible) verify_optimal_certificate(lp, sol);
    }

    // Class columns of the complexity-3/4 set restricted to the support:
    // the two full 3-facility integral solutions, plus every 3-facility
    // restriction of a 4-facility integral solution that keeps {0, 1, f}.
    struct ClassColumn {
        std::vector<long long> take0, take1;  // sizes from sets 0 and 1
        int farlike;                          // facility 2 or 3
        long long k2, k3;
    };
    std::vector<ClassColumn> class_columns;
    for (int farlike = 2; farlike < 4; ++farlike) {
        // Full integral solutions: everything assigned.
        class_columns.push_back(ClassColumn{{13}, {13}, farlike, 9, 9});
    }
    for (int farlike = 2; farlike < 4; ++farlike)
        for (long long a0 = d.B; a0 <= 13; ++a0)
            for (long long a1 = d.B; a1 <= 13; ++a1)
                for (long long k2 = 0; k2 <= 9; ++k2)
                    for (long long k3 = 0; k3 <= 9; ++k3) {
                        if (k2 + k3 < d.B) continue;
                        const long long dropped = 44 - a0 - a1 - k2 - k3;
                        if (dropped < d.B) continue;  // the dropped facility held >= B
                        class_columns.push_back(ClassColumn{{a0}, {a1}, farlike, k2, k3});
                    }

    {
        LinearProgram lp;
        for (size_t k = 0; k < class_columns.size(); ++k)
            lp.add_variable("w" + std::to_string(k), Rat(0), std::nullopt);
        auto xrow = [&](int f, int set) {
            std::map<int, Rat> row;
            for (size_t k = 0; k < class_columns.size(); ++k) {
                const auto& c = class_columns[k];
                Rat take = 0;
                if (f == 0 && set == 0) take = Rat(c.take0[0]);
                if (f == 1 && set == 1) take = Rat(c.take1[0]);
                if (f == c.farlike && set == 2) take = Rat(c.k2);
                if (f == c.farlike && set == 3) take = Rat(c.k3);
                if (take != 0) row[static_cast<int>(k)] = take / Rat(d.size[set]);
            }
            return row;
        };
        for (int f = 0; f < 4; ++f) {
            std::map<int, Rat> yrow;
            for (size_t k = 0; k < class_columns.size(); ++k)
                if (f < 2 || class_columns[k].farlike == f)
                    yrow[static_cast<int>(k)] = 1;
            lp.add_constraint(std::move(yrow), Rel::Eq, d.ybar[f]);
            for (int set = 0; set < 4; ++set) {
                auto row = xrow(f, set);
                if (row.empty() && d.xbar[f][set] == 0) continue;
                lp.add_constraint(std::move(row), Rel::Eq, d.xbar[f][set]);
            }
        }
        rep.class_columns = static_cast<int>(class_columns.size());
        const auto sol = solve_lp(lp);
        rep.constellation_infeasible = sol.status == LpStatus::Infeasible;
        if (rep.constellation_infeasible) {
            verify_infeasibility_certificate(lp, sol);
            rep.farkas_verified = true;
        }
    }

    // The structural reason: every support-restricted class contains exactly
    // one of facilities 2 and 3 together with both of 0 and 1, so matching
    // ybar_2 + ybar_3 = 18/10 of measure forces more than a unit of facility
    // 0, which the budget row caps at ybar_0 = 1.
    rep.forced_f34_measure = d.ybar[2] + d.ybar[3];
    rep.forced_mass_exceeds_budget = rep.forced_f34_measure > d.ybar[0];
    return rep;
}

}  // namespace liftgap
