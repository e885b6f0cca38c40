// The three relaxation families and the machinery around them: the standard
// (y,x) LP, the star LP, the exact strip-packing conversion between them, and
// constellation LPs over explicit class sets.
#pragma once

#include "liftgap/errors.hpp"
#include "liftgap/instance.hpp"
#include "liftgap/integral.hpp"
#include "liftgap/lp.hpp"
#include "liftgap/solver.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace liftgap {

// Variable layout of the standard LP: y_0..y_{n-1} first, then x_{i,j} in
// facility-major order.
inline int std_y_index(int i) { return i; }
inline int std_x_index(int n, long long m, int i, long long j) {
    return static_cast<int>(n + i * m + j);
}

/// Standard relaxation: opening and assignment variables in [0,1], assignment
/// dominated by opening, unit cover per client, and the capacity (CFL) or
/// lower-bound (LBFL) coupling row per facility.
inline LinearProgram standard_lp(const FacilityLocationInstance& inst,
                                 long long max_variables = 200000) {
    const int n = inst.n_facilities;
    const long long m = inst.n_clients;
    if (n + n * m > max_variables)
        throw BudgetExceeded("standard LP would need " + std::to_string(n + n * m) +
                             " variables");
    LinearProgram lp;
    for (int i = 0; i < n; ++i) lp.add_variable("y_" + std::to_string(i), Rat(0), Rat(1));
    for (int i = 0; i < n; ++i)
        for (long long j = 0; j < m; ++j)
            lp.add_variable("x_" + std::to_string(i) + "_" + std::to_string(j), Rat(0),
                            Rat(1));
    std::map<int, Rat> obj;
    for (int i = 0; i < n; ++i)
        if (inst.opening_cost[i] != 0) obj[std_y_index(i)] = inst.opening_cost[i];
    for (int i = 0; i < n; ++i)
        for (long long j = 0; j < m; ++j) {
            const Rat c = inst.connection_cost(i, j);
            if (c != 0) obj[std_x_index(n, m, i, j)] = c;
        }
    lp.set_objective(std::move(obj));
    for (int i = 0; i < n; ++i)
        for (long long j = 0; j < m; ++j)
            lp.add_constraint({{std_x_index(n, m, i, j), Rat(1)}, {std_y_index(i), Rat(-1)}},
                              Rel::Le, Rat(0),
                              "open_" + std::to_string(i) + "_" + std::to_string(j));
    for (long long j = 0; j < m; ++j) {
        std::map<int, Rat> cover;
        for (int i = 0; i < n; ++i) cover[std_x_index(n, m, i, j)] = 1;
        lp.add_constraint(std::move(cover), Rel::Eq, Rat(1), "cover_" + std::to_string(j));
    }
    for (int i = 0; i < n; ++i) {
        std::map<int, Rat> load;
        for (long long j = 0; j < m; ++j) load[std_x_index(n, m, i, j)] = 1;
        load[std_y_index(i)] = -Rat(inst.capacity_or_bound);
        lp.add_constraint(std::move(load), inst.mode == Mode::CFL ? Rel::Le : Rel::Ge,
                          Rat(0), "load_" + std::to_string(i));
    }
    return lp;
}

/// Collapsed standard LP for instances whose connection cost is constant per
/// facility: one assignment variable per facility stands for all clients.
/// Averaging any feasible (y,x) over the clients shows the collapse is exact.
inline LinearProgram client_symmetric_standard_lp(const FacilityLocationInstance& inst) {
    const auto d = inst.uniform_connection_costs();
    if (!d)
        throw std::invalid_argument(
            "client-symmetric LP needs per-facility-uniform connection costs");
    const int n = inst.n_facilities;
    const Rat m(inst.n_clients);
    LinearProgram lp;
    for (int i = 0; i < n; ++i) lp.add_variable("y_" + std::to_string(i), Rat(0), Rat(1));
    for (int i = 0; i < n; ++i)
        lp.add_variable("chi_" + std::to_string(i), Rat(0), Rat(1));
    std::map<int, Rat> obj;
    for (int i = 0; i < n; ++i) {
        if (inst.opening_cost[i] != 0) obj[i] = inst.opening_cost[i];
        if ((*d)[i] != 0) obj[n + i] = m * (*d)[i];
    }
    lp.set_objective(std::move(obj));
    std::map<int, Rat> cover;
    for (int i = 0; i < n; ++i) {
        lp.add_constraint({{n + i, Rat(1)}, {i, Rat(-1)}}, Rel::Le, Rat(0),
                          "open_" + std::to_string(i));
        lp.add_constraint({{n + i, m}, {i, -Rat(inst.capacity_or_bound)}},
                          inst.mode == Mode::CFL ? Rel::Le : Rel::Ge, Rat(0),
                          "load_" + std::to_string(i));
        cover[n + i] = 1;
    }
    lp.add_constraint(std::move(cover), Rel::Eq, Rat(1), "cover");
    return lp;
}

// --- stars -------------------------------------------------------------------

struct Star {
    int facility = -1;
    std::vector<long long> clients;  // sorted ascending
};

inline Rat star_cost(const FacilityLocationInstance& inst, const Star& s) {
    Rat c = inst.opening_cost[s.facility];
    for (long long j : s.clients) c += inst.connection_cost(s.facility, j);
    return c;
}

struct StarLp {
    LinearProgram lp;
    std::vector<Star> stars;  // stars[k] is LP variable k
};

namespace detail {
inline Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return Int(0);
    Int r = 1;
    for (long long i = 0; i < k; ++i) r = r * Int(n - i) / Int(i + 1);
    return r;
}
}  // namespace detail

/// Star relaxation: one variable per admissible star (at most U clients for
/// CFL, at least B for LBFL), unit cover per client, at most one star per
/// facility. The enumeration is guarded: the exact star count is computed
/// first and compared against the budget.
inline StarLp star_lp(const FacilityLocationInstance& inst,
                      std::optional<long long> max_star_size = std::nullopt,
                      long long star_budget = 200000) {
    const int n = inst.n_facilities;
    const long long m = inst.n_clients;
    long long lo, hi;
    if (inst.mode == Mode::CFL) {
        lo = 1;
        hi = std::min<long long>(inst.capacity_or_bound,
                                 max_star_size.value_or(m));
    } else {
        lo = inst.capacity_or_bound;
        hi = max_star_size.value_or(m);
    }
    hi = std::min(hi, m);
    Int count = 0;
    for (long long k = lo; k <= hi; ++k) count += detail::binomial(m, k);
    count *= n;
    if (count > star_budget)
        throw BudgetExceeded("star enumeration would produce " + count.str() +
                             " stars (budget " + std::to_string(star_budget) + ")");

    StarLp out;
    for (int i = 0; i < n; ++i) {
        for (long long k = lo; k <= hi; ++k) {
            std::vector<long long> pick(k);
            for (long long t = 0; t < k; ++t) pick[t] = t;
            while (true) {
                out.stars.push_back(Star{i, pick});
                long long t = k - 1;
                while (t >= 0 && pick[t] == m - k + t) --t;
                if (t < 0) break;
                ++pick[t];
                for (long long q = t + 1; q < k; ++q) pick[q] = pick[q - 1] + 1;
            }
        }
    }
    std::map<int, Rat> obj;
    std::vector<std::map<int, Rat>> cover(m);
    std::vector<std::map<int, Rat>> per_facility(n);
    for (size_t s = 0; s < out.stars.size(); ++s) {
        const int var = out.lp.add_variable("s" + std::to_string(s), Rat(0), std::nullopt);
        const Rat c = star_cost(inst, out.stars[s]);
        if (c != 0) obj[var] = c;
        per_facility[out.stars[s].facility][var] = 1;
        for (long long j : out.stars[s].clients) cover[j][var] = 1;
    }
    out.lp.set_objective(std::move(obj));
    for (long long j = 0; j < m; ++j)
        out.lp.add_constraint(std::move(cover[j]), Rel::Eq, Rat(1),
                              "cover_" + std::to_string(j));
    for (int i = 0; i < n; ++i)
        out.lp.add_constraint(std::move(per_facility[i]), Rel::Le, Rat(1),
                              "facility_" + std::to_string(i));
    return out;
}

// --- classic -> star conversion ----------------------------------------------

struct WeightedStar {
    Star star;
    Rat weight;
};

/// Exact decomposition of a feasible standard-LP point into weighted stars by
/// strip packing: facility i gets a rectangle of height y_i and width
/// ceil(sum_j x_ij / y_i); assignments are packed strip by strip in ascending
/// client order, and every packing height becomes a horizontal cut. Each
/// horizontal region is one star whose weight is the region height.
///
/// The output satisfies, exactly: per-client cover 1, per-facility mass y_i,
/// and total cost equal to the input cost. For CFL a region can be empty of
/// clients; the facility-only star then carries the remaining opening mass.
inline std::vector<WeightedStar> classic_to_star(
    const FacilityLocationInstance& inst, const std::vector<Rat>& y,
    const std::vector<std::vector<Rat>>& x) {
    const int n = inst.n_facilities;
    const long long m = inst.n_clients;
    // Feasibility of the input is a precondition; verify it outright.
    for (long long j = 0; j < m; ++j) {
        Rat cover = 0;
        for (int i = 0; i < n; ++i) {
            if (x[i][j] < 0 || x[i][j] > y[i])
                throw std::invalid_argument("infeasible input solution: x out of [0,y]");
            cover += x[i][j];
        }
        if (cover != 1)
            throw std::invalid_argument("infeasible input solution: client " +
                                        std::to_string(j) + " not covered exactly once");
    }
    for (int i = 0; i < n; ++i) {
        if (y[i] < 0 || y[i] > 1)
            throw std::invalid_argument("infeasible input solution: y out of [0,1]");
        Rat total = 0;
        for (long long j = 0; j < m; ++j) total += x[i][j];
        const Rat capy = Rat(inst.capacity_or_bound) * y[i];
        if (inst.mode == Mode::CFL && total > capy)
            throw std::invalid_argument("infeasible input solution: capacity violated");
        if (inst.mode == Mode::LBFL && total < capy)
            throw std::invalid_argument("infeasible input solution: bound violated");
    }

    std::vector<WeightedStar> out;
    for (int i = 0; i < n; ++i) {
        if (y[i] == 0) continue;
        Rat total = 0;
        for (long long j = 0; j < m; ++j) total += x[i][j];
        struct Segment {
            long long strip;
            long long client;
            Rat lo, hi;
        };
        std::vector<Segment> segments;
        std::set<Rat> cuts{Rat(0), y[i]};
        long long strip = 0;
        Rat h = 0;
        for (long long j = 0; j < m; ++j) {
            Rat rem = x[i][j];
            while (rem > 0) {
                const Rat take = rat_min(rem, y[i] - h);
                segments.push_back(Segment{strip, j, h, h + take});
                cuts.insert(h + take);
                h += take;
                rem -= take;
                if (h == y[i]) {
                    ++strip;
                    h = 0;
                }
            }
        }
        std::vector<Rat> hs(cuts.begin(), cuts.end());
        const size_t regions = hs.size() - 1;
        std::vector<std::set<long long>> region_clients(regions);
        for (const Segment& seg : segments) {
            const size_t first =
                std::lower_bound(hs.begin(), hs.end(), seg.lo) - hs.begin();
            const size_t last =
                std::lower_bound(hs.begin(), hs.end(), seg.hi) - hs.begin();
            for (size_t r = first; r < last; ++r)
                if (!region_clients[r].insert(seg.client).second)
                    throw std::logic_error("packing placed one client twice in a region");
        }
        for (size_t r = 0; r < regions; ++r) {
            const Rat weight = hs[r + 1] - hs[r];
            if (weight == 0) continue;
            Star s;
            s.facility = i;
            s.clients.assign(region_clients[r].begin(), region_clients[r].end());
            if (inst.mode == Mode::LBFL &&
                static_cast<long long>(s.clients.size()) < inst.capacity_or_bound)
                throw std::logic_error("packing produced an undersized star");
            if (inst.mode == Mode::CFL &&
                static_cast<long long>(s.clients.size()) > inst.capacity_or_bound)
                throw std::logic_error("packing produced an oversized star");
            out.push_back(WeightedStar{std::move(s), weight});
        }
    }
    return out;
}

// --- classes and constellation LPs ---------------------------------------------

/// A 0-1 (y,x) snapshot: a facility set plus an assignment of some clients to
/// facilities of the set, each client at most once. Stored sparsely.
struct Class {
    std::set<int> facilities;
    std::set<std::pair<int, long long>> assignments;

    bool operator<(const Class& o) const {
        if (facilities != o.facilities) return facilities < o.facilities;
        return assignments < o.assignments;
    }
    bool operator==(const Class& o) const {
        return facilities == o.facilities && assignments == o.assignments;
    }
};

inline void validate_class(const Class& cl) {
    std::set<long long> seen;
    for (const auto& [i, j] : cl.assignments) {
        if (!cl.facilities.count(i))
            throw std::invalid_argument("class assigns a client to a missing facility");
        if (!seen.insert(j).second)
            throw std::invalid_argument("class assigns one client twice");
    }
}

inline Rat class_cost(const FacilityLocationInstance& inst, const Class& cl) {
    Rat c = 0;
    for (int i : cl.facilities) c += inst.opening_cost[i];
    for (const auto& [i, j] : cl.assignments) c += inst.connection_cost(i, j);
    return c;
}

struct ClassSet {
    std::vector<Class> classes;
    bool symmetric_closed = false;
};

inline Class class_from_integral_solution(const IntegralSolution& s) {
    Class cl;
    for (size_t i = 0; i < s.open.size(); ++i)
        if (s.open[i]) cl.facilities.insert(static_cast<int>(i));
    for (size_t j = 0; j < s.assignment.size(); ++j)
        cl.assignments.emplace(s.assignment[j], static_cast<long long>(j));
    return cl;
}

/// LP over one variable per class: class costs in the objective, exact unit
/// cover per client, at most unit facility mass, nonnegative weights.
inline LinearProgram constellation_lp(const FacilityLocationInstance& inst,
                                      const ClassSet& cs,
                                      long long max_rows = 100000) {
    if (cs.classes.empty()) throw std::invalid_argument("empty class set");
    const long long m = inst.n_clients;
    if (m + inst.n_facilities > max_rows)
        throw BudgetExceeded("constellation LP needs too many rows");
    LinearProgram lp;
    std::map<int, Rat> obj;
    std::vector<std::map<int, Rat>> cover(m);
    std::vector<std::map<int, Rat>> per_facility(inst.n_facilities);
    for (size_t k = 0; k < cs.classes.size(); ++k) {
        validate_class(cs.classes[k]);
        const int var = lp.add_variable("cl" + std::to_string(k), Rat(0), std::nullopt);
        const Rat c = class_cost(inst, cs.classes[k]);
        if (c != 0) obj[var] = c;
        for (int i : cs.classes[k].facilities) per_facility[i][var] = 1;
        for (const auto& [i, j] : cs.classes[k].assignments) {
            (void)i;
            cover[j][var] = 1;
        }
    }
    lp.set_objective(std::move(obj));
    for (long long j = 0; j < m; ++j)
        lp.add_constraint(std::move(cover[j]), Rel::Eq, Rat(1),
                          "cover_" + std::to_string(j));
    for (int i = 0; i < inst.n_facilities; ++i)
        lp.add_constraint(std::move(per_facility[i]), Rel::Le, Rat(1),
                          "facility_" + std::to_string(i));
    return lp;
}

struct Projection {
    std::vector<Rat> y;
    std::map<std::pair<int, long long>, Rat> x;
};

/// Projection of class weights onto (y,x): y_i sums the weight of classes
/// containing i, x_ij the weight of classes assigning j to i.
inline Projection project_constellation(const ClassSet& cs,
                                        const std::vector<Rat>& weights,
                                        int n_facilities) {
    if (weights.size() != cs.classes.size())
        throw std::invalid_argument("weights not indexed by the class set");
    Projection p;
    p.y.assign(n_facilities, Rat(0));
    for (size_t k = 0; k < cs.classes.size(); ++k) {
        if (weights[k] == 0) continue;
        for (int i : cs.classes[k].facilities) p.y[i] += weights[k];
        for (const auto& a : cs.classes[k].assignments) p.x[a] += weights[k];
    }
    return p;
}

namespace detail {
inline Class permute_class(const Class& cl, const std::vector<int>& fperm,
                           const std::vector<long long>& cperm) {
    Class out;
    for (int i : cl.facilities) out.facilities.insert(fperm[i]);
    for (const auto& [i, j] : cl.assignments) out.assignments.emplace(fperm[i], cperm[j]);
    return out;
}
}  // namespace detail

/// Closure of a class set under all facility and client permutations, built
/// by breadth-first search over adjacent transpositions (they generate the
/// full symmetric groups). Throws BudgetExceeded when the orbit grows past
/// the budget, reporting the partial size.
inline ClassSet symmetry_closure(const ClassSet& cs, const FacilityLocationInstance& inst,
                                 long long orbit_budget = 100000) {
    const int n = inst.n_facilities;
    const long long m = inst.n_clients;
    std::set<Class> seen(cs.classes.begin(), cs.classes.end());
    std::deque<Class> queue(cs.classes.begin(), cs.classes.end());
    std::vector<int> fid(n);
    std::vector<long long> cid(m);
    while (!queue.empty()) {
        const Class cur = queue.front();
        queue.pop_front();
        auto push = [&](Class img) {
            if (seen.insert(img).second) {
                if (static_cast<long long>(seen.size()) > orbit_budget)
                    throw BudgetExceeded("symmetry closure exceeded orbit budget at size " +
                                         std::to_string(seen.size()));
                queue.push_back(std::move(img));
            }
        };
        for (int a = 0; a + 1 < n; ++a) {
            for (int i = 0; i < n; ++i) fid[i] = i;
            std::swap(fid[a], fid[a + 1]);
            for (long long j = 0; j < m; ++j) cid[j] = j;
            push(detail::permute_class(cur, fid, cid));
        }
        for (long long a = 0; a + 1 < m; ++a) {
            for (int i = 0; i < n; ++i) fid[i] = i;
            for (long long j = 0; j < m; ++j) cid[j] = j;
            std::swap(cid[a], cid[a + 1]);
            push(detail::permute_class(cur, fid, cid));
        }
    }
    ClassSet out;
    out.classes.assign(seen.begin(), seen.end());
    out.symmetric_closed = true;
    return out;
}

/// Largest number of facilities open in any integral feasible solution, by
/// explicit enumeration over facility subsets.
inline int max_open_facilities(const FacilityLocationInstance& inst,
                               long long subset_budget = (1LL << 22)) {
    const int n = inst.n_facilities;
    if (n >= 60 || (1LL << n) > subset_budget)
        throw BudgetExceeded("facility subset enumeration exceeds budget");
    const long long cap = inst.capacity_or_bound;
    int best = -1;
    for (long long mask = 1; mask < (1LL << n); ++mask) {
        const int size = __builtin_popcountll(mask);
        const bool ok = inst.mode == Mode::CFL ? size * cap >= inst.n_clients
                                               : size * cap <= inst.n_clients;
        if (ok) best = std::max(best, size);
    }
    if (best < 0) throw std::invalid_argument("instance is integrally infeasible");
    return best;
}

/// Complexity of the relaxation induced by a class set: the largest class
/// facility count over the maximum feasibly-openable count. (For finite class
/// sets the supremum in the definition is a maximum.)
inline Rat complexity(const ClassSet& cs, const FacilityLocationInstance& inst) {
    if (cs.classes.empty()) throw std::invalid_argument("empty class set");
    size_t biggest = 0;
    for (const Class& cl : cs.classes) biggest = std::max(biggest, cl.facilities.size());
    return Rat(static_cast<long long>(biggest)) / Rat(max_open_facilities(inst));
}

/// Complexity for a class family described only by its largest facility
/// count (e.g. the star relaxation, whose classes all have one facility).
inline Rat complexity_of_max_class_size(long long largest_class,
                                        const FacilityLocationInstance& inst) {
    return Rat(largest_class) / Rat(max_open_facilities(inst));
}

struct ValidityResult {
    bool valid = true;
    std::optional<IntegralSolution> witness;  // first failing integral solution
};

/// Validity of LP(C): every integral solution must be the projection of some
/// feasible class weighting. Decided one integral solution at a time by an
/// exact feasibility LP with projection-equality rows.
inline ValidityResult validity_check(const ClassSet& cs,
                                     const FacilityLocationInstance& inst,
                                     long long enumeration_budget = 200000) {
    const auto solutions = enumerate_integral_solutions(inst, enumeration_budget);
    const int n = inst.n_facilities;
    const long long m = inst.n_clients;
    for (const IntegralSolution& s : solutions) {
        LinearProgram lp;
        for (size_t k = 0; k < cs.classes.size(); ++k)
            lp.add_variable("w" + std::to_string(k), Rat(0), std::nullopt);
        std::vector<std::map<int, Rat>> cover(m), y_rows(n);
        std::map<std::pair<int, long long>, std::map<int, Rat>> x_rows;
        for (size_t k = 0; k < cs.classes.size(); ++k) {
            for (int i : cs.classes[k].facilities) y_rows[i][static_cast<int>(k)] = 1;
            for (const auto& a : cs.classes[k].assignments) {
                cover[a.second][static_cast<int>(k)] = 1;
                x_rows[a][static_cast<int>(k)] = 1;
            }
        }
        for (long long j = 0; j < m; ++j)
            lp.add_constraint(std::move(cover[j]), Rel::Eq, Rat(1));
        for (int i = 0; i < n; ++i)
            lp.add_constraint(std::move(y_rows[i]), Rel::Eq, s.open[i] ? Rat(1) : Rat(0));
        // x projection equalities, including the zero pairs.
        for (int i = 0; i < n; ++i)
            for (long long j = 0; j < m; ++j) {
                auto it = x_rows.find({i, j});
                std::map<int, Rat> row;
                if (it != x_rows.end()) row = it->second;
                const bool assigned = s.assignment[j] == i;
                lp.add_constraint(std::move(row), Rel::Eq, assigned ? Rat(1) : Rat(0));
            }
        const auto sol = solve_lp(lp);
        if (sol.status == LpStatus::Infeasible) {
            verify_infeasibility_certificate(lp, sol);
            return ValidityResult{false, s};
        }
        if (sol.status != LpStatus::Optimal)
            throw std::logic_error("validity feasibility LP unbounded");
        verify_optimal_certificate(lp, sol);
    }
    return ValidityResult{true, std::nullopt};
}

}  // namespace liftgap
