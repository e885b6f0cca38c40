// Evolution-tree witnesses over the cheap/costly instance family, stored in
// orbit-compressed form: clients with identical assignment profiles share one
// orbit record, and touching an assignment splits a singleton off the bulk.
// The full assignment dimension is Theta(n^5), so nothing here ever expands
// a solution densely except on demand for micro instances.
#pragma once

#include "liftgap/errors.hpp"
#include "liftgap/instance.hpp"
#include "liftgap/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace liftgap {

enum class WitnessType { Type1 = 1, Type2 = 2 };

/// Coordinate of the lifted solution being touched: a facility-open variable
/// or one client's assignment variable.
struct TouchedVar {
    bool is_assignment = false;
    int facility = -1;
    long long client = -1;  // meaningful only for assignment variables

    static TouchedVar open(int facility) { return TouchedVar{false, facility, -1}; }
    static TouchedVar assign(int facility, long long client) {
        return TouchedVar{true, facility, client};
    }
    std::string to_string() const {
        return is_assignment
                   ? "x[" + std::to_string(facility) + "," + std::to_string(client) + "]"
                   : "y[" + std::to_string(facility) + "]";
    }
};

struct ClientOrbit {
    long long size = 0;
    std::optional<long long> client_id;  // set = singleton, empty = bulk
    std::vector<Rat> assign;             // per facility
};

struct OrbitSolution {
    std::vector<Rat> y;
    std::vector<ClientOrbit> orbits;  // orbits[0] is the bulk orbit
    int depth = 0;
    std::vector<std::pair<TouchedVar, WitnessType>> history;

    int orbit_of_client(long long j) const {
        for (size_t o = 1; o < orbits.size(); ++o)
            if (orbits[o].client_id && *orbits[o].client_id == j)
                return static_cast<int>(o);
        return 0;
    }
    Rat x(int facility, long long client) const {
        return orbits[orbit_of_client(client)].assign[facility];
    }
    Rat value(const TouchedVar& v) const {
        return v.is_assignment ? x(v.facility, v.client) : y[v.facility];
    }
    long long total_clients() const {
        long long s = 0;
        for (const auto& o : orbits) s += o.size;
        return s;
    }
    std::string history_string() const {
        std::ostringstream os;
        for (size_t k = 0; k < history.size(); ++k) {
            if (k) os << " ";
            os << history[k].first.to_string()
               << (history[k].second == WitnessType::Type1 ? ":1" : ":2");
        }
        return os.str();
    }
};

/// Parameters of the cheap/costly family, pulled out of a labeled instance.
struct LsShape {
    long long n = 0, l = 0, U = 0, m = 0;
    Rat H, a, b;
    std::vector<int> cheap, costly;
    std::vector<FacilityLabel> labels;
};

inline LsShape ls_shape(const LabeledInstance& inst) {
    LsShape s;
    for (const char* p : {"n", "l", "H", "a", "b", "U"})
        if (!inst.params.count(p))
            throw std::invalid_argument("instance lacks cheap/costly parameters");
    s.n = inst.param_ll("n");
    s.l = inst.param_ll("l");
    s.U = inst.param_ll("U");
    s.H = inst.param("H");
    s.a = inst.param("a");
    s.b = inst.param("b");
    s.m = inst.base.n_clients;
    s.labels = inst.facility_labels;
    for (int i = 0; i < inst.base.n_facilities; ++i) {
        if (inst.facility_labels[i] == FacilityLabel::Cheap) s.cheap.push_back(i);
        else if (inst.facility_labels[i] == FacilityLabel::Costly) s.costly.push_back(i);
        else throw std::invalid_argument("instance has non cheap/costly facilities");
    }
    if (static_cast<long long>(s.cheap.size()) != s.n ||
        static_cast<long long>(s.costly.size()) != s.l)
        throw std::invalid_argument("labels disagree with parameters");
    if (s.b >= 1)
        throw std::invalid_argument("costly opening value b must be fractional");
    return s;
}

/// The root fractional solution: cheap facilities fully open serving (1-a)/n
/// of every client, costly facilities at b serving a/l of every client.
inline OrbitSolution root_solution(const LabeledInstance& inst) {
    const LsShape s = ls_shape(inst);
    OrbitSolution root;
    root.y.assign(s.n + s.l, Rat(1));
    for (int i : s.costly) root.y[i] = s.b;
    ClientOrbit bulk;
    bulk.size = s.m;
    bulk.assign.assign(s.n + s.l, Rat(0));
    for (int i : s.cheap) bulk.assign[i] = (1 - s.a) / Rat(s.n);
    for (int i : s.costly) bulk.assign[i] = s.a / Rat(s.l);
    root.orbits.push_back(std::move(bulk));
    return root;
}

namespace detail {

inline int cheap_support(const LsShape& s, const std::vector<Rat>& profile) {
    int t = 0;
    for (int i : s.cheap)
        if (profile[i] != 0) ++t;
    return t;
}

/// Copy of `node` in which client j sits in its own singleton orbit.
inline OrbitSolution split_client(const OrbitSolution& node, long long j) {
    const int o = node.orbit_of_client(j);
    if (o != 0) return node;  // already singleton
    OrbitSolution out = node;
    ClientOrbit single;
    single.size = 1;
    single.client_id = j;
    single.assign = out.orbits[0].assign;
    out.orbits[0].size -= 1;
    if (out.orbits[0].size < 0)
        throw std::logic_error("bulk orbit exhausted");
    out.orbits.push_back(std::move(single));
    return out;
}

}  // namespace detail

/// One child of the evolution tree. Type-1 children follow the touched-case
/// construction directly; type-2 children are the twins of their type-1
/// siblings, computed coordinate-wise as (parent - z_v * type1) / (1 - z_v).
/// Touching an integral variable returns the forced child (a copy), since
/// integral coordinates are replicated in every witness.
inline OrbitSolution touch(const LabeledInstance& inst, const OrbitSolution& node,
                           const TouchedVar& var, WitnessType wtype,
                           std::optional<int> depth_cap = std::nullopt) {
    if (depth_cap && node.depth >= *depth_cap)
        throw BudgetExceeded("touch beyond the depth cap of " +
                             std::to_string(*depth_cap));
    const LsShape s = ls_shape(inst);
    const Rat zv = node.value(var);
    auto stamp = [&](OrbitSolution child) {
        child.depth = node.depth + 1;
        child.history.push_back({var, wtype});
        return child;
    };
    if (zv == 1) {
        if (wtype == WitnessType::Type1) return stamp(node);  // forced: Y_i = z
        throw std::invalid_argument("type-2 witness undefined for a coordinate at one");
    }
    if (zv == 0) {
        if (wtype == WitnessType::Type2) return stamp(node);  // forced: (z-0)/(1-0)
        throw std::invalid_argument("type-1 witness undefined for a zero coordinate");
    }

    // Aligned parent: same orbit structure as the child about to be built.
    OrbitSolution parent =
        var.is_assignment ? detail::split_client(node, var.client) : node;

    OrbitSolution c1 = parent;
    if (!var.is_assignment) {
        // Touched facility-open variable; only costly ones can be fractional.
        const int ik = var.facility;
        if (s.labels[ik] != FacilityLabel::Costly)
            throw std::logic_error("fractional open variable outside the costly set");
        c1.y[ik] = 1;
        for (auto& orbit : c1.orbits) {
            const Rat xk = orbit.assign[ik];
            orbit.assign[ik] = xk / zv;
            if (xk == 0) continue;
            const int t = detail::cheap_support(s, orbit.assign);
            if (t == 0)
                throw std::logic_error("no cheap support left to absorb the rescaling");
            const Rat shift = (Rat(1) / zv - 1) * xk / Rat(t);
            for (int i : s.cheap)
                if (orbit.assign[i] != 0) orbit.assign[i] -= shift;
        }
    } else {
        const int ik = var.facility;
        const int o = c1.orbit_of_client(var.client);
        const std::vector<Rat> before = c1.orbits[o].assign;
        auto& prof = c1.orbits[o].assign;
        if (s.labels[ik] == FacilityLabel::Costly) {
            // The client is assigned integrally to ik and ik opens fully.
            c1.y[ik] = 1;
            std::fill(prof.begin(), prof.end(), Rat(0));
            prof[ik] = 1;
        } else {
            const int t = detail::cheap_support(s, before);
            std::fill(prof.begin(), prof.end(), Rat(0));
            prof[ik] = 1;
            for (int ip : s.costly) {
                if (c1.y[ip] == 0 || c1.y[ip] == 1) continue;
                c1.y[ip] -= (1 - c1.y[ip]) * before[ip] / (zv * Rat(t));
            }
        }
    }
    if (wtype == WitnessType::Type1) return stamp(std::move(c1));

    // Twin: (parent - zv * c1) / (1 - zv), coordinate-wise over the aligned
    // orbit structure.
    OrbitSolution c2 = parent;
    for (size_t i = 0; i < c2.y.size(); ++i)
        c2.y[i] = (parent.y[i] - zv * c1.y[i]) / (1 - zv);
    for (size_t o = 0; o < c2.orbits.size(); ++o)
        for (size_t i = 0; i < c2.orbits[o].assign.size(); ++i)
            c2.orbits[o].assign[i] =
                (parent.orbits[o].assign[i] - zv * c1.orbits[o].assign[i]) / (1 - zv);
    if (c2.value(var) != 0)
        throw std::logic_error("twin did not zero the touched variable");
    return stamp(std::move(c2));
}

// --- node verification -----------------------------------------------------------

struct NodeFeasibility {
    bool feasible = true;
    std::string violation;
};

/// Exact check of the standard-relaxation constraints on the compressed node:
/// x in [0,1] dominated by y in [0,1], unit cover per orbit, and the capacity
/// row per facility.
inline NodeFeasibility verify_node_feasibility(const OrbitSolution& node,
                                               const LabeledInstance& inst) {
    NodeFeasibility res;
    auto fail = [&res](std::string what) {
        if (res.feasible) {
            res.feasible = false;
            res.violation = std::move(what);
        }
    };
    const long long U = inst.base.capacity_or_bound;
    const int nf = inst.base.n_facilities;
    long long covered = 0, singletons = 0;
    for (const auto& orbit : node.orbits) {
        covered += orbit.size;
        if (orbit.client_id) ++singletons;
    }
    if (covered != inst.base.n_clients) fail("orbits do not partition the clients");
    if (singletons > node.depth) fail("more singleton orbits than touches");
    for (int i = 0; i < nf; ++i)
        if (node.y[i] < 0 || node.y[i] > 1) fail("y bound at facility " + std::to_string(i));
    for (const auto& orbit : node.orbits) {
        Rat cover = 0;
        for (int i = 0; i < nf; ++i) {
            const Rat& x = orbit.assign[i];
            if (x < 0 || x > 1) fail("x bound at facility " + std::to_string(i));
            if (x > node.y[i]) fail("x exceeds y at facility " + std::to_string(i));
            cover += x;
        }
        if (cover != 1) fail("client cover is " + rat_to_string(cover));
    }
    for (int i = 0; i < nf; ++i) {
        Rat load = 0;
        for (const auto& orbit : node.orbits) load += Rat(orbit.size) * orbit.assign[i];
        if (load > Rat(U) * node.y[i])
            fail("capacity exceeded at facility " + std::to_string(i));
    }
    return res;
}

struct InvariantStatus {
    bool holds = true;
    std::string extremal_variable;
    Rat slack = 0;  // minimum slack over the coordinates checked
    bool any = false;

    void observe(const Rat& s, const std::string& var) {
        if (!any || s < slack) {
            slack = s;
            extremal_variable = var;
            any = true;
        }
        if (s < 0) holds = false;
    }
};

/// Exact status of the seven depth-k drift bounds, with the extremal
/// coordinate and its slack per bound. The second relation of bound 2a is a
/// known typo in its source; it is enforced as an upper bound, and the status
/// of the literal ">=" reading is recorded alongside.
struct InvariantReport {
    InvariantStatus inv1, inv2a, inv2b, inv2c, inv3, inv4a, inv4b;
    bool inv2a_literal_ge_reading = true;
    int depth = 0;

    bool all_hold() const {
        return inv1.holds && inv2a.holds && inv2b.holds && inv2c.holds && inv3.holds &&
               inv4a.holds && inv4b.holds;
    }
};

inline InvariantReport verify_invariants(const OrbitSolution& node,
                                         const LabeledInstance& inst) {
    const LsShape s = ls_shape(inst);
    InvariantReport rep;
    rep.depth = node.depth;
    const Rat k(node.depth);
    const Rat n(s.n), l(s.l), m(s.m);
    const Rat delta = 1 / s.H;
    const Rat cheap_base = (1 - s.a) / n;
    const Rat maxln = rat_max(1 / l, 1 / n);

    const Rat inv1_lo = s.b - 2 * k * s.a / l;
    const Rat inv1_hi = s.b + 2 * k * s.a / l;
    const Rat inv2a_lo = cheap_base - 2 * k * (s.a / (n * l)) / s.b;
    const Rat inv2a_hi = cheap_base + 2 * k * cheap_base * maxln;
    const Rat inv2b_hi = s.a / l + 2 * k * s.a * (1 - s.a) / (n * l);
    const Rat inv2c_hi = inv2b_hi * (1 + delta) / s.b;
    const Rat inv3_hi = m * cheap_base + 2 * k * m * s.a / (n * l);
    const Rat inv4a_hi = m * s.a / l + k;
    const Rat inv4b_hi = inv4a_hi * (1 + delta) / s.b;

    for (int i : s.costly) {
        const Rat& yi = node.y[i];
        if (yi != 0 && yi != 1) {
            rep.inv1.observe(yi - inv1_lo, "y[" + std::to_string(i) + "] lower");
            rep.inv1.observe(inv1_hi - yi, "y[" + std::to_string(i) + "] upper");
        }
    }
    auto orbit_name = [](const ClientOrbit& o, int i) {
        return "x[" + std::to_string(i) + "," +
               (o.client_id ? std::to_string(*o.client_id) : std::string("bulk")) + "]";
    };
    for (const auto& orbit : node.orbits) {
        if (orbit.size == 0) continue;
        for (int i : s.cheap) {
            const Rat& x = orbit.assign[i];
            if (x == 0 || x == 1) continue;
            rep.inv2a.observe(x - inv2a_lo, orbit_name(orbit, i) + " lower");
            rep.inv2a.observe(inv2a_hi - x, orbit_name(orbit, i) + " upper");
            if (x < inv2a_hi) rep.inv2a_literal_ge_reading = false;
        }
        for (int i : s.costly) {
            const Rat& x = orbit.assign[i];
            if (x == 0) continue;
            if (node.y[i] == 1) {
                if (x == 1) continue;
                rep.inv2c.observe(x - s.a / l, orbit_name(orbit, i) + " lower");
                rep.inv2c.observe(inv2c_hi - x, orbit_name(orbit, i) + " upper");
            } else if (node.y[i] != 0) {
                rep.inv2b.observe(x - s.a / l, orbit_name(orbit, i) + " lower");
                rep.inv2b.observe(inv2b_hi - x, orbit_name(orbit, i) + " upper");
            }
        }
    }
    for (int i = 0; i < inst.base.n_facilities; ++i) {
        Rat load = 0;
        for (const auto& orbit : node.orbits) load += Rat(orbit.size) * orbit.assign[i];
        const std::string name = "load[" + std::to_string(i) + "]";
        if (s.labels[i] == FacilityLabel::Cheap) {
            rep.inv3.observe(inv3_hi - load, name);
        } else if (node.y[i] == 1) {
            rep.inv4b.observe(inv4b_hi - load, name);
        } else {
            rep.inv4a.observe(inv4a_hi - load, name);
        }
    }
    return rep;
}

/// Exact twin identity: z_v * type1 + (1 - z_v) * type2 must reproduce the
/// parent coordinate-wise (over the aligned orbit structure).
inline bool twin_identity_holds(const OrbitSolution& parent, const TouchedVar& var,
                                const OrbitSolution& c1, const OrbitSolution& c2) {
    const Rat zv = parent.value(var);
    OrbitSolution aligned = var.is_assignment ? detail::split_client(parent, var.client)
                                              : parent;
    if (c1.y.size() != c2.y.size() || c1.orbits.size() != c2.orbits.size() ||
        aligned.orbits.size() != c1.orbits.size())
        return false;
    for (size_t i = 0; i < aligned.y.size(); ++i)
        if (zv * c1.y[i] + (1 - zv) * c2.y[i] != aligned.y[i]) return false;
    for (size_t o = 0; o < aligned.orbits.size(); ++o)
        for (size_t i = 0; i < aligned.y.size(); ++i)
            if (zv * c1.orbits[o].assign[i] + (1 - zv) * c2.orbits[o].assign[i] !=
                aligned.orbits[o].assign[i])
                return false;
    return true;
}

/// Cumulative count of zeroed cheap assignments over clients that have no
/// integral assignment; grows by at most one per tree level.
inline long long zeroed_cheap_count(const OrbitSolution& node, const LsShape& s) {
    long long count = 0;
    for (const auto& orbit : node.orbits) {
        bool integral = false;
        for (const Rat& x : orbit.assign)
            if (x == 1) integral = true;
        if (integral) continue;
        long long zeros = 0;
        for (int i : s.cheap)
            if (orbit.assign[i] == 0) ++zeros;
        count += zeros * orbit.size;
    }
    return count;
}

// --- sibling symmetry ---------------------------------------------------------------

struct SiblingSymmetryResult {
    bool ok = true;
    std::string violating_pair;
};

/// Pairwise factor symmetry across a node's type-1 children, checked in the
/// cross-multiplied form z_q * w_q(t) == z_t * w_t(q), plus replication of
/// integral coordinates in every witness.
inline SiblingSymmetryResult sibling_symmetry_check(
    const LabeledInstance& inst, const OrbitSolution& parent,
    const std::vector<std::pair<TouchedVar, OrbitSolution>>& type1_children) {
    SiblingSymmetryResult res;
    // Integral open variables must be replicated verbatim in every witness.
    for (const auto& [var, child] : type1_children) {
        for (int i = 0; i < inst.base.n_facilities; ++i) {
            if ((parent.y[i] == 1 || parent.y[i] == 0) && child.y[i] != parent.y[i]) {
                res.ok = false;
                res.violating_pair = "integral y[" + std::to_string(i) + "] changed by " +
                                     var.to_string();
                return res;
            }
        }
    }
    for (size_t aidx = 0; aidx < type1_children.size(); ++aidx)
        for (size_t bidx = 0; bidx < type1_children.size(); ++bidx) {
            if (aidx == bidx) continue;
            const auto& [q, wq] = type1_children[aidx];
            const auto& [t, wt] = type1_children[bidx];
            const Rat zq = parent.value(q), zt = parent.value(t);
            if (zq == 0 || zt == 0) continue;
            if (zq * wq.value(t) != zt * wt.value(q)) {
                res.ok = false;
                res.violating_pair = q.to_string() + " vs " + t.to_string();
                return res;
            }
        }
    return res;
}

// --- tree construction ----------------------------------------------------------------

enum class TreeStrategy { AllChildren, RandomSample };

struct TreeNodeRecord {
    int depth = 0;
    std::string touched_history;
    bool feasible = true;
    bool invariants_ok = true;
    bool twin_ok = true;
    Rat min_slack = 0;
    bool literal_2a_reading = true;
};

struct TreeReport {
    bool all_ok = true;
    long long node_count = 0;
    long long symmetry_checks = 0;
    std::vector<TreeNodeRecord> records;
    std::string first_failure;
};

/// Candidate touch moves at a node: every fractional costly open variable and
/// one representative assignment variable per (client orbit, facility) with a
/// fractional value. Clients inside one orbit are interchangeable, so one
/// representative child stands for the whole orbit.
inline std::vector<TouchedVar> enumerate_moves(const OrbitSolution& node,
                                               const LabeledInstance& inst) {
    const LsShape s = ls_shape(inst);
    std::vector<TouchedVar> moves;
    for (int i : s.costly)
        if (node.y[i] != 0 && node.y[i] != 1) moves.push_back(TouchedVar::open(i));
    std::set<long long> singleton_ids;
    for (const auto& o : node.orbits)
        if (o.client_id) singleton_ids.insert(*o.client_id);
    long long bulk_rep = 0;
    while (singleton_ids.count(bulk_rep)) ++bulk_rep;
    for (const auto& orbit : node.orbits) {
        if (orbit.size == 0) continue;
        const long long rep = orbit.client_id ? *orbit.client_id : bulk_rep;
        for (int i = 0; i < inst.base.n_facilities; ++i) {
            const Rat& x = orbit.assign[i];
            if (x != 0 && x != 1) moves.push_back(TouchedVar::assign(i, rep));
        }
    }
    return moves;
}

/// Builds the tree to `target_depth`, verifying every constructed node:
/// feasibility first, then the drift invariants, then the twin identity, and
/// the sibling symmetry condition per expanded node. First failure is
/// recorded and aborts the subtree.
inline TreeReport build_tree(const LabeledInstance& inst, const OrbitSolution& root,
                             int target_depth, TreeStrategy strategy,
                             std::uint32_t seed = 0, int sample_width = 6,
                             std::optional<int> depth_cap = std::nullopt) {
    const LsShape s = ls_shape(inst);
    const int cap = depth_cap.value_or(static_cast<int>(s.l / 10));
    if (target_depth > cap)
        throw BudgetExceeded("tree depth " + std::to_string(target_depth) +
                             " beyond the verification cap " + std::to_string(cap));
    TreeReport report;
    std::mt19937 rng(seed);

    auto record_node = [&](const OrbitSolution& node, bool twin_ok) {
        TreeNodeRecord rec;
        rec.depth = node.depth;
        rec.touched_history = node.history_string();
        const auto feas = verify_node_feasibility(node, inst);
        rec.feasible = feas.feasible;
        if (rec.feasible) {
            const auto inv = verify_invariants(node, inst);
            rec.invariants_ok = inv.all_hold();
            rec.literal_2a_reading = inv.inv2a_literal_ge_reading;
            Rat slack = 0;
            bool got = false;
            for (const InvariantStatus* st :
                 {&inv.inv1, &inv.inv2a, &inv.inv2b, &inv.inv2c, &inv.inv3, &inv.inv4a,
                  &inv.inv4b})
                if (st->any && (!got || st->slack < slack)) {
                    slack = st->slack;
                    got = true;
                }
            rec.min_slack = slack;
        } else {
            rec.invariants_ok = false;
        }
        rec.twin_ok = twin_ok;
        // The cumulative-zeroing property over the touched history.
        const long long zeroed = zeroed_cheap_count(node, s);
        if (zeroed > node.depth) {
            rec.invariants_ok = false;
            if (report.first_failure.empty())
                report.first_failure = "cumulative zeroing bound at " + rec.touched_history;
        }
        if ((!rec.feasible || !rec.invariants_ok || !rec.twin_ok) &&
            report.first_failure.empty())
            report.first_failure =
                (rec.feasible ? (rec.twin_ok ? "invariants" : "twin identity")
                              : "feasibility: " + feas.violation) +
                " at node [" + rec.touched_history + "]";
        report.all_ok = report.all_ok && rec.feasible && rec.invariants_ok && rec.twin_ok;
        report.node_count += 1;
        report.records.push_back(std::move(rec));
        return report.all_ok;
    };

    if (!record_node(root, true)) return report;

    struct Frame {
        OrbitSolution node;
    };
    std::vector<Frame> frontier{Frame{root}};
    while (!frontier.empty()) {
        Frame f = std::move(frontier.back());
        frontier.pop_back();
        if (f.node.depth >= target_depth) continue;
        std::vector<TouchedVar> moves = enumerate_moves(f.node, inst);
        if (strategy == TreeStrategy::RandomSample &&
            static_cast<int>(moves.size()) > sample_width) {
            std::vector<TouchedVar> sampled;
            std::vector<size_t> idx(moves.size());
            for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            for (int c = 0; c < sample_width; ++c) {
                const size_t pick = c + rng() % (idx.size() - c);
                std::swap(idx[c], idx[pick]);
                sampled.push_back(moves[idx[c]]);
            }
            moves = std::move(sampled);
        }
        std::vector<std::pair<TouchedVar, OrbitSolution>> type1_children;
        for (const TouchedVar& var : moves) {
            OrbitSolution c1 = touch(inst, f.node, var, WitnessType::Type1);
            OrbitSolution c2 = touch(inst, f.node, var, WitnessType::Type2);
            const bool twin_ok = twin_identity_holds(f.node, var, c1, c2);
            if (!record_node(c1, twin_ok)) return report;
            if (!record_node(c2, twin_ok)) return report;
            type1_children.emplace_back(var, std::move(c1));
            if (c2.depth < target_depth) frontier.push_back(Frame{std::move(c2)});
            if (type1_children.back().second.depth < target_depth)
                frontier.push_back(Frame{type1_children.back().second});
        }
        const auto sym = sibling_symmetry_check(inst, f.node, type1_children);
        report.symmetry_checks +=
            static_cast<long long>(type1_children.size()) * (type1_children.size() - 1);
        if (!sym.ok) {
            report.all_ok = false;
            if (report.first_failure.empty())
                report.first_failure = "sibling symmetry: " + sym.violating_pair +
                                       " under node [" + f.node.history_string() + "]";
            return report;
        }
    }
    return report;
}

/// Follows explicit touch sequences instead of expanding the whole tree.
/// Feasibility is the abort condition (a path stops at its first infeasible
/// node, which is recorded); invariant status is recorded per node but does
/// not abort, since paths may run past the depth the drift bounds cover.
inline TreeReport verify_touch_paths(
    const LabeledInstance& inst, const OrbitSolution& root,
    const std::vector<std::vector<std::pair<TouchedVar, WitnessType>>>& paths) {
    TreeReport report;
    const LsShape s = ls_shape(inst);
    auto record = [&](const OrbitSolution& node) {
        TreeNodeRecord rec;
        rec.depth = node.depth;
        rec.touched_history = node.history_string();
        const auto feas = verify_node_feasibility(node, inst);
        rec.feasible = feas.feasible;
        if (rec.feasible) {
            const auto inv = verify_invariants(node, inst);
            rec.invariants_ok = inv.all_hold() && zeroed_cheap_count(node, s) <= node.depth;
            rec.literal_2a_reading = inv.inv2a_literal_ge_reading;
        } else {
            rec.invariants_ok = false;
            if (report.first_failure.empty())
                report.first_failure = "feasibility: " + feas.violation + " at node [" +
                                       rec.touched_history + "]";
        }
        report.node_count += 1;
        report.records.push_back(rec);
        return rec.feasible;
    };
    record(root);
    for (const auto& path : paths) {
        OrbitSolution cur = root;
        for (const auto& [var, type] : path) {
            cur = touch(inst, cur, var, type);
            if (!record(cur)) {
                report.all_ok = false;
                break;
            }
        }
    }
    return report;
}

// --- the zeroing path -----------------------------------------------------------------

struct ZeroingPathResult {
    std::vector<OrbitSolution> path;  // root first
    std::vector<bool> feasible;       // aligned with path
    int first_infeasible_step = -1;   // -1 when every node is feasible
    bool all_zeroed = false;
    bool growth_bound_ok = true;
};

/// Greedy zeroing: repeatedly touch the largest remaining variable of S as
/// type 2 until all of S is zeroed, checking per step that every surviving
/// S-variable grew by a factor of at most 1/(1-z_j). Requires sum(S) < 1 at
/// the start. Depth caps do not apply here.
inline ZeroingPathResult zeroing_path(const LabeledInstance& inst,
                                      const OrbitSolution& start,
                                      std::vector<TouchedVar> S) {
    Rat total = 0;
    for (const auto& v : S) total += start.value(v);
    if (total >= 1)
        throw std::invalid_argument("zeroing path requires the S values to sum below 1");
    ZeroingPathResult res;
    res.path.push_back(start);
    res.feasible.push_back(verify_node_feasibility(start, inst).feasible);
    OrbitSolution cur = start;
    const std::vector<TouchedVar> targets = S;
    std::vector<TouchedVar> remaining = std::move(S);
    while (!remaining.empty()) {
        size_t best = 0;
        for (size_t i = 1; i < remaining.size(); ++i)
            if (cur.value(remaining[i]) > cur.value(remaining[best])) best = i;
        const TouchedVar var = remaining[best];
        remaining.erase(remaining.begin() + best);
        const Rat zj = cur.value(var);
        std::vector<Rat> before;
        for (const auto& v : remaining) before.push_back(cur.value(v));
        OrbitSolution next = touch(inst, cur, var, WitnessType::Type2);
        for (size_t i = 0; i < remaining.size(); ++i) {
            const Rat after = next.value(remaining[i]);
            if (zj != 1 && after > before[i] * (1 + zj / (1 - zj)))
                res.growth_bound_ok = false;
        }
        const bool feas = verify_node_feasibility(next, inst).feasible;
        res.path.push_back(next);
        res.feasible.push_back(feas);
        if (!feas && res.first_infeasible_step < 0)
            res.first_infeasible_step = static_cast<int>(res.path.size()) - 1;
        cur = std::move(next);
    }
    res.all_zeroed = true;
    for (const auto& v : targets)
        if (res.path.back().value(v) != 0) res.all_zeroed = false;
    return res;
}

/// Convenience: the open variables of every costly facility.
inline std::vector<TouchedVar> costly_open_variables(const LabeledInstance& inst) {
    std::vector<TouchedVar> vars;
    for (int i = 0; i < inst.base.n_facilities; ++i)
        if (inst.facility_labels[i] == FacilityLabel::Costly)
            vars.push_back(TouchedVar::open(i));
    return vars;
}

// --- dense expansion for micro instances -----------------------------------------------

/// Dense (y, x) expansion; only sensible for micro instances.
inline std::pair<std::vector<Rat>, std::vector<std::vector<Rat>>> expand_dense(
    const OrbitSolution& node, const LabeledInstance& inst) {
    const int nf = inst.base.n_facilities;
    const long long m = inst.base.n_clients;
    if (static_cast<long long>(nf) * m > 2'000'000)
        throw BudgetExceeded("dense expansion too large");
    std::vector<std::vector<Rat>> x(nf, std::vector<Rat>(m));
    for (long long j = 0; j < m; ++j) {
        const auto& prof = node.orbits[node.orbit_of_client(j)].assign;
        for (int i = 0; i < nf; ++i) x[i][j] = prof[i];
    }
    return {node.y, x};
}

}  // namespace liftgap
