// Facility-location instances: the generic container plus the labeled
// families used throughout (zero-distance CFL families, the LBFL simplex
// embedding, and the four-facility lower-bound toy).
#pragma once

#include "liftgap/errors.hpp"
#include "liftgap/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace liftgap {

enum class Mode { CFL, LBFL };

inline std::string mode_to_string(Mode m) { return m == Mode::CFL ? "cfl" : "lbfl"; }
inline Mode mode_from_string(const std::string& s) {
    if (s == "cfl") return Mode::CFL;
    if (s == "lbfl") return Mode::LBFL;
    throw std::invalid_argument("unknown mode: " + s);
}

enum class FacilityLabel { Cheap, Costly, Simplex, FarCluster, Plain };

inline std::string label_to_string(FacilityLabel l) {
    switch (l) {
        case FacilityLabel::Cheap: return "cheap";
        case FacilityLabel::Costly: return "costly";
        case FacilityLabel::Simplex: return "simplex";
        case FacilityLabel::FarCluster: return "far_cluster";
        case FacilityLabel::Plain: return "plain";
    }
    return "?";
}
inline FacilityLabel label_from_string(const std::string& s) {
    if (s == "cheap") return FacilityLabel::Cheap;
    if (s == "costly") return FacilityLabel::Costly;
    if (s == "simplex") return FacilityLabel::Simplex;
    if (s == "far_cluster") return FacilityLabel::FarCluster;
    if (s == "plain") return FacilityLabel::Plain;
    throw std::invalid_argument("unknown facility label: " + s);
}

/// Uniform-capacity (CFL) or uniform-lower-bound (LBFL) instance with unit
/// client demands. Connection costs are a default distance plus sparse
/// overrides, so million-client zero-distance instances stay tiny.
struct FacilityLocationInstance {
    Mode mode = Mode::CFL;
    int n_facilities = 0;
    long long n_clients = 0;
    long long capacity_or_bound = 0;  // U for CFL, B for LBFL
    std::vector<Rat> opening_cost;
    Rat default_distance = 0;
    std::unordered_map<long long, Rat> connection_override;  // key = i * n_clients + j
    bool metric_flag = false;

    /// CFL instances that cannot cover their clients are rejected outright by
    /// validate(); an LBFL instance with fewer clients than the bound is kept
    /// but flagged integrally infeasible.
    bool integrally_feasible() const {
        if (mode == Mode::LBFL) return n_clients >= capacity_or_bound;
        return static_cast<long long>(n_facilities) * capacity_or_bound >= n_clients;
    }

    Rat connection_cost(int facility, long long client) const {
        const auto it = connection_override.find(
            static_cast<long long>(facility) * n_clients + client);
        return it == connection_override.end() ? default_distance : it->second;
    }

    void set_connection_cost(int facility, long long client, const Rat& value) {
        connection_override[static_cast<long long>(facility) * n_clients + client] = value;
    }

    /// True when every client sees the same cost from facility i; the common
    /// value per facility is returned. Used by the client-symmetric LP
    /// reduction and the zero-distance integral-optimum fast path.
    std::optional<std::vector<Rat>> uniform_connection_costs() const {
        std::vector<Rat> per_facility(n_facilities, default_distance);
        if (connection_override.empty()) return per_facility;
        // Overrides must either cover a whole facility row with one value or
        // not exist; verify by counting.
        std::vector<long long> count(n_facilities, 0);
        std::vector<std::optional<Rat>> value(n_facilities);
        for (const auto& [key, v] : connection_override) {
            const int i = static_cast<int>(key / n_clients);
            if (value[i] && *value[i] != v) return std::nullopt;
            value[i] = v;
            ++count[i];
        }
        for (int i = 0; i < n_facilities; ++i) {
            if (count[i] == 0) continue;
            if (count[i] != n_clients) return std::nullopt;
            per_facility[i] = *value[i];
        }
        return per_facility;
    }

    /// Checks the type invariants. Throws std::invalid_argument on violation.
    /// The metric cross inequality is checked exhaustively while the number
    /// of quadruples stays below `metric_check_budget`, by seeded sampling
    /// beyond that.
    void validate(long long metric_check_budget = 4'000'000) const {
        if (n_facilities <= 0 || n_clients <= 0)
            throw std::invalid_argument("instance needs at least one facility and client");
        if (capacity_or_bound <= 0)
            throw std::invalid_argument("capacity or bound must be positive");
        if (static_cast<int>(opening_cost.size()) != n_facilities)
            throw std::invalid_argument("opening cost vector has wrong size");
        for (const Rat& f : opening_cost)
            if (f < 0) throw std::invalid_argument("negative opening cost");
        for (const auto& [key, v] : connection_override) {
            if (key < 0 || key >= static_cast<long long>(n_facilities) * n_clients)
                throw std::invalid_argument("connection override out of range");
            if (v < 0) throw std::invalid_argument("negative connection cost");
        }
        if (default_distance < 0)
            throw std::invalid_argument("negative default distance");
        if (mode == Mode::CFL &&
            static_cast<long long>(n_facilities) * capacity_or_bound < n_clients)
            throw std::invalid_argument("CFL instance cannot cover its clients");
        if (metric_flag) check_metric(metric_check_budget);
    }

    void check_metric(long long budget) const {
        const long long quadruples =
            static_cast<long long>(n_facilities) * n_facilities * n_clients * n_clients;
        auto check_one = [this](int i, int ip, long long j, long long jp) {
            const Rat lhs = connection_cost(i, j);
            const Rat rhs = connection_cost(i, jp) + connection_cost(ip, jp) +
                            connection_cost(ip, j);
            if (lhs > rhs)
                throw std::invalid_argument(
                    "metric cross inequality violated at facilities " + std::to_string(i) +
                    "," + std::to_string(ip) + " clients " + std::to_string(j) + "," +
                    std::to_string(jp));
        };
        if (quadruples <= budget) {
            for (int i = 0; i < n_facilities; ++i)
                for (int ip = 0; ip < n_facilities; ++ip)
                    for (long long j = 0; j < n_clients; ++j)
                        for (long long jp = 0; jp < n_clients; ++jp)
                            check_one(i, ip, j, jp);
        } else {
            std::mt19937_64 rng(20130708u);
            for (long long s = 0; s < budget; ++s)
                check_one(static_cast<int>(rng() % n_facilities),
                          static_cast<int>(rng() % n_facilities),
                          static_cast<long long>(rng() % n_clients),
                          static_cast<long long>(rng() % n_clients));
        }
    }
};

/// Instance plus per-facility roles and the named parameters of its family
/// (n, l, H, a, b, c, D, D', t, ... as rationals).
struct LabeledInstance {
    FacilityLocationInstance base;
    std::vector<FacilityLabel> facility_labels;
    std::map<std::string, Rat> params;

    const Rat& param(const std::string& name) const {
        auto it = params.find(name);
        if (it == params.end()) throw std::invalid_argument("missing param " + name);
        return it->second;
    }
    long long param_ll(const std::string& name) const {
        const Rat& r = param(name);
        if (denominator(r) != 1) throw std::invalid_argument("param " + name + " not integral");
        return numerator(r).convert_to<long long>();
    }

    void validate() const {
        base.validate();
        if (facility_labels.size() != static_cast<size_t>(base.n_facilities))
            throw std::invalid_argument("facility label partition does not cover facilities");
    }
};

// --- builders -----------------------------------------------------------------

/// Zero-distance CFL family with n free facilities and l unit-cost ones:
/// capacity n^3 and n^4+1 clients, so n facilities are one client short of
/// covering everything. Records a = n^-2 and b = H/n^2.
inline LabeledInstance build_ls_instance(long long n, long long l, const Rat& H) {
    if (n < 2 || l < 1 || H <= 0)
        throw std::invalid_argument("build_ls_instance needs n >= 2, l >= 1, H > 0");
    LabeledInstance inst;
    inst.base.mode = Mode::CFL;
    inst.base.n_facilities = static_cast<int>(n + l);
    inst.base.capacity_or_bound = n * n * n;
    inst.base.n_clients = n * inst.base.capacity_or_bound + 1;
    inst.base.opening_cost.assign(inst.base.n_facilities, Rat(0));
    for (long long i = n; i < n + l; ++i) inst.base.opening_cost[i] = 1;
    inst.facility_labels.assign(inst.base.n_facilities, FacilityLabel::Cheap);
    for (long long i = n; i < n + l; ++i)
        inst.facility_labels[i] = FacilityLabel::Costly;
    inst.params["n"] = Rat(n);
    inst.params["l"] = Rat(l);
    inst.params["H"] = H;
    inst.params["U"] = Rat(inst.base.capacity_or_bound);
    inst.params["a"] = Rat(1) / Rat(n * n);
    inst.params["b"] = H / Rat(n * n);
    inst.validate();
    return inst;
}

/// Client index blocks of the LBFL gap instance: facility i < n-1 owns the
/// contiguous block of B-1 exclusive clients starting at i*(B-1); the last
/// n^2+n-1 clients are the shared far cluster of facilities n-1 and n.
struct LbflBlocks {
    long long B = 0;
    int n_simplex = 0;  // facilities 0 .. n_simplex-1
    long long far_begin = 0;
    long long far_size = 0;

    long long block_begin(int facility) const { return facility * (B - 1); }
    long long block_end(int facility) const { return (facility + 1) * (B - 1); }
    /// Simplex facility owning client j, or -1 for far-cluster clients.
    int owner(long long j) const {
        return j >= far_begin ? -1 : static_cast<int>(j / (B - 1));
    }
};

inline LbflBlocks lbfl_blocks(const LabeledInstance& inst) {
    LbflBlocks b;
    b.B = inst.base.capacity_or_bound;
    b.n_simplex = inst.base.n_facilities - 2;
    b.far_begin = static_cast<long long>(b.n_simplex) * (b.B - 1);
    b.far_size = inst.base.n_clients - b.far_begin;
    return b;
}

/// LBFL instance on a regular-simplex embedding: n-1 facilities at pairwise
/// distance D, each co-located with its B-1 exclusive clients; two extra
/// facilities co-located with a shared cluster at distance D' = 2nD from
/// every simplex vertex. Zero opening costs; B = n^2; n^3 clients.
inline LabeledInstance build_lbfl_gap_instance(long long n, long long c, const Rat& D) {
    if (c < 2) throw std::invalid_argument("build_lbfl_gap_instance needs c >= 2");
    if (n - c - 1 <= 0)
        throw std::invalid_argument("build_lbfl_gap_instance needs n - c - 1 >= 1");
    if (D <= 0) throw std::invalid_argument("build_lbfl_gap_instance needs D > 0");
    LabeledInstance inst;
    inst.base.mode = Mode::LBFL;
    inst.base.n_facilities = static_cast<int>(n + 1);
    inst.base.capacity_or_bound = n * n;
    inst.base.n_clients = n * n * n;
    inst.base.opening_cost.assign(inst.base.n_facilities, Rat(0));
    inst.base.default_distance = 0;
    const Rat Dprime = Rat(2 * n) * D;
    const long long B = inst.base.capacity_or_bound;
    const int n_simplex = static_cast<int>(n - 1);
    const long long far_begin = static_cast<long long>(n_simplex) * (B - 1);
    for (int i = 0; i < n_simplex; ++i) {
        for (long long j = 0; j < inst.base.n_clients; ++j) {
            if (j >= far_begin) inst.base.set_connection_cost(i, j, Dprime);
            else if (j / (B - 1) != i) inst.base.set_connection_cost(i, j, D);
        }
    }
    for (int i = n_simplex; i < inst.base.n_facilities; ++i)
        for (long long j = 0; j < far_begin; ++j)
            inst.base.set_connection_cost(i, j, Dprime);
    inst.base.metric_flag = true;
    inst.facility_labels.assign(inst.base.n_facilities, FacilityLabel::Simplex);
    inst.facility_labels[n_simplex] = FacilityLabel::FarCluster;
    inst.facility_labels[n_simplex + 1] = FacilityLabel::FarCluster;
    inst.params["n"] = Rat(n);
    inst.params["c"] = Rat(c);
    inst.params["D"] = D;
    inst.params["Dprime"] = Dprime;
    inst.params["B"] = Rat(B);
    inst.params["alpha"] = Rat(n - c) / Rat(n);
    inst.validate();
    return inst;
}

/// Zero-distance CFL instance where only the last facility costs anything
/// and n-1 facilities are one client short of covering everything.
inline LabeledInstance build_cfl_proper_instance(long long n) {
    if (n < 3) throw std::invalid_argument("build_cfl_proper_instance needs n >= 3");
    LabeledInstance inst;
    inst.base.mode = Mode::CFL;
    inst.base.n_facilities = static_cast<int>(n);
    inst.base.capacity_or_bound = n * n;
    inst.base.n_clients = (n - 1) * inst.base.capacity_or_bound + 1;
    inst.base.opening_cost.assign(inst.base.n_facilities, Rat(0));
    inst.base.opening_cost[n - 1] = 1;
    inst.facility_labels.assign(inst.base.n_facilities, FacilityLabel::Plain);
    inst.params["n"] = Rat(n);
    inst.params["U"] = Rat(inst.base.capacity_or_bound);
    inst.validate();
    return inst;
}

/// Four-facility LBFL toy with client groups of sizes 13, 13, 9, 9 and
/// B = 10; costs are all zero (only feasibility matters on this instance).
inline LabeledInstance build_example1_instance() {
    LabeledInstance inst;
    inst.base.mode = Mode::LBFL;
    inst.base.n_facilities = 4;
    inst.base.capacity_or_bound = 10;
    inst.base.n_clients = 44;
    inst.base.opening_cost.assign(4, Rat(0));
    inst.facility_labels.assign(4, FacilityLabel::Plain);
    inst.params["B"] = Rat(10);
    inst.params["s1"] = Rat(13);
    inst.params["s2"] = Rat(13);
    inst.params["s3"] = Rat(9);
    inst.params["s4"] = Rat(9);
    inst.validate();
    return inst;
}

/// Seeded random instance with small integer costs; deterministic across
/// platforms (raw mt19937 output, no distribution adapters).
inline LabeledInstance build_random_instance(std::uint32_t seed, int n_facilities,
                                             long long n_clients, Mode mode,
                                             long long capacity_or_bound) {
    if (n_facilities <= 0 || n_clients <= 0 || capacity_or_bound <= 0)
        throw std::invalid_argument("random instance parameters must be positive");
    if (mode == Mode::CFL &&
        static_cast<long long>(n_facilities) * capacity_or_bound < n_clients)
        throw std::invalid_argument("random CFL instance cannot cover its clients");
    std::mt19937 rng(seed);
    LabeledInstance inst;
    inst.base.mode = mode;
    inst.base.n_facilities = n_facilities;
    inst.base.n_clients = n_clients;
    inst.base.capacity_or_bound = capacity_or_bound;
    inst.base.opening_cost.resize(n_facilities);
    for (auto& f : inst.base.opening_cost) f = Rat(rng() % 10);
    for (int i = 0; i < n_facilities; ++i)
        for (long long j = 0; j < n_clients; ++j) {
            const Rat c = Rat(rng() % 10);
            if (c != 0) inst.base.set_connection_cost(i, j, c);
        }
    inst.facility_labels.assign(n_facilities, FacilityLabel::Plain);
    inst.params["seed"] = Rat(static_cast<long long>(seed));
    inst.validate();
    return inst;
}

}  // namespace liftgap
