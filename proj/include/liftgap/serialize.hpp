// JSON encodings of every externally visible object. Rationals travel as
// exact "p/q" strings; report values carry a decimal approximation alongside
// for readability, never for comparison.
#pragma once

#include "liftgap/instance.hpp"
#include "liftgap/integral.hpp"
#include "liftgap/ls.hpp"
#include "liftgap/relaxations.hpp"
#include "liftgap/witness.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace liftgap {

using nlohmann::json;

inline json rat_exact(const Rat& r) { return rat_to_string(r); }

inline json rat_report(const Rat& r) {
    return json{{"exact", rat_to_string(r)}, {"approx", rat_to_double(r)}};
}

inline json instance_to_json(const LabeledInstance& inst) {
    json j;
    j["mode"] = mode_to_string(inst.base.mode);
    j["n_facilities"] = inst.base.n_facilities;
    j["n_clients"] = inst.base.n_clients;
    j["capacity_or_bound"] = inst.base.capacity_or_bound;
    j["opening_cost"] = json::array();
    for (const Rat& f : inst.base.opening_cost) j["opening_cost"].push_back(rat_exact(f));
    j["default_distance"] = rat_exact(inst.base.default_distance);
    json triplets = json::array();
    // Deterministic order for reproducible files.
    std::map<long long, Rat> sorted(inst.base.connection_override.begin(),
                                    inst.base.connection_override.end());
    for (const auto& [key, v] : sorted)
        triplets.push_back(json::array({key / inst.base.n_clients,
                                        key % inst.base.n_clients, rat_exact(v)}));
    j["connection_cost"] = std::move(triplets);
    j["metric"] = inst.base.metric_flag;
    j["labels"] = json::array();
    for (auto l : inst.facility_labels) j["labels"].push_back(label_to_string(l));
    j["params"] = json::object();
    for (const auto& [k, v] : inst.params) j["params"][k] = rat_exact(v);
    return j;
}

inline LabeledInstance instance_from_json(const json& j) {
    LabeledInstance inst;
    inst.base.mode = mode_from_string(j.at("mode").get<std::string>());
    inst.base.n_facilities = j.at("n_facilities").get<int>();
    inst.base.n_clients = j.at("n_clients").get<long long>();
    inst.base.capacity_or_bound = j.at("capacity_or_bound").get<long long>();
    for (const auto& f : j.at("opening_cost"))
        inst.base.opening_cost.push_back(rat_from_string(f.get<std::string>()));
    inst.base.default_distance =
        rat_from_string(j.at("default_distance").get<std::string>());
    for (const auto& t : j.at("connection_cost"))
        inst.base.set_connection_cost(t.at(0).get<int>(), t.at(1).get<long long>(),
                                      rat_from_string(t.at(2).get<std::string>()));
    inst.base.metric_flag = j.value("metric", false);
    if (j.contains("labels"))
        for (const auto& l : j.at("labels"))
            inst.facility_labels.push_back(label_from_string(l.get<std::string>()));
    else
        inst.facility_labels.assign(inst.base.n_facilities, FacilityLabel::Plain);
    if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items())
            inst.params[k] = rat_from_string(v.get<std::string>());
    inst.validate();
    return inst;
}

inline json lp_solution_to_json(const LpSolution& sol, const LinearProgram& lp) {
    json j;
    j["status"] = lp_status_to_string(sol.status);
    j["pivots"] = sol.pivots;
    if (sol.status == LpStatus::Optimal) {
        j["objective"] = rat_report(sol.objective_value);
        json values = json::object();
        for (int v = 0; v < lp.num_variables(); ++v)
            values[lp.variables()[v].name] = rat_exact(sol.values[v]);
        j["values"] = std::move(values);
        json dual = json::array();
        for (const Rat& d : sol.dual) dual.push_back(rat_exact(d));
        j["dual"] = std::move(dual);
    }
    if (sol.status == LpStatus::Infeasible) {
        json farkas = json::array();
        for (const Rat& f : sol.farkas) farkas.push_back(rat_exact(f));
        j["farkas"] = std::move(farkas);
    }
    return j;
}

inline json gap_report_to_json(const GapReport& r) {
    json j;
    j["lp_kind"] = r.lp_kind;
    j["lp_value"] = rat_report(r.lp_value);
    j["integral_skipped"] = r.integral_skipped;
    if (!r.integral_skipped) {
        j["integral_value"] = rat_report(r.integral_value);
        if (r.gap_infinite) j["gap"] = "infinite";
        else j["gap"] = rat_report(r.gap);
    }
    if (r.lp_certificate) {
        json cert = json::array();
        for (const Rat& v : *r.lp_certificate) cert.push_back(rat_exact(v));
        j["lp_certificate"] = std::move(cert);
    }
    if (r.integral_open) {
        json open = json::array();
        for (bool b : *r.integral_open) open.push_back(b);
        j["integral_open"] = std::move(open);
    }
    return j;
}

inline json class_set_to_json(const ClassSet& cs) {
    json arr = json::array();
    for (const Class& cl : cs.classes) {
        json c;
        c["facilities"] = json::array();
        for (int i : cl.facilities) c["facilities"].push_back(i);
        c["assignments"] = json::array();
        for (const auto& [i, jj] : cl.assignments)
            c["assignments"].push_back(json::array({i, jj}));
        arr.push_back(std::move(c));
    }
    return arr;
}

inline ClassSet class_set_from_json(const json& j) {
    ClassSet cs;
    for (const auto& c : j) {
        Class cl;
        for (const auto& f : c.at("facilities")) cl.facilities.insert(f.get<int>());
        for (const auto& a : c.at("assignments"))
            cl.assignments.emplace(a.at(0).get<int>(), a.at(1).get<long long>());
        validate_class(cl);
        cs.classes.push_back(std::move(cl));
    }
    return cs;
}

inline json cone_vector_to_json(const ConeVector& v,
                                const LinearProgram& lp) {
    json j;
    j["z0"] = rat_exact(v.z0);
    json coords = json::object();
    for (size_t i = 0; i < v.coords.size(); ++i)
        if (v.coords[i] != 0)
            coords[lp.variables()[i].name] = rat_exact(v.coords[i]);
    j["coords"] = std::move(coords);
    return j;
}

inline json protection_violations_to_json(const ProtectionCheckResult& r) {
    json arr = json::array();
    for (const auto& v : r.violations)
        arr.push_back(json{{"condition", v.condition},
                           {"indices", json::array({v.i, v.k})},
                           {"lhs", rat_exact(v.lhs)},
                           {"rhs", rat_exact(v.rhs)}});
    return arr;
}

inline json tree_report_to_json(const TreeReport& r, bool per_node = true) {
    json j;
    j["all_ok"] = r.all_ok;
    j["node_count"] = r.node_count;
    j["symmetry_checks"] = r.symmetry_checks;
    if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
    if (per_node) {
        json nodes = json::array();
        for (const auto& rec : r.records)
            nodes.push_back(json{{"depth", rec.depth},
                                 {"touched_history", rec.touched_history},
                                 {"feasible", rec.feasible},
                                 {"invariants_ok", rec.invariants_ok},
                                 {"twin_ok", rec.twin_ok},
                                 {"min_invariant_slack", rat_report(rec.min_slack)},
                                 {"literal_2a_reading", rec.literal_2a_reading}});
        j["nodes"] = std::move(nodes);
    }
    return j;
}

inline json zeroing_to_json(const ZeroingPathResult& r) {
    json j;
    j["steps"] = r.path.size() - 1;
    j["all_zeroed"] = r.all_zeroed;
    j["growth_bound_ok"] = r.growth_bound_ok;
    j["first_infeasible_step"] = r.first_infeasible_step;
    json feas = json::array();
    for (bool f : r.feasible) feas.push_back(f);
    j["feasible_per_step"] = std::move(feas);
    return j;
}

inline void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace liftgap
