// Command-line front end: instance generation, relaxation gap reports,
// evolution-tree verification, and the membership-oracle cross-check.
//
// Exit codes: 0 all checks passed, 1 a verification failed (diagnostics in
// the JSON report), 2 usage or budget errors.
#include "liftgap/instance.hpp"
#include "liftgap/integral.hpp"
#include "liftgap/ls.hpp"
#include "liftgap/proper.hpp"
#include "liftgap/relaxations.hpp"
#include "liftgap/serialize.hpp"
#include "liftgap/solver.hpp"
#include "liftgap/witness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace liftgap;

namespace {

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) std::cout << report.dump(2) << "\n";
    else write_json_file(report, out_path);
}

std::vector<Rat> grid_levels(long long denominator) {
    std::vector<Rat> levels;
    for (long long k = 0; k <= denominator; ++k) levels.push_back(make_rat(k, denominator));
    return levels;
}

// Touch-path parser: tokens "y,<facility>,<type>" and
// "x,<facility>,<client>,<type>" separated by ';'.
std::vector<std::pair<TouchedVar, WitnessType>> parse_touch_path(const std::string& spec) {
    std::vector<std::pair<TouchedVar, WitnessType>> path;
    std::istringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ';')) {
        if (token.empty()) continue;
        std::vector<std::string> parts;
        std::istringstream ts(token);
        std::string part;
        while (std::getline(ts, part, ',')) parts.push_back(part);
        if (parts.size() == 3 && parts[0] == "y") {
            path.emplace_back(TouchedVar::open(std::stoi(parts[1])),
                              parts[2] == "1" ? WitnessType::Type1 : WitnessType::Type2);
        } else if (parts.size() == 4 && parts[0] == "x") {
            path.emplace_back(TouchedVar::assign(std::stoi(parts[1]), std::stoll(parts[2])),
                              parts[3] == "1" ? WitnessType::Type1 : WitnessType::Type2);
        } else {
            throw std::invalid_argument("bad touch token: " + token);
        }
    }
    return path;
}

int run_gap(const std::string& instance_path, const std::string& relaxation,
            const std::string& classset_path, const std::string& out_path,
            long long budget_stars, long long budget_subsets, long long budget_vars) {
    const LabeledInstance inst = instance_from_json(read_json_file(instance_path));
    json config{{"command", "gap"},
                {"instance", instance_path},
                {"relaxation", relaxation},
                {"budget_stars", budget_stars},
                {"budget_subsets", budget_subsets},
                {"budget_vars", budget_vars}};

    Rat lp_value;
    std::string lp_form = relaxation;
    if (relaxation == "classic") {
        try {
            const auto sol = solve_lp(standard_lp(inst.base, budget_vars));
            if (sol.status != LpStatus::Optimal)
                throw std::runtime_error("classic LP did not solve: " +
                                         lp_status_to_string(sol.status));
            lp_value = sol.objective_value;
        } catch (const BudgetExceeded&) {
            // Per-facility-uniform costs admit the exact client-collapsed LP.
            const auto sol = solve_lp(client_symmetric_standard_lp(inst.base));
            if (sol.status != LpStatus::Optimal)
                throw std::runtime_error("client-symmetric LP did not solve");
            lp_value = sol.objective_value;
            lp_form = "classic/client-symmetric";
        }
    } else if (relaxation == "star") {
        const auto sol = solve_lp(star_lp(inst.base, std::nullopt, budget_stars).lp);
        if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("star LP did not solve: " +
                                     lp_status_to_string(sol.status));
        lp_value = sol.objective_value;
    } else if (relaxation == "constellation") {
        if (classset_path.empty())
            throw CLI::ValidationError("--classset is required for constellation");
        const ClassSet cs = class_set_from_json(read_json_file(classset_path));
        const auto sol = solve_lp(constellation_lp(inst.base, cs));
        if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("constellation LP did not solve: " +
                                     lp_status_to_string(sol.status));
        lp_value = sol.objective_value;
    } else {
        throw CLI::ValidationError("unknown relaxation " + relaxation);
    }

    GapReport report;
    try {
        const auto opt = integral_optimum(inst.base, budget_subsets);
        report = GapReport::make(lp_value, opt.value, lp_form);
    } catch (const BudgetExceeded&) {
        report.lp_value = lp_value;
        report.lp_kind = lp_form;
        report.integral_skipped = true;
    }
    json j = gap_report_to_json(report);
    j["config"] = config;
    emit(j, out_path);
    return 0;
}

int run_ls_verify(const std::string& instance_path, int depth, const std::string& strategy,
                  std::uint32_t seed, int width, const std::string& path_spec,
                  const std::string& out_path, bool summary_only) {
    const LabeledInstance inst = instance_from_json(read_json_file(instance_path));
    json config{{"command", "ls-verify"}, {"instance", instance_path},
                {"depth", depth},        {"strategy", strategy},
                {"seed", seed},          {"width", width}};
    const auto root = root_solution(inst);

    if (strategy == "zeroing") {
        const auto res = zeroing_path(inst, root, costly_open_variables(inst));
        json j = zeroing_to_json(res);
        j["config"] = config;
        const long long l = inst.param_ll("l");
        const bool ok = res.all_zeroed && res.growth_bound_ok &&
                        res.first_infeasible_step >= 1 && res.first_infeasible_step <= l;
        j["infeasible_within_l_steps"] = ok;
        emit(j, out_path);
        return ok ? 0 : 1;
    }
    if (strategy == "path") {
        auto touches = parse_touch_path(path_spec);
        const auto report = verify_touch_paths(inst, root, {touches});
        OrbitSolution cur = root;
        for (const auto& [var, type] : touches) {
            if (!verify_node_feasibility(cur, inst).feasible) break;
            cur = touch(inst, cur, var, type);
        }
        json j = tree_report_to_json(report, /*per_node=*/true);
        j["config"] = config;
        const bool all_ok = report.all_ok;
        const long long dense_cells =
            static_cast<long long>(inst.base.n_facilities) * inst.base.n_clients;
        if (dense_cells <= 2'000'000) {
            auto [y, x] = expand_dense(cur, inst);
            json jy = json::array(), jx = json::array();
            for (const Rat& v : y) jy.push_back(rat_exact(v));
            for (const auto& row : x) {
                json r = json::array();
                for (const Rat& v : row) r.push_back(rat_exact(v));
                jx.push_back(std::move(r));
            }
            j["dense_expansion"] = json{{"y", jy}, {"x", jx}};
        }
        emit(j, out_path);
        return all_ok ? 0 : 1;
    }

    const TreeStrategy ts =
        strategy == "all" ? TreeStrategy::AllChildren : TreeStrategy::RandomSample;
    if (strategy != "all" && strategy != "sample")
        throw CLI::ValidationError("unknown strategy " + strategy);
    const auto report = build_tree(inst, root, depth, ts, seed, width);
    json j = tree_report_to_json(report, !summary_only);
    j["config"] = config;
    emit(j, out_path);
    return report.all_ok ? 0 : 1;
}

int run_oracle_crosscheck(int facilities, long long clients, long long capacity,
                          const std::string& opening_csv, int vertex_rounds,
                          long long denominator, long long budget_points,
                          const std::string& out_path) {
    FacilityLocationInstance inst;
    inst.mode = Mode::CFL;
    inst.n_facilities = facilities;
    inst.n_clients = clients;
    inst.capacity_or_bound = capacity;
    inst.opening_cost.assign(facilities, Rat(0));
    if (!opening_csv.empty()) {
        std::istringstream ss(opening_csv);
        std::string tok;
        int i = 0;
        while (std::getline(ss, tok, ',') && i < facilities)
            inst.opening_cost[i++] = rat_from_string(tok);
    }
    inst.validate();
    const LinearProgram K = standard_lp(inst);
    const int n = facilities;
    const long long m = clients;

    // Grid over the openings and the first n-1 assignment rows; the last row
    // absorbs the cover residual.
    const auto levels = grid_levels(denominator);
    const int free_coords = n + static_cast<int>((n - 1) * m);
    double estimate = 1;
    for (int c = 0; c < free_coords; ++c) estimate *= static_cast<double>(levels.size());
    if (estimate > static_cast<double>(budget_points))
        throw BudgetExceeded("grid would contain about " + std::to_string(estimate) +
                             " points");

    long long points = 0, members_r1 = 0, disagreements = 0, monotonic_failures = 0;
    std::vector<int> digit(free_coords, 0);
    bool done = false;
    while (!done) {
        std::vector<Rat> z(K.num_variables(), Rat(0));
        bool valid = true;
        for (int i = 0; i < n; ++i) z[std_y_index(i)] = levels[digit[i]];
        for (long long j = 0; j < m && valid; ++j) {
            Rat rest = 1;
            for (int i = 0; i + 1 < n; ++i) {
                const Rat v = levels[digit[n + i * m + j]];
                z[std_x_index(n, m, i, j)] = v;
                rest -= v;
            }
            if (rest < 0) valid = false;
            else z[std_x_index(n, m, n - 1, j)] = rest;
        }
        if (valid) {
            ++points;
            const bool r0 = brute_membership(K, z, 0);
            const bool r1a = brute_membership(K, z, 1);
            const bool r1b = protection_matrix_exists(K, z);
            if (r1a != r1b) ++disagreements;
            if (r1a && !r0) ++monotonic_failures;
            if (r1a) ++members_r1;
        }
        int pos = 0;
        while (pos < free_coords) {
            if (++digit[pos] < static_cast<int>(levels.size())) break;
            digit[pos] = 0;
            ++pos;
        }
        done = pos == free_coords;
    }

    long long vertices = 0, vertex_failures = 0;
    for (const auto& sol : enumerate_integral_solutions(inst)) {
        std::vector<Rat> z(K.num_variables(), Rat(0));
        for (int i = 0; i < n; ++i) z[std_y_index(i)] = sol.open[i] ? 1 : 0;
        for (long long j = 0; j < m; ++j)
            z[std_x_index(n, m, sol.assignment[j], j)] = 1;
        ++vertices;
        if (!brute_membership(K, z, vertex_rounds)) ++vertex_failures;
    }

    const bool all_ok = disagreements == 0 && monotonic_failures == 0 &&
                        vertex_failures == 0;
    json j{{"config",
            json{{"command", "oracle-crosscheck"},
                 {"facilities", facilities},
                 {"clients", clients},
                 {"capacity", capacity},
                 {"vertex_rounds", vertex_rounds},
                 {"grid_denominator", denominator}}},
           {"grid_points", points},
           {"members_after_one_round", members_r1},
           {"oracle_disagreements", disagreements},
           {"monotonicity_failures", monotonic_failures},
           {"integral_vertices", vertices},
           {"vertex_survival_failures", vertex_failures},
           {"all_ok", all_ok}};
    emit(j, out_path);
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification lab for facility-location LP relaxations"};
    app.require_subcommand(1);

    // gen ------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->require_subcommand(1);
    struct {
        long long n = 20, l = 20, c = 2;
        std::string H = "10", D = "1";
        int facilities = 3;
        long long clients = 6, capacity = 3;
        std::string mode = "cfl";
        std::uint32_t seed = 1;
        std::string out;
    } g;
    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", g.out, "output file"); };
    auto* gls = gen->add_subcommand("ls", "cheap/costly family");
    gls->add_option("--n", g.n)->required();
    gls->add_option("--l", g.l)->required();
    gls->add_option("--H", g.H);
    add_out(gls);
    auto* glb = gen->add_subcommand("lbfl-gap", "simplex-embedded LBFL family");
    glb->add_option("--n", g.n)->required();
    glb->add_option("--c", g.c);
    glb->add_option("--D", g.D);
    add_out(glb);
    auto* gcp = gen->add_subcommand("cfl-proper", "one-costly-facility CFL family");
    gcp->add_option("--n", g.n)->required();
    add_out(gcp);
    auto* gex = gen->add_subcommand("example1", "four-facility LBFL toy");
    add_out(gex);
    auto* grd = gen->add_subcommand("random", "seeded random instance");
    grd->add_option("--facilities", g.facilities)->required();
    grd->add_option("--clients", g.clients)->required();
    grd->add_option("--mode", g.mode)->check(CLI::IsMember({"cfl", "lbfl"}));
    grd->add_option("--U,--capacity", g.capacity);
    grd->add_option("--seed", g.seed);
    add_out(grd);

    // gap ------------------------------------------------------------------
    auto* gap = app.add_subcommand("gap", "solve a relaxation and report the gap");
    struct {
        std::string instance, relaxation = "classic", classset, out;
        long long budget_stars = 200000, budget_subsets = (1LL << 22),
                  budget_vars = 200000;
    } ga;
    gap->add_option("--instance", ga.instance)->required();
    gap->add_option("--relaxation", ga.relaxation)
        ->check(CLI::IsMember({"classic", "star", "constellation"}));
    gap->add_option("--classset", ga.classset);
    gap->add_option("--out", ga.out);
    gap->add_option("--budget-stars", ga.budget_stars);
    gap->add_option("--budget-subsets", ga.budget_subsets);
    gap->add_option("--budget-vars", ga.budget_vars);

    // ls-verify --------------------------------------------------------------
    auto* lsv = app.add_subcommand("ls-verify", "verify the evolution tree");
    struct {
        std::string instance, strategy = "all", path, out;
        int depth = 1, width = 6;
        std::uint32_t seed = 0;
        bool summary_only = false;
    } lv;
    lsv->add_option("--instance", lv.instance)->required();
    lsv->add_option("--depth", lv.depth);
    lsv->add_option("--strategy", lv.strategy)
        ->check(CLI::IsMember({"all", "sample", "zeroing", "path"}));
    lsv->add_option("--seed", lv.seed);
    lsv->add_option("--width", lv.width);
    lsv->add_option("--path", lv.path, "touch path for --strategy path");
    lsv->add_option("--out", lv.out);
    lsv->add_flag("--summary-only", lv.summary_only);

    // gap-series -----------------------------------------------------------------
    auto* gsr = app.add_subcommand("gap-series",
                                   "emit a CSV of gap versus n for a family");
    struct {
        std::string family = "cfl-proper", D = "1", out;
        long long n_from = 3, n_to = 8, c = 2;
    } gs;
    gsr->add_option("--family", gs.family)
        ->check(CLI::IsMember({"cfl-proper", "lbfl-gap"}));
    gsr->add_option("--n-from", gs.n_from);
    gsr->add_option("--n-to", gs.n_to);
    gsr->add_option("--c", gs.c);
    gsr->add_option("--D", gs.D);
    gsr->add_option("--out", gs.out);

    // solve ------------------------------------------------------------------
    auto* sv = app.add_subcommand("solve", "solve an LP in the textual format");
    struct {
        std::string lp, out;
    } so;
    sv->add_option("--lp", so.lp, "LP text file")->required();
    sv->add_option("--out", so.out);

    // oracle-crosscheck --------------------------------------------------------
    auto* oc = app.add_subcommand("oracle-crosscheck",
                                  "compare the membership oracles on a grid");
    struct {
        int facilities = 2;
        long long clients = 1, capacity = 1;
        std::string opening, out;
        int rounds = 2;
        long long denominator = 4, budget_points = 20000;
    } occ;
    oc->add_option("--facilities", occ.facilities);
    oc->add_option("--clients", occ.clients);
    oc->add_option("--capacity", occ.capacity);
    oc->add_option("--opening", occ.opening, "comma-separated opening costs");
    oc->add_option("--rounds", occ.rounds, "rounds for integral-vertex survival");
    oc->add_option("--grid-denominator", occ.denominator);
    oc->add_option("--budget-points", occ.budget_points);
    oc->add_option("--out", occ.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            LabeledInstance inst;
            if (gls->parsed()) inst = build_ls_instance(g.n, g.l, rat_from_string(g.H));
            else if (glb->parsed())
                inst = build_lbfl_gap_instance(g.n, g.c, rat_from_string(g.D));
            else if (gcp->parsed()) inst = build_cfl_proper_instance(g.n);
            else if (gex->parsed()) inst = build_example1_instance();
            else
                inst = build_random_instance(g.seed, g.facilities, g.clients,
                                             mode_from_string(g.mode), g.capacity);
            emit(instance_to_json(inst), g.out);
            std::cerr << "generated " << mode_to_string(inst.base.mode) << " instance: "
                      << inst.base.n_facilities << " facilities, " << inst.base.n_clients
                      << " clients, capacity_or_bound " << inst.base.capacity_or_bound
                      << "\n";
            return 0;
        }
        if (gap->parsed())
            return run_gap(ga.instance, ga.relaxation, ga.classset, ga.out,
                           ga.budget_stars, ga.budget_subsets, ga.budget_vars);
        if (lsv->parsed())
            return run_ls_verify(lv.instance, lv.depth, lv.strategy, lv.seed, lv.width,
                                 lv.path, lv.out, lv.summary_only);
        if (gsr->parsed()) {
            std::ostringstream csv;
            csv << "n,lp_value,integral_value,gap,gap_approx\n";
            for (long long n = gs.n_from; n <= gs.n_to; ++n) {
                GapReport rep;
                if (gs.family == "cfl-proper") {
                    const auto inst = build_cfl_proper_instance(n);
                    rep = cfl_gap_report(inst, cfl_bad_projection(inst));
                } else {
                    if (n - gs.c - 1 <= 0) continue;
                    const auto inst = build_lbfl_gap_instance(n, gs.c,
                                                              rat_from_string(gs.D));
                    rep = lbfl_gap_report(inst, lbfl_bad_projection(inst));
                }
                csv << n << "," << rat_to_string(rep.lp_value) << ","
                    << rat_to_string(rep.integral_value) << ","
                    << rat_to_string(rep.gap) << "," << rat_to_double(rep.gap) << "\n";
            }
            if (gs.out.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream out(gs.out);
                if (!out) throw std::runtime_error("cannot write " + gs.out);
                out << csv.str();
            }
            return 0;
        }
        if (sv->parsed()) {
            std::ifstream in(so.lp);
            if (!in) throw std::runtime_error("cannot read " + so.lp);
            const LinearProgram lp = lp_from_text(in);
            const auto sol = solve_lp(lp);
            if (sol.status == LpStatus::Optimal) verify_optimal_certificate(lp, sol);
            if (sol.status == LpStatus::Infeasible)
                verify_infeasibility_certificate(lp, sol);
            emit(lp_solution_to_json(sol, lp), so.out);
            return 0;
        }
        if (oc->parsed())
            return run_oracle_crosscheck(occ.facilities, occ.clients, occ.capacity,
                                         occ.opening, occ.rounds, occ.denominator,
                                         occ.budget_points, occ.out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
