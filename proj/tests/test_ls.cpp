#include "liftgap/ls.hpp"

#include "liftgap/instance.hpp"
#include "liftgap/relaxations.hpp"
#include "liftgap/witness.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace liftgap;

namespace {

// Micro CFL polytope with 2 facilities, 1 client, U = 1 (4 variables).
LinearProgram micro4() {
    FacilityLocationInstance inst;
    inst.mode = Mode::CFL;
    inst.n_facilities = 2;
    inst.n_clients = 1;
    inst.capacity_or_bound = 1;
    inst.opening_cost.assign(2, Rat(0));
    inst.validate();
    return standard_lp(inst);
}

// Micro CFL polytope with 2 facilities, 3 clients, U = 2 (8 variables); its
// LP relaxation is strictly weaker than the integral hull, so one-round
// membership is a nontrivial question on it.
LinearProgram micro8() {
    FacilityLocationInstance inst;
    inst.mode = Mode::CFL;
    inst.n_facilities = 2;
    inst.n_clients = 3;
    inst.capacity_or_bound = 2;
    inst.opening_cost = {Rat(0), Rat(1)};
    inst.validate();
    return standard_lp(inst);
}

// micro4 variable order: y_0, y_1, x_0_0, x_1_0.
std::vector<Rat> micro4_point(const Rat& y0, const Rat& y1, const Rat& x0) {
    return {y0, y1, x0, Rat(1) - x0};
}

}  // namespace

TEST_CASE("membership at zero rounds is plain feasibility") {
    auto K = micro4();
    CHECK(brute_membership(K, micro4_point(Rat(1), Rat(1), make_rat(1, 2)), 0));
    CHECK_FALSE(brute_membership(K, micro4_point(make_rat(1, 4), Rat(1), make_rat(1, 2)), 0));
}

TEST_CASE("integral vertices survive every round") {
    auto K = micro4();
    const auto v1 = micro4_point(Rat(1), Rat(1), Rat(1));
    const auto v2 = micro4_point(Rat(1), Rat(1), Rat(0));
    const auto v3 = micro4_point(Rat(1), Rat(0), Rat(1));
    for (const auto& v : {v1, v2, v3}) {
        CHECK(brute_membership(K, v, 1));
        CHECK(brute_membership(K, v, 2));
        CHECK(protection_matrix_exists(K, v));
    }
}

TEST_CASE("membership oracles agree on fractional points") {
    auto K4 = micro4();
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int c = 0; c <= 4; ++c) {
                const auto z = micro4_point(make_rat(a, 4), make_rat(b, 4), make_rat(c, 4));
                const bool in_k = brute_membership(K4, z, 0);
                const bool m1 = brute_membership(K4, z, 1);
                const bool m2 = protection_matrix_exists(K4, z);
                CHECK(m1 == m2);
                if (m1) CHECK(in_k);  // monotonicity N(K) within K
            }
}

TEST_CASE("one round strictly cuts the gapped micro polytope") {
    auto K = micro8();
    // The symmetric fractional point: facility 0 fully open, facility 1 at
    // 1/2, every client split 2/3 - 1/3. Opening integrally needs both
    // facilities (ceil(3/2) = 2), so this point undercuts the integral cost;
    // one round of lifting removes it, and both oracles agree on that.
    std::vector<Rat> z(K.num_variables(), Rat(0));
    z[K.variable_index("y_0")] = 1;
    z[K.variable_index("y_1")] = make_rat(1, 2);
    for (long long j = 0; j < 3; ++j) {
        z[K.variable_index("x_0_" + std::to_string(j))] = make_rat(2, 3);
        z[K.variable_index("x_1_" + std::to_string(j))] = make_rat(1, 3);
    }
    REQUIRE(check_feasible(z, K).feasible);
    CHECK_FALSE(brute_membership(K, z, 1));
    CHECK_FALSE(protection_matrix_exists(K, z));

    // The LP optimum itself (value 1/2 against an integral optimum of 1) is
    // cut as well.
    const auto sol = solve_lp(K);
    REQUIRE(sol.status == LpStatus::Optimal);
    REQUIRE(sol.objective_value == make_rat(1, 2));
    CHECK_FALSE(brute_membership(K, sol.values, 1));
    CHECK_FALSE(protection_matrix_exists(K, sol.values));
    // Whole-hull sanity: the integral point survives.
    std::vector<Rat> zi(K.num_variables(), Rat(0));
    zi[K.variable_index("y_0")] = 1;
    zi[K.variable_index("y_1")] = 1;
    zi[K.variable_index("x_0_0")] = 1;
    zi[K.variable_index("x_0_1")] = 1;
    zi[K.variable_index("x_1_2")] = 1;
    CHECK(brute_membership(K, zi, 1));
    CHECK(protection_matrix_exists(K, zi));
}

TEST_CASE("membership budgets are enforced") {
    auto K = micro8();  // 8 variables
    std::vector<Rat> z(K.num_variables(), Rat(0));
    CHECK_THROWS_AS(brute_membership(K, z, 3), BudgetExceeded);  // needs <= 4 effectively
    LinearProgram big;
    for (int i = 0; i < 13; ++i) big.add_variable("v" + std::to_string(i), Rat(0), Rat(1));
    std::vector<Rat> zb(13, Rat(0));
    CHECK_THROWS_AS(brute_membership(big, zb, 1), BudgetExceeded);
    CHECK_THROWS_AS(brute_membership(K, z, 4), std::invalid_argument);
}

TEST_CASE("protection matrix of an integral point is the outer product") {
    auto K = micro4();
    const auto z = micro4_point(Rat(1), Rat(1), Rat(1));
    ProtectionMatrixView view;
    view.base = ConeVector{Rat(1), z};
    for (int i = 0; i < 4; ++i) {
        if (z[i] == 0) {
            view.zero_rows.insert(i);
            continue;
        }
        ConeVector row;
        row.z0 = z[i];
        row.coords.resize(4);
        for (int k = 0; k < 4; ++k) row.coords[k] = z[i] * z[k];
        view.rows[i] = std::move(row);
    }
    auto res = protection_matrix_check(view, feasibility_oracle(K));
    CHECK(res.ok);
}

TEST_CASE("protection matrix from evolution-tree witnesses at micro scale") {
    // Dense check of the constructed one-round witnesses on the smallest
    // cheap/costly instance with a fractional opening value.
    auto inst = build_ls_instance(3, 2, Rat(5));
    auto K = standard_lp(inst.base);
    auto root = root_solution(inst);
    auto [y, x] = expand_dense(root, inst);
    const int n = inst.base.n_facilities;
    const long long m = inst.base.n_clients;

    std::vector<Rat> z(K.num_variables());
    for (int i = 0; i < n; ++i) z[std_y_index(i)] = y[i];
    for (int i = 0; i < n; ++i)
        for (long long j = 0; j < m; ++j) z[std_x_index(n, m, i, j)] = x[i][j];
    REQUIRE(check_feasible(z, K).feasible);

    ProtectionMatrixView view;
    view.base = ConeVector{Rat(1), z};
    auto add_row = [&](int var_index, const TouchedVar& tv) {
        const Rat zi = z[var_index];
        if (zi == 0 || zi == 1) return;
        auto child = touch(inst, root, tv, WitnessType::Type1);
        auto [cy, cx] = expand_dense(child, inst);
        ConeVector row;
        row.z0 = zi;
        row.coords.resize(K.num_variables());
        for (int i = 0; i < n; ++i) row.coords[std_y_index(i)] = zi * cy[i];
        for (int i = 0; i < n; ++i)
            for (long long j = 0; j < m; ++j)
                row.coords[std_x_index(n, m, i, j)] = zi * cx[i][j];
        view.rows[var_index] = std::move(row);
    };
    for (int i = 0; i < n; ++i) add_row(std_y_index(i), TouchedVar::open(i));
    for (int i = 0; i < n; ++i)
        for (long long j = 0; j < m; ++j)
            add_row(std_x_index(n, m, i, j), TouchedVar::assign(i, j));

    auto res = protection_matrix_check(view, feasibility_oracle(K));
    if (!res.ok) {
        CAPTURE(res.violations.front().condition, res.violations.front().i,
                res.violations.front().k);
    }
    CHECK(res.ok);

    // Corrupting one entry must break symmetry or the diagonal conditions.
    ProtectionMatrixView bad = view;
    const int costly_y = std_y_index(static_cast<int>(3));
    bad.rows.at(costly_y).coords[std_x_index(n, m, 0, 0)] += make_rat(1, 1000);
    auto bad_res = protection_matrix_check(bad, feasibility_oracle(K));
    CHECK_FALSE(bad_res.ok);
}

TEST_CASE("protection matrix of an interior node with singleton orbits") {
    // One level down the evolution tree the node carries a singleton orbit
    // and a closed facility; its one-round witnesses must still assemble
    // into a valid protection matrix.
    auto inst = build_ls_instance(3, 2, Rat(5));
    auto K = standard_lp(inst.base);
    auto root = root_solution(inst);
    auto node = touch(inst, root, TouchedVar::assign(3, 0), WitnessType::Type2);
    REQUIRE(verify_node_feasibility(node, inst).feasible);
    auto [y, x] = expand_dense(node, inst);
    const int n = inst.base.n_facilities;
    const long long m = inst.base.n_clients;
    std::vector<Rat> z(K.num_variables());
    for (int i = 0; i < n; ++i) z[std_y_index(i)] = y[i];
    for (int i = 0; i < n; ++i)
        for (long long j = 0; j < m; ++j) z[std_x_index(n, m, i, j)] = x[i][j];
    REQUIRE(check_feasible(z, K).feasible);

    ProtectionMatrixView view;
    view.base = ConeVector{Rat(1), z};
    auto add_row = [&](int var_index, const TouchedVar& tv) {
        const Rat zi = z[var_index];
        if (zi == 0) {
            view.zero_rows.insert(var_index);
            return;
        }
        if (zi == 1) return;
        auto child = touch(inst, node, tv, WitnessType::Type1);
        auto [cy, cx] = expand_dense(child, inst);
        ConeVector row;
        row.z0 = zi;
        row.coords.resize(K.num_variables());
        for (int i = 0; i < n; ++i) row.coords[std_y_index(i)] = zi * cy[i];
        for (int i = 0; i < n; ++i)
            for (long long j = 0; j < m; ++j)
                row.coords[std_x_index(n, m, i, j)] = zi * cx[i][j];
        view.rows[var_index] = std::move(row);
    };
    for (int i = 0; i < n; ++i) add_row(std_y_index(i), TouchedVar::open(i));
    for (int i = 0; i < n; ++i)
        for (long long j = 0; j < m; ++j)
            add_row(std_x_index(n, m, i, j), TouchedVar::assign(i, j));
    auto res = protection_matrix_check(view, feasibility_oracle(K));
    if (!res.ok) {
        CAPTURE(res.violations.front().condition, res.violations.front().i,
                res.violations.front().k);
    }
    CHECK(res.ok);
}

TEST_CASE("materialized witness matrices pass the explicit row checker") {
    // Whenever the existence LP finds a one-round witness, the extracted
    // matrix must satisfy every structural condition verbatim.
    auto K = micro4();
    int found = 0;
    for (int a = 1; a <= 4; ++a)
        for (int c = 0; c <= 4; ++c) {
            const auto z = micro4_point(make_rat(a, 4), Rat(1), make_rat(c, 4));
            auto view = protection_matrix_find(K, z);
            CHECK(view.has_value() == brute_membership(K, z, 1));
            if (view) {
                auto res = protection_matrix_check(*view, feasibility_oracle(K));
                CHECK(res.ok);
                ++found;
            }
        }
    CHECK(found > 3);
}

TEST_CASE("two-round membership implies one-round membership") {
    auto K = micro4();
    const std::vector<std::vector<Rat>> points{
        micro4_point(Rat(1), Rat(1), make_rat(1, 2)),
        micro4_point(make_rat(3, 4), Rat(1), make_rat(1, 2)),
        micro4_point(Rat(1), make_rat(1, 4), make_rat(3, 4)),
    };
    for (const auto& z : points) {
        const bool m2 = brute_membership(K, z, 2);
        const bool m1 = brute_membership(K, z, 1);
        if (m2) CHECK(m1);
    }
}

TEST_CASE("missing row is reported") {
    auto K = micro4();
    const auto z = micro4_point(make_rat(1, 2), Rat(1), make_rat(1, 2));
    ProtectionMatrixView view;
    view.base = ConeVector{Rat(1), z};
    auto res = protection_matrix_check(view, feasibility_oracle(K));
    CHECK_FALSE(res.ok);
    bool missing = false;
    for (const auto& v : res.violations)
        missing = missing || v.condition.find("missing row") != std::string::npos;
    CHECK(missing);
}

TEST_CASE("symmetry factor check") {
    // z with two fractional coordinates; witnesses scale each other equally.
    std::vector<Rat> z{make_rat(1, 2), make_rat(1, 4), Rat(1)};
    WitnessPair w0, w1;
    w0.variable = 0;
    w1.variable = 1;
    // Witness for 0 doubles coordinate 1; witness for 1 must double coord 0.
    w0.type1 = std::vector<Rat>{Rat(1), make_rat(1, 2), Rat(1)};
    w1.type1 = std::vector<Rat>{Rat(1), Rat(1), Rat(1)};
    auto ok = symmetry_factor_check(z, {w0, w1});
    CHECK(ok.ok);

    // Swap the factor in one witness: 0's witness now scales coord 1 by 3.
    WitnessPair w0bad = w0;
    (*w0bad.type1)[1] = make_rat(3, 4);
    auto bad = symmetry_factor_check(z, {w0bad, w1});
    CHECK_FALSE(bad.ok);
    CHECK(((bad.violating_q == 0 && bad.violating_t == 1) ||
           (bad.violating_q == 1 && bad.violating_t == 0)));

    // Changing an integral coordinate is caught.
    WitnessPair w0int = w0;
    (*w0int.type1)[2] = make_rat(1, 2);
    CHECK_FALSE(symmetry_factor_check(z, {w0int, w1}).ok);
}

TEST_CASE("twin formula") {
    // z_t = 1/2 and a 10% bump: the twin applies a 10% cut.
    std::vector<Rat> z{make_rat(1, 2), make_rat(1, 5)};
    std::vector<Rat> type1{Rat(1), make_rat(11, 50)};  // coord 1 scaled by 1+1/10
    auto twin = twin_type2(z, type1, 0);
    CHECK(twin[0] == 0);
    CHECK(twin[1] == make_rat(1, 5) * make_rat(9, 10));
    // Reconstruction: z_t * type1 + (1 - z_t) * twin == z.
    for (size_t q = 0; q < z.size(); ++q)
        CHECK(z[0] * type1[q] + (1 - z[0]) * twin[q] == z[q]);

    // No perturbation outside t: twin equals z with coordinate t zeroed.
    std::vector<Rat> flat{make_rat(1, 3), make_rat(2, 5)};
    std::vector<Rat> t1{Rat(1), make_rat(2, 5)};
    auto tw = twin_type2(flat, t1, 0);
    CHECK(tw[0] == 0);
    CHECK(tw[1] == make_rat(2, 5));
    CHECK_THROWS_AS(twin_type2(std::vector<Rat>{Rat(1)}, std::vector<Rat>{Rat(1)}, 0),
                    std::invalid_argument);
}

TEST_CASE("twin preserves equality constraints") {
    // If z and its type-1 witness both satisfy sum a_i v_i = b, so does the
    // twin.
    std::vector<Rat> z{make_rat(1, 2), make_rat(1, 4), make_rat(1, 4)};
    std::vector<Rat> a{Rat(1), Rat(2), Rat(2)};
    const Rat b = z[0] * a[0] + z[1] * a[1] + z[2] * a[2];
    // type1 for coordinate 0: set it to one, rebalance coordinate 1.
    std::vector<Rat> type1{Rat(1), Rat(0), make_rat(1, 4)};
    REQUIRE(type1[0] * a[0] + type1[1] * a[1] + type1[2] * a[2] == b);
    auto twin = twin_type2(z, type1, 0);
    CHECK(twin[0] * a[0] + twin[1] * a[1] + twin[2] * a[2] == b);
}

TEST_CASE("psd checks") {
    CHECK(psd_restriction_check({}).psd);
    CHECK(psd_restriction_check({Rat(0), Rat(0)}).psd);
    auto one = psd_restriction_check({make_rat(1, 2)});
    CHECK(one.psd);
    REQUIRE(one.pivots.size() == 1);
    CHECK(one.pivots[0] == make_rat(1, 2));

    // Restricted opening vector of the bad solution at n = l = 10.
    std::vector<Rat> y(10, Rat(1));
    for (int i = 0; i < 10; ++i) y.push_back(make_rat(1, 10));
    auto rep = psd_restriction_check(y);
    CHECK(rep.psd);
    for (const Rat& p : rep.pivots) CHECK(p >= 0);

    CHECK_THROWS_AS(psd_restriction_check({Rat(2)}), std::invalid_argument);

    // The matrix route must refute an indefinite matrix.
    std::vector<std::vector<Rat>> M{{Rat(1), Rat(2)}, {Rat(2), Rat(1)}};
    CHECK_FALSE(psd_check_matrix(M).psd);
    std::vector<std::vector<Rat>> Z{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    CHECK_FALSE(psd_check_matrix(Z).psd);
    std::vector<std::vector<Rat>> I{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    CHECK(psd_check_matrix(I).psd);
}
