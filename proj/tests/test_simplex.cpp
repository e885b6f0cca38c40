#include "liftgap/solver.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>
#include <vector>

using namespace liftgap;

namespace {

// Brute-force oracle for box-bounded LPs: enumerate every basic point
// (intersection of n active hyperplanes drawn from constraints and bound
// faces), keep the feasible ones, and take the best objective. Exact and
// independent of the simplex path, so it can referee the solver.
struct BruteForceResult {
    bool feasible = false;
    Rat best = 0;
};

std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> A,
                                             std::vector<Rat> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (A[r][col] != 0) { pivot = r; break; }
        if (pivot == -1) return std::nullopt;
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            const Rat f = A[r][col] / A[col][col];
            for (int k = col; k < n; ++k) A[r][k] -= f * A[col][k];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

BruteForceResult brute_force_box_lp(const LinearProgram& lp) {
    const int n = lp.num_variables();
    // Hyperplane list: every constraint at equality, every finite bound face.
    std::vector<std::vector<Rat>> planes;
    std::vector<Rat> rhs;
    for (const auto& c : lp.constraints()) {
        std::vector<Rat> row(n, Rat(0));
        for (const auto& [j, a] : c.coef) row[j] = a;
        planes.push_back(row);
        rhs.push_back(c.rhs);
    }
    for (int j = 0; j < n; ++j) {
        const auto& v = lp.variables()[j];
        REQUIRE(v.lo.has_value());
        REQUIRE(v.hi.has_value());
        std::vector<Rat> lo_row(n, Rat(0)), hi_row(n, Rat(0));
        lo_row[j] = 1;
        hi_row[j] = 1;
        planes.push_back(lo_row);
        rhs.push_back(*v.lo);
        planes.push_back(hi_row);
        rhs.push_back(*v.hi);
    }
    const int p = static_cast<int>(planes.size());
    BruteForceResult res;
    std::vector<int> pick(n, 0);
    // Enumerate all n-subsets of planes.
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    while (true) {
        std::vector<std::vector<Rat>> A;
        std::vector<Rat> b;
        for (int i : idx) {
            A.push_back(planes[i]);
            b.push_back(rhs[i]);
        }
        if (auto x = solve_square(A, b)) {
            if (check_feasible(*x, lp).feasible) {
                const Rat v = lp.objective_value(*x);
                if (!res.feasible || v < res.best) res.best = v;
                res.feasible = true;
            }
        }
        // next combination
        int i = n - 1;
        while (i >= 0 && idx[i] == p - n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int k = i + 1; k < n; ++k) idx[k] = idx[k - 1] + 1;
    }
    return res;
}

}  // namespace

TEST_CASE("one-variable LPs") {
    LinearProgram lp;
    int y = lp.add_variable("y", Rat(0), std::nullopt);
    lp.add_constraint({{y, Rat(1)}}, Rel::Ge, make_rat(1, 3));
    lp.set_objective({{y, Rat(1)}});
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == make_rat(1, 3));
    CHECK(sol.values[0] == make_rat(1, 3));
    verify_optimal_certificate(lp, sol);
}

TEST_CASE("unbounded detection") {
    LinearProgram lp;
    int x = lp.add_variable("x", Rat(0), std::nullopt);
    lp.set_objective({{x, Rat(-1)}});
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("infeasibility with verified farkas certificate") {
    LinearProgram lp;
    int x = lp.add_variable("x", Rat(0), Rat(1));
    int y = lp.add_variable("y", Rat(0), Rat(1));
    lp.add_constraint({{x, Rat(1)}, {y, Rat(1)}}, Rel::Ge, Rat(3));
    lp.set_objective({{x, Rat(1)}});
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Infeasible);
    verify_infeasibility_certificate(lp, sol);
}

TEST_CASE("equality rows and negative bounds") {
    LinearProgram lp;
    int x = lp.add_variable("x", Rat(-2), Rat(2));
    int y = lp.add_variable("y", Rat(-2), Rat(2));
    lp.add_constraint({{x, Rat(1)}, {y, Rat(1)}}, Rel::Eq, Rat(1));
    lp.add_constraint({{x, Rat(1)}, {y, Rat(-1)}}, Rel::Le, Rat(0));
    lp.set_objective({{x, Rat(-1)}});
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == make_rat(-1, 2));  // x = y = 1/2
    verify_optimal_certificate(lp, sol);
}

TEST_CASE("free variable via split") {
    LinearProgram lp;
    int x = lp.add_variable("x", std::nullopt, std::nullopt);
    lp.add_constraint({{x, Rat(1)}}, Rel::Ge, Rat(-5));
    lp.set_objective({{x, Rat(1)}});
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == Rat(-5));
    verify_optimal_certificate(lp, sol);
}

TEST_CASE("degenerate LP still terminates") {
    // Klee-Minty-ish cube with many ties.
    LinearProgram lp;
    std::vector<int> v;
    for (int i = 0; i < 5; ++i)
        v.push_back(lp.add_variable("x" + std::to_string(i), Rat(0), Rat(1)));
    for (int i = 0; i < 5; ++i)
        lp.add_constraint({{v[i], Rat(1)}}, Rel::Le, Rat(0));
    std::map<int, Rat> obj;
    for (int i = 0; i < 5; ++i) obj[v[i]] = Rat(-1);
    lp.set_objective(obj);
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == 0);
    verify_optimal_certificate(lp, sol);
}

TEST_CASE("randomized cross-check against vertex enumeration") {
    std::mt19937 rng(7u);
    int optimal_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);   // 2..4 vars
        const int m = 1 + static_cast<int>(rng() % 4);   // 1..4 rows
        LinearProgram lp;
        for (int j = 0; j < n; ++j)
            lp.add_variable("x" + std::to_string(j), Rat(-2), Rat(3));
        for (int r = 0; r < m; ++r) {
            std::map<int, Rat> coef;
            for (int j = 0; j < n; ++j) {
                const long long a = static_cast<long long>(rng() % 7) - 3;
                if (a != 0) coef[j] = Rat(a);
            }
            if (coef.empty()) coef[0] = Rat(1);
            const Rel rel = static_cast<Rel>(rng() % 3);
            lp.add_constraint(std::move(coef), rel,
                              Rat(static_cast<long long>(rng() % 9) - 4));
        }
        std::map<int, Rat> obj;
        for (int j = 0; j < n; ++j) {
            const long long c = static_cast<long long>(rng() % 9) - 4;
            if (c != 0) obj[j] = Rat(c);
        }
        lp.set_objective(obj);

        const auto oracle = brute_force_box_lp(lp);
        const auto sol = solve_lp(lp);
        if (oracle.feasible) {
            REQUIRE(sol.status == LpStatus::Optimal);
            REQUIRE(sol.objective_value == oracle.best);
            verify_optimal_certificate(lp, sol);
            ++optimal_seen;
        } else {
            REQUIRE(sol.status == LpStatus::Infeasible);
            verify_infeasibility_certificate(lp, sol);
            ++infeasible_seen;
        }
    }
    // Make sure the generator actually exercised both outcomes.
    CHECK(optimal_seen > 20);
    CHECK(infeasible_seen > 5);
}

TEST_CASE("redundant and duplicated rows are handled") {
    // Duplicate equalities force the redundant-row path after phase one.
    LinearProgram lp;
    int x = lp.add_variable("x", Rat(0), Rat(2));
    int y = lp.add_variable("y", Rat(0), Rat(2));
    lp.add_constraint({{x, Rat(1)}, {y, Rat(1)}}, Rel::Eq, Rat(2));
    lp.add_constraint({{x, Rat(1)}, {y, Rat(1)}}, Rel::Eq, Rat(2));
    lp.add_constraint({{x, Rat(2)}, {y, Rat(2)}}, Rel::Eq, Rat(4));
    lp.add_constraint({}, Rel::Le, Rat(0));  // vacuous 0 <= 0
    lp.set_objective({{x, Rat(1)}, {y, Rat(-1)}});
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == Rat(-2));  // x = 0, y = 2
    verify_optimal_certificate(lp, sol);

    // An inconsistent vacuous row flips it to infeasible.
    lp.add_constraint({}, Rel::Ge, Rat(1));  // 0 >= 1
    auto bad = solve_lp(lp);
    REQUIRE(bad.status == LpStatus::Infeasible);
    verify_infeasibility_certificate(lp, bad);
}

TEST_CASE("wider randomized cross-check with more variables") {
    std::mt19937 rng(31u);
    int optimal_seen = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 5 + static_cast<int>(rng() % 2);  // 5..6 vars
        const int m = 2 + static_cast<int>(rng() % 3);
        LinearProgram lp;
        for (int j = 0; j < n; ++j)
            lp.add_variable("x" + std::to_string(j), Rat(-1), Rat(2));
        for (int r = 0; r < m; ++r) {
            std::map<int, Rat> coef;
            for (int j = 0; j < n; ++j) {
                const long long a = static_cast<long long>(rng() % 5) - 2;
                if (a != 0) coef[j] = Rat(a);
            }
            if (coef.empty()) coef[0] = Rat(1);
            lp.add_constraint(std::move(coef), static_cast<Rel>(rng() % 3),
                              Rat(static_cast<long long>(rng() % 7) - 3));
        }
        std::map<int, Rat> obj;
        for (int j = 0; j < n; ++j) {
            const long long c = static_cast<long long>(rng() % 9) - 4;
            if (c != 0) obj[j] = Rat(c);
        }
        lp.set_objective(obj);
        const auto oracle = brute_force_box_lp(lp);
        const auto sol = solve_lp(lp);
        if (oracle.feasible) {
            REQUIRE(sol.status == LpStatus::Optimal);
            REQUIRE(sol.objective_value == oracle.best);
            verify_optimal_certificate(lp, sol);
            ++optimal_seen;
        } else {
            REQUIRE(sol.status == LpStatus::Infeasible);
            verify_infeasibility_certificate(lp, sol);
        }
    }
    CHECK(optimal_seen > 5);
}

TEST_CASE("determinism: identical inputs give identical pivots") {
    LinearProgram lp;
    for (int j = 0; j < 4; ++j)
        lp.add_variable("x" + std::to_string(j), Rat(0), Rat(5));
    lp.add_constraint({{0, Rat(1)}, {1, Rat(2)}, {2, Rat(1)}}, Rel::Ge, Rat(4));
    lp.add_constraint({{1, Rat(1)}, {3, Rat(3)}}, Rel::Ge, Rat(2));
    lp.set_objective({{0, Rat(2)}, {1, Rat(1)}, {2, Rat(3)}, {3, Rat(1)}});
    auto a = solve_lp(lp);
    auto b = solve_lp(lp);
    REQUIRE(a.status == LpStatus::Optimal);
    CHECK(a.pivots == b.pivots);
    CHECK(a.values == b.values);
    CHECK(a.dual == b.dual);
}

TEST_CASE("lp text format round trip") {
    LinearProgram lp;
    int y = lp.add_variable("y_0", Rat(0), Rat(1));
    int x = lp.add_variable("x_0_0", Rat(0), Rat(1));
    lp.add_constraint({{x, Rat(1)}, {y, Rat(-1)}}, Rel::Le, Rat(0), "open");
    lp.add_constraint({{x, Rat(1)}}, Rel::Eq, Rat(1), "cover");
    lp.set_objective({{y, make_rat(7, 2)}});
    const std::string text = lp_to_text(lp);
    LinearProgram back = lp_from_text(text);
    REQUIRE(back.num_variables() == 2);
    REQUIRE(back.num_constraints() == 2);
    auto s1 = solve_lp(lp);
    auto s2 = solve_lp(back);
    REQUIRE(s1.status == LpStatus::Optimal);
    REQUIRE(s2.status == LpStatus::Optimal);
    CHECK(s1.objective_value == s2.objective_value);
    CHECK(s1.objective_value == make_rat(7, 2));
}

TEST_CASE("floating-point mode tracks the exact solver on random LPs") {
    // Exploratory mode only; it never appears on a correctness path.
    std::mt19937 rng(99u);
    int compared = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        LinearProgram lp;
        for (int j = 0; j < n; ++j)
            lp.add_variable("x" + std::to_string(j), Rat(0), Rat(4));
        for (int r = 0; r < 3; ++r) {
            std::map<int, Rat> coef;
            for (int j = 0; j < n; ++j) {
                const long long a = static_cast<long long>(rng() % 5) - 2;
                if (a != 0) coef[j] = Rat(a);
            }
            if (coef.empty()) coef[0] = Rat(1);
            lp.add_constraint(std::move(coef), static_cast<Rel>(rng() % 3),
                              Rat(static_cast<long long>(rng() % 7) - 3));
        }
        std::map<int, Rat> obj;
        for (int j = 0; j < n; ++j) obj[j] = Rat(static_cast<long long>(rng() % 7) - 3);
        lp.set_objective(obj);
        const auto exact = solve_lp(lp);
        const auto approx = solve_lp_approx(lp);
        REQUIRE(exact.status == approx.status);
        if (exact.status == LpStatus::Optimal) {
            const double diff =
                std::abs(rat_to_double(exact.objective_value) - approx.objective_value);
            REQUIRE(diff < 1e-6);
            ++compared;
        }
    }
    CHECK(compared > 10);
}

TEST_CASE("exact and float modes agree at a larger scale") {
    // A transportation-flavored LP with 36 variables; catches gross pivoting
    // bugs that tiny cross-checks might miss.
    std::mt19937 rng(123u);
    LinearProgram lp;
    const int a = 6, b = 6;
    std::vector<std::vector<int>> v(a, std::vector<int>(b));
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            v[i][j] = lp.add_variable("t" + std::to_string(i) + "_" + std::to_string(j),
                                      Rat(0), std::nullopt);
    for (int i = 0; i < a; ++i) {
        std::map<int, Rat> row;
        for (int j = 0; j < b; ++j) row[v[i][j]] = 1;
        lp.add_constraint(std::move(row), Rel::Eq, Rat(2 + (i % 3)));
    }
    for (int j = 0; j < b; ++j) {
        std::map<int, Rat> col;
        for (int i = 0; i < a; ++i) col[v[i][j]] = 1;
        lp.add_constraint(std::move(col), Rel::Le, Rat(4));
    }
    std::map<int, Rat> obj;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) obj[v[i][j]] = Rat(static_cast<long long>(rng() % 9));
    lp.set_objective(obj);
    const auto exact = solve_lp(lp);
    REQUIRE(exact.status == LpStatus::Optimal);
    verify_optimal_certificate(lp, exact);
    const auto approx = solve_lp_approx(lp);
    REQUIRE(approx.status == LpStatus::Optimal);
    CHECK(std::abs(rat_to_double(exact.objective_value) - approx.objective_value) < 1e-5);
}

TEST_CASE("check_feasible reports violations with slack") {
    LinearProgram lp;
    int y = lp.add_variable("y", Rat(0), Rat(1));
    lp.add_constraint({{y, Rat(1)}}, Rel::Ge, make_rat(1, 2), "half");
    auto rep = check_feasible(std::vector<Rat>{make_rat(1, 4)}, lp);
    REQUIRE_FALSE(rep.feasible);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].name == "half");
    CHECK(rep.violations[0].slack == make_rat(-1, 4));
    CHECK(check_feasible(std::vector<Rat>{make_rat(3, 4)}, lp).feasible);
}
