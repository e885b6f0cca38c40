#include "liftgap/instance.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace liftgap;

TEST_CASE("ls instance at the headline parameters") {
    auto inst = build_ls_instance(20, 20, Rat(10));
    CHECK(inst.base.capacity_or_bound == 8000);
    CHECK(inst.base.n_clients == 160001);
    CHECK(inst.base.n_facilities == 40);
    CHECK(inst.param("b") == make_rat(1, 40));
    CHECK(inst.param("a") == make_rat(1, 400));
    int cheap = 0, costly = 0;
    for (auto l : inst.facility_labels) {
        if (l == FacilityLabel::Cheap) ++cheap;
        if (l == FacilityLabel::Costly) ++costly;
    }
    CHECK(cheap == 20);
    CHECK(costly == 20);
    for (int i = 0; i < 20; ++i) CHECK(inst.base.opening_cost[i] == 0);
    for (int i = 20; i < 40; ++i) CHECK(inst.base.opening_cost[i] == 1);
    // Fractional cost of the bad solution: l * H / n^2.
    CHECK(Rat(20) * inst.param("b") == make_rat(1, 2));
}

TEST_CASE("ls instance at minimum size") {
    auto inst = build_ls_instance(2, 1, Rat(10));
    CHECK(inst.base.capacity_or_bound == 8);
    CHECK(inst.base.n_clients == 17);
    CHECK(inst.base.n_facilities == 3);
}

TEST_CASE("ls instance parameter echo") {
    auto inst = build_ls_instance(6, 4, make_rat(7, 2));
    const long long n = inst.param_ll("n");
    const long long l = inst.param_ll("l");
    const Rat H = inst.param("H");
    CHECK(n == 6);
    CHECK(l == 4);
    CHECK(inst.param("a") == Rat(1) / Rat(n * n));
    CHECK(inst.param("b") == H / Rat(n * n));
    CHECK(inst.param("U") == Rat(n * n * n));
}

TEST_CASE("ls instance rejects bad parameters") {
    CHECK_THROWS_AS(build_ls_instance(1, 1, Rat(10)), std::invalid_argument);
    CHECK_THROWS_AS(build_ls_instance(2, 0, Rat(10)), std::invalid_argument);
    CHECK_THROWS_AS(build_ls_instance(2, 1, Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(build_ls_instance(2, 1, Rat(-1)), std::invalid_argument);
}

TEST_CASE("lbfl gap instance geometry") {
    auto inst = build_lbfl_gap_instance(5, 2, Rat(1));
    CHECK(inst.base.n_facilities == 6);
    CHECK(inst.base.capacity_or_bound == 25);
    CHECK(inst.base.n_clients == 125);
    CHECK(inst.param("Dprime") == 10);
    CHECK(inst.param("alpha") == make_rat(3, 5));

    const auto blocks = lbfl_blocks(inst);
    CHECK(blocks.n_simplex == 4);
    CHECK(blocks.far_size == 29);  // n^2 + n - 1
    // A facility is at distance zero from its exclusive clients.
    CHECK(inst.base.connection_cost(0, blocks.block_begin(0)) == 0);
    CHECK(inst.base.connection_cost(1, blocks.block_begin(1)) == 0);
    // Distance D between distinct simplex blocks, D' from the far cluster.
    CHECK(inst.base.connection_cost(0, blocks.block_begin(1)) == 1);
    CHECK(inst.base.connection_cost(0, blocks.far_begin) == 10);
    CHECK(inst.base.connection_cost(4, 0) == 10);
    CHECK(inst.base.connection_cost(4, blocks.far_begin) == 0);
    CHECK(inst.base.connection_cost(5, blocks.far_begin) == 0);
    // validate() ran the exhaustive metric check at this size already; run it
    // once more explicitly.
    CHECK_NOTHROW(inst.base.check_metric(4'000'000));
}

TEST_CASE("lbfl gap instance rejects degenerate parameters") {
    CHECK_THROWS_AS(build_lbfl_gap_instance(5, 1, Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(build_lbfl_gap_instance(3, 2, Rat(1)), std::invalid_argument);
}

TEST_CASE("metric flag catches a violation") {
    FacilityLocationInstance inst;
    inst.mode = Mode::CFL;
    inst.n_facilities = 2;
    inst.n_clients = 2;
    inst.capacity_or_bound = 2;
    inst.opening_cost.assign(2, Rat(0));
    inst.metric_flag = true;
    // c(0,0)=10 but c(0,1)=c(1,1)=c(1,0)=0 breaks the cross inequality.
    inst.set_connection_cost(0, 0, Rat(10));
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}

TEST_CASE("cfl proper instance") {
    auto inst5 = build_cfl_proper_instance(5);
    CHECK(inst5.base.capacity_or_bound == 25);
    CHECK(inst5.base.n_clients == 101);
    std::vector<Rat> expect{Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)};
    CHECK(inst5.base.opening_cost == expect);

    auto inst3 = build_cfl_proper_instance(3);
    CHECK(inst3.base.capacity_or_bound == 9);
    CHECK(inst3.base.n_clients == 19);

    // Any four facilities cover at most 100 < 101 clients, so every integral
    // solution opens all five.
    for (int excluded = 0; excluded < 5; ++excluded)
        CHECK(4 * inst5.base.capacity_or_bound < inst5.base.n_clients);
    CHECK_THROWS_AS(build_cfl_proper_instance(2), std::invalid_argument);
}

TEST_CASE("example instance with four facilities") {
    auto inst = build_example1_instance();
    CHECK(inst.base.n_clients == 44);
    CHECK(inst.base.capacity_or_bound == 10);
    CHECK(inst.param_ll("s1") + inst.param_ll("s2") + inst.param_ll("s3") +
              inst.param_ll("s4") ==
          44);
    // Opening only the last two facilities is integrally infeasible on their
    // own client groups: 9 + 9 < 2 * 10.
    CHECK(inst.param_ll("s3") + inst.param_ll("s4") < 2 * inst.base.capacity_or_bound);
}

TEST_CASE("random instances are deterministic per seed") {
    auto a = build_random_instance(7, 3, 6, Mode::CFL, 3);
    auto b = build_random_instance(7, 3, 6, Mode::CFL, 3);
    CHECK(a.base.opening_cost == b.base.opening_cost);
    for (int i = 0; i < 3; ++i)
        for (long long j = 0; j < 6; ++j)
            CHECK(a.base.connection_cost(i, j) == b.base.connection_cost(i, j));
    auto c = build_random_instance(8, 3, 6, Mode::CFL, 3);
    bool differs = a.base.opening_cost != c.base.opening_cost;
    for (int i = 0; i < 3 && !differs; ++i)
        for (long long j = 0; j < 6 && !differs; ++j)
            differs = a.base.connection_cost(i, j) != c.base.connection_cost(i, j);
    CHECK(differs);
}

TEST_CASE("uniform connection cost detection") {
    auto ls = build_ls_instance(3, 2, Rat(5));
    auto u = ls.base.uniform_connection_costs();
    REQUIRE(u.has_value());
    for (const Rat& d : *u) CHECK(d == 0);

    auto rnd = build_random_instance(3, 3, 5, Mode::CFL, 2);
    CHECK_FALSE(rnd.base.uniform_connection_costs().has_value());
}

TEST_CASE("LBFL instances below the bound are flagged, not rejected") {
    FacilityLocationInstance inst;
    inst.mode = Mode::LBFL;
    inst.n_facilities = 2;
    inst.n_clients = 3;
    inst.capacity_or_bound = 5;  // no facility can ever reach its bound
    inst.opening_cost.assign(2, Rat(0));
    CHECK_NOTHROW(inst.validate());
    CHECK_FALSE(inst.integrally_feasible());
    inst.n_clients = 5;
    CHECK(inst.integrally_feasible());
}

TEST_CASE("infeasible CFL instance is rejected") {
    FacilityLocationInstance inst;
    inst.mode = Mode::CFL;
    inst.n_facilities = 1;
    inst.n_clients = 5;
    inst.capacity_or_bound = 2;
    inst.opening_cost.assign(1, Rat(0));
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}
