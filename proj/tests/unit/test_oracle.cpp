#include "doctest.h"
#include "helpers.hpp"
#include "tgr/oracle.hpp"

using namespace tgr;

TEST_SUITE("oracle") {

TEST_CASE("classical Ext of T over S") {
    const TowerPtr& T = test_tower(3, 2);
    const GaloisModule M = galois_module_T(T);
    CHECK(classical_ext(M, 0).free_rank == 1);
    for (long d = 1; d <= 6; ++d) {
        const ModuleDescription m = classical_ext(M, d);
        CHECK(m.free_rank == 0);
        CHECK(m.torsion == std::vector<long>{1});
    }
    // Tr(T) = 3S
    const ClassicalComplex C = classical_complex(M);
    CHECK(module_length(to_rat_matrix(C.trace), RatVal{3}).is_infinite());
}

TEST_CASE("classical Ext of U over H for p = 3") {
    const GaloisModule U = galois_module_U(3);
    CHECK(U.N == 6);
    CHECK(classical_ext(U, 0).free_rank == 1);
    for (long d = 1; d <= 4; ++d) CHECK(classical_ext(U, d).length() == Valuation(1));
}

TEST_CASE("classical, formula and Smith lengths agree") {
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
        CAPTURE(p);
        CAPTURE(n);
        const OracleReport r = oracle_classical(test_tower(p, n), 6);
        CHECK(r.pass);
        for (const auto& c : r.checks) CHECK_MESSAGE(c.ok, c.name);
    }
}

TEST_CASE("bar complex for p = 3, n = 2") {
    const TowerPtr& T = test_tower(3, 2);
    BarComplex B(galois_module_T(T));
    CHECK(B.cohomology(0).free_rank == 1);
    CHECK(B.cohomology(1).torsion == std::vector<long>{1});
    CHECK(B.cohomology(2).torsion == std::vector<long>{1});
    for (long d = 0; d < 3; ++d) CHECK((B.coboundary(d) * B.coboundary(d + 1)).is_zero_matrix());

    const auto reps = h1_representatives(B.module());
    REQUIRE(reps.size() == 1);
    const BarCochain a = B.one_cocycle(reps[0]);
    CHECK(B.is_cocycle(a));
    const BarCochain au = B.cup(a, B.unit()), ua = B.cup(B.unit(), a);
    CHECK(B.flatten(au) == B.flatten(a));
    CHECK(B.flatten(ua) == B.flatten(a));
    // (h^1)^2 = 0 in H^2
    CHECK(B.is_coboundary(B.cup(a, a)));
}

TEST_CASE("cup products are graded commutative up to the homotopy") {
    const TowerPtr& T = test_tower(3, 2);
    BarComplex B(galois_module_T(T));
    const auto reps = h1_representatives(B.module());
    const BarCochain a = B.one_cocycle(reps[0]);
    const BarCochain ab = B.cup(a, a);
    const BarCochain h = B.homotopy(a, a);
    const auto lhs = B.flatten(ab), dh = B.flatten(B.apply_d(h));
    // a u a + a u a = d(c_{a,a}) for degree-1 classes
    bool ok = true;
    for (std::size_t q = 0; q < lhs.size(); ++q) ok = ok && lhs[q] + lhs[q] == dh[q];
    CHECK(ok);
}

TEST_CASE("bar products match the structure constants") {
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {3, 3}}) {
        const OracleReport r = oracle_bar(test_tower(p, n), 3);
        CHECK(r.pass);
        for (const auto& c : r.checks) CHECK_MESSAGE(c.ok, c.name);
    }
}

TEST_CASE("bar complex size guard") {
    BarComplex B(galois_module_T(test_tower(3, 2)), 50);
    try {
        B.coboundary(3);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::resource);
    }
}

TEST_CASE("independent lifts") {
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {3, 3}}) {
        const ExtensionTower& T = *test_tower(p, n);
        const OracleReport r = oracle_lift(T);
        CHECK(r.pass);
        for (const auto& c : r.checks) CHECK_MESSAGE(c.ok, c.name);
    }
    const ExtensionTower& T = *test_tower(3, 2);
    const ResolutionMaps R = build_resolution(T);
    const IndependentLift z = independent_lift(T, R, std::vector<KElem>(3));
    CHECK(z.nu * R.beta == R.alpha * z.mu);
    CHECK(z.mu.row(0) == std::vector<KElem>(3));
}

}  // TEST_SUITE
