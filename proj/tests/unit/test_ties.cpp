#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tgr/ties.hpp"

using namespace tgr;

namespace {

std::string tie_text(const TieSystem& sys, const ExtensionTower& T) {
    std::string out;
    long j = -1;
    for (const auto& c : sys.conditions) {
        if (j >= 0) out += c.j == j ? ", " : "; ";
        j = c.j;
        out += c.str(T);
    }
    return out;
}

}  // namespace

TEST_SUITE("ties") {

TEST_CASE("derivations") {
    const ExtensionTower& T = *test_tower(3, 2);
    const GammaElement t = T.tdot(), s = T.sigmadot();
    CHECK(derivation_apply(t, t, 1).is_zero_matrix());
    CHECK(derivation_apply(t, s, 2) == derivation_apply(t, derivation_apply(t, s, 1), 1));
    CHECK(derivation_apply(s, t, 3) == derivation_apply(s, derivation_apply(s, derivation_apply(s, t, 1), 1), 1));
    CHECK(ideal_membership(derivation_apply(t, s, 1), 2, T));
}

TEST_CASE("derivation ring membership") {
    const ExtensionTower& T = *test_tower(3, 2);
    const DerivationSpec spec{{T.tdot()}, {2}, {2}};
    CHECK(in_derivation_ring(spec, ddot_power(0, T), T));
    CHECK(in_derivation_ring(spec, T.sigmadot(), T));
    RatMatrix unit(3, 3);
    unit(0, 1) = 1;
    CHECK_FALSE(in_derivation_ring(spec, to_kmatrix(unit), T));
    // the same element violates a_{0,1} + a_{1,1} + a_{2,1} = 0 mod 3
    CHECK_FALSE(lambda_D(T, 0).ties.satisfied_by(to_kmatrix(unit), T));
    RatMatrix outside(3, 3);
    outside(1, 0) = 1;
    CHECK_THROWS_AS(in_derivation_ring(spec, to_kmatrix(outside), T), Error);
}

TEST_CASE("displayed tie systems for p = 3, n = 2") {
    const ExtensionTower& T = *test_tower(3, 2);
    CHECK(tie_text(lambda_D(T, 0).ties, T) ==
          "a_{0,0} in 3^0 S, a_{0,0} - a_{1,0} in 3^1 S, a_{0,0} - 2 a_{1,0} + a_{2,0} in 3^1 S; "
          "a_{0,1} in 3^0 S, a_{0,1} - a_{1,1} in 3^0 S, a_{0,1} - 2 a_{1,1} + a_{2,1} in 3^1 S; "
          "a_{0,2} in 3^0 S, a_{0,2} - a_{1,2} in 3^0 S, a_{0,2} - 2 a_{1,2} + a_{2,2} in 3^0 S");
    CHECK(tie_text(lambda_D(T, 1).ties, T) ==
          "a_{0,0} in 3^1 S, a_{0,0} - a_{1,0} in 3^1 S, a_{0,0} - 2 a_{1,0} + a_{2,0} in 3^1 S; "
          "a_{0,1} in 3^0 S, a_{0,1} - a_{1,1} in 3^1 S, a_{0,1} - 2 a_{1,1} + a_{2,1} in 3^1 S; "
          "a_{0,2} in 3^0 S, a_{0,2} - a_{1,2} in 3^0 S, a_{0,2} - 2 a_{1,2} + a_{2,2} in 3^1 S");
}

TEST_CASE("simplified congruences describe the same lattice") {
    // a00 = a10 = a20 mod 3 and a01 + a11 + a21 = 0 mod 3
    const ExtensionTower& T = *test_tower(3, 2);
    const TieSystem sys = lambda_D(T, 0).ties;
    std::mt19937_64 rng(5);
    for (int c = 0; c < 500; ++c) {
        KMatrix a(3, 3);
        long v[3][3];
        for (auto& row : v)
            for (long& x : row) x = std::uniform_int_distribution<long>(0, 5)(rng);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) a(i, j) = KElem(v[i][j]);
        const bool want = (v[0][0] - v[1][0]) % 3 == 0 && (v[1][0] - v[2][0]) % 3 == 0 && (v[0][1] + v[1][1] + v[2][1]) % 3 == 0;
        CHECK(sys.satisfied_by(from_eps_coords(a, T), T) == want);
    }
}

TEST_CASE("mu basis") {
    const ExtensionTower& T = *test_tower(3, 2);
    const TieOrder o = lambda_D(T, 0);
    REQUIRE(o.mu.size() == 9);
    CHECK(o.mu[0] == ddot_power(0, T));
    for (const auto& m : o.mu) CHECK(o.ties.satisfied_by(m, T));
    CHECK(colength(o.mu, lambda_basis(T), T) == 3);
    CHECK(tie_colength(o.ties, T) == 3);
}

TEST_CASE("conditions with i > 0 and shifted rows are redundant") {
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {3, 3}}) {
        CAPTURE(p);
        const ExtensionTower& T = *test_tower(p, n);
        for (long gamma : {0, 1}) {
            const TieOrder base = lambda_D(T, gamma);
            const long want = tie_colength(base.ties, T);
            CHECK(tie_colength(full_tie_family(T, gamma), T) == want);
            const ZpLattice L = s_span(base.mu, T);
            for (long m = 1; m < p; ++m) {
                const TieOrder shifted = lambda_D(T, gamma, m);
                CHECK(s_span(shifted.mu, T) == L);
            }
        }
    }
}

TEST_CASE("replacing tdot by tddot keeps the derivation ring") {
    std::mt19937_64 rng(3);
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}}) {
        const ExtensionTower& T = *test_tower(p, n);
        const DerivationSpec a{{T.tdot()}, {p - 1}, {1 + T.b()}}, b{{ddot_power(1, T)}, {p - 1}, {1 + T.b()}};
        const TieOrder o = lambda_D(T, 0);
        for (int c = 0; c < 40; ++c) {
            GammaElement f(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
            for (const auto& m : o.mu) f = f + KElem(std::uniform_int_distribution<long>(-5, 5)(rng)) * m;
            if (c % 2) f = f + eps(c % p, (c / 2) % p, T);
            const bool x = in_derivation_ring(a, f, T), y = in_derivation_ring(b, f, T);
            CHECK(x == y);
            CHECK(x == o.ties.satisfied_by(f, T));
        }
    }
}

TEST_CASE("lambda_D preconditions") {
    const ExtensionTower& T = *test_tower(3, 2);
    CHECK_NOTHROW(lambda_D(T, 1));
    try {
        lambda_D(T, 2);
        FAIL("expected a precondition error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition);
        CHECK(std::string(e.what()).find("val_s(p)") != std::string::npos);
    }
}

TEST_CASE("Wedderburn factorization") {
    struct Want {
        long p, n, in_lambda, in_gamma;
    };
    for (Want w : {Want{3, 2, 3, 6}, Want{5, 2, 10, 20}, Want{7, 2, 21, 42}, Want{3, 3, 12, 15}}) {
        CAPTURE(w.p);
        CAPTURE(w.n);
        const FT16Report r = verify_ft16(*test_tower(w.p, w.n));
        CHECK(r.pass);
        CHECK(r.colength_in_lambda == w.in_lambda);
        CHECK(r.colength_in_gamma == w.in_gamma);
    }
}

TEST_CASE("Xi equals Lambda^D") {
    const ExtensionTower& T = *test_tower(3, 2);
    CHECK(xi_lattice(T) == s_span(lambda_D(T, 0).mu, T));
}

TEST_CASE("tie systems of the discriminant-4 pair") {
    const ExtensionTower& T = *test_tower(3, 2);
    const PolyTower a = poly_tower(3, {Rat(-3), Rat(9), Rat(-6), Rat(1)});
    const PolyTower b = poly_tower(3, {Rat(48), Rat(-18), Rat(3), Rat(1)});
    CHECK(a.b == 1);
    CHECK(b.b == 1);
    const TieIsoReport r = tie_isomorphism_check(a, b);
    CHECK(r.isomorphic);
    CHECK(r.ties1 == lambda_D(T, 0).ties);
    CHECK(tie_isomorphism_check(a, a).isomorphic);
    // X^3 + 3 has discriminant valuation 5, not a C_3 tower
    CHECK_THROWS_AS(poly_tower(3, {Rat(3), Rat(0), Rat(0), Rat(1)}), Error);
}

}  // TEST_SUITE
