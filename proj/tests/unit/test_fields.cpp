#include "doctest.h"
#include "helpers.hpp"
#include "tgr/wedder.hpp"

using namespace tgr;

namespace {

RatPoly poly(std::vector<long> c) {
    RatPoly r;
    for (long x : c) r.push_back(Rat(x));
    return r;
}

bool is_square(const Rat& x) {
    return sgn(x) >= 0 && mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("make_pi") {
    AmbientField F1(3, 1), F2(3, 2), F3(3, 3);
    CHECK(make_pi(F1, 1) == F1.from_rat(3));
    CHECK(make_pi(F2, 2) == (F2.zeta_pow(1) - F2.one()) * (F2.zeta_pow(8) - F2.one()));
    // relative norm over the conjugates zeta -> zeta^{1 + 9k}
    const AElem pi3 = make_pi(F3, 3);
    AElem nrm = F3.one();
    for (long k = 0; k < 3; ++k) nrm = nrm * F3.galois(pi3, 1 + 9 * k);
    CHECK(nrm == make_pi(F3, 2));
    CHECK_THROWS_AS(AmbientField(4, 2), Error);
}

TEST_CASE("minimal polynomials") {
    AmbientField F(3, 2);
    CHECK(minimal_polynomial_q(F, make_pi(F, 2)) == poly({-3, 9, -6, 1}));
    CHECK(minimal_polynomial_q(F, F.zeta_pow(1)) == poly({1, 0, 0, 1, 0, 0, 1}));
    AmbientField F3(3, 3);
    const RatPoly m = minimal_polynomial_q(F3, make_pi(F3, 3));
    REQUIRE(m.size() == 10);
    CHECK(m[9] == 1);
    for (std::size_t k = 0; k < 9; ++k) CHECK(val_p(m[k], 3) >= Valuation(1));
    CHECK(abs(m[0]) == 3);
}

TEST_CASE("Galois generator for p = 3, n = 2") {
    const ExtensionTower& T = *test_tower(3, 2);
    CHECK(T.sigma_exponent() == 4);
    CHECK(to_rat_matrix(T.sigmadot()) == int_matrix({{1, 0, 0}, {6, -5, 1}, {24, -21, 4}}));
    KMatrix s = T.sigmadot(), acc = s * s * s;
    CHECK(to_rat_matrix(acc) == RatMatrix::identity(3));
    const AmbientField& F = T.ambient();
    const AElem d = F.galois(T.t_amb(), T.sigma_exponent()) - T.t_amb();
    CHECK(T.val_at(d, Level::L) == Valuation(2));
}

TEST_CASE("valuations at the tower levels") {
    const ExtensionTower& T = *test_tower(3, 2);
    CHECK(T.val_at(T.ambient().from_rat(3), Level::K) == Valuation(1));
    CHECK(T.discriminant_valuation() == 4);
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
        const ExtensionTower& U = *test_tower(p, n);
        CHECK(U.val_at(U.s_amb(), Level::K) == Valuation(1));
        CHECK(U.val_at(U.t_amb(), Level::L) == Valuation(1));
    }
}

TEST_CASE("trace and norm for p = 3, n = 2") {
    const ExtensionTower& T = *test_tower(3, 2);
    const AmbientField& F = T.ambient();
    CHECK(T.trace_norm(F.one(), Level::L, Level::K, false) == F.from_rat(3));
    // Newton: p_1 = 6 from X^3 - 6X^2 + 9X - 3
    CHECK(T.trace_norm(T.t_amb(), Level::L, Level::K, false) == F.from_rat(6));
    CHECK(T.trace_norm(T.t_amb(), Level::L, Level::K, true) == F.from_rat(3));
    // p_2 = 6^2 - 2*9 = 18
    CHECK(T.trace_norm(T.t_amb() * T.t_amb(), Level::L, Level::K, false) == F.from_rat(18));
    CHECK_THROWS_AS(T.trace_norm(F.one(), Level::K, Level::L, false), Error);
}

TEST_CASE("parameter table") {
    ParameterRow r = parameter_table(3, 2, TowerKind::cyclotomic_pi);
    CHECK(r.b == 1);
    CHECK(r.b_under == 0);
    CHECK(r.b_bar == 1);
    CHECK(r.b - r.b_under == 1);
    for (long p : {3, 5, 7})
        for (long n : {2, 3, 4}) {
            ParameterRow th = parameter_table(p, n, TowerKind::cyclotomic_theta);
            CHECK(th.b_bar == p - 1);
            ParameterRow pi = parameter_table(p, n, TowerKind::cyclotomic_pi);
            ParameterRow lt = parameter_table(p, n, TowerKind::lubin_tate_formula);
            CHECK(pi.b == lt.b);
            CHECK(pi.b_under == lt.b_under);
        }
}

TEST_CASE("constructed towers match the closed forms") {
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
        CAPTURE(p);
        CAPTURE(n);
        const ExtensionTower& T = *test_tower(p, n);
        const ParameterRow r = parameter_table(p, n, TowerKind::cyclotomic_pi);
        const AElem d = T.ambient().galois(T.t_amb(), T.sigma_exponent()) - T.t_amb();
        const long b = T.val_at(d, Level::L).value() - 1;
        CHECK(b == r.b);
        CHECK(T.b() == r.b);
        CHECK(T.b_bar() == r.b_bar);
        CHECK(T.b_under() == r.b_under);
        CHECK(T.different_valuation() == (p - 1) * (1 + b));
        CHECK(T.discriminant_valuation() == (p - 1) * (1 + b));
        // mu_t = X^g mod s, constant term -s times a unit, and the valuation bound on e_j
        const auto& mu = T.mu_t();
        const KVal v = T.val_s();
        CHECK(mu[static_cast<std::size_t>(p)] == KElem(1));
        for (long j = 0; j < p; ++j) CHECK(v(mu[static_cast<std::size_t>(j)]) >= Valuation(1));
        CHECK(v(mu[0]) == Valuation(1));
        for (long j = 1; j < p; ++j) CHECK(v(mu[static_cast<std::size_t>(j)]) >= Valuation(1 + b - ul(b + j, p)));
    }
}

TEST_CASE("mu_t over Q for p = 3, n = 2") {
    const ExtensionTower& T = *test_tower(3, 2);
    const auto& mu = T.mu_t();
    CHECK(mu[0] == KElem(-3));
    CHECK(mu[1] == KElem(9));
    CHECK(mu[2] == KElem(-6));
}

TEST_CASE("the discriminant-4 cubic pair has different splitting behaviour") {
    const RatPoly a = poly({-3, 9, -6, 1}), b = poly({48, -18, 3, 1});
    CHECK(val_p(poly_discriminant(a), 3) == Valuation(4));
    CHECK(val_p(poly_discriminant(b), 3) == Valuation(4));
    CHECK(is_square(poly_discriminant(a)));
    CHECK_FALSE(is_square(poly_discriminant(b)));
    CHECK(b_from_discriminant(3, 4) == 1);
}

TEST_CASE("number field arithmetic") {
    NumberField K(3, poly({-3, 0, 1}), "r");
    const std::vector<Rat> r = {Rat(0), Rat(1)};
    CHECK(K.mul(r, r) == std::vector<Rat>{Rat(3), Rat(0)});
    CHECK(K.val(r) == Valuation(1));
    CHECK(K.mul(r, K.inv(r)) == std::vector<Rat>{Rat(1), Rat(0)});
    CHECK_THROWS_AS(NumberField(3, poly({1, 0, 1}), "x"), Error);
}

}  // TEST_SUITE
