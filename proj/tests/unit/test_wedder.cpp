#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tgr/wedder.hpp"

using namespace tgr;

TEST_SUITE("wedder") {

TEST_CASE("split") {
    IndexSplit a = split(5, 3), b = split(-1, 3), c = split(0, 3);
    CHECK(a.under == 1);
    CHECK(a.over == 2);
    CHECK(b.under == -1);
    CHECK(b.over == 2);
    CHECK(c.under == 0);
    CHECK(c.over == 0);
    CHECK_THROWS_AS(split(1, 0), Error);
}

TEST_CASE("epsilon basis for g = 3") {
    const ExtensionTower& T = *test_tower(3, 2);
    RatMatrix e21(3, 3);
    e21(2, 0) = 3;
    CHECK(to_rat_matrix(eps(2, 1, T)) == e21);
    CHECK(eps(1, 1, T) * eps(2, 1, T) == eps(1, 2, T));
    CHECK((eps(0, 1, T) * eps(2, 1, T)).is_zero_matrix());
}

TEST_CASE("Wedderburn images for p = 3, n = 2") {
    const ExtensionTower& T = *test_tower(3, 2);
    const RatMatrix tdot = int_matrix({{0, 1, 0}, {0, 0, 1}, {3, -9, 6}});
    const RatMatrix ddot = int_matrix({{0, 1, 0}, {0, 0, 1}, {3, 0, 0}});
    CHECK(to_rat_matrix(wedderburn_image(Generator::t, T)) == tdot);
    CHECK(to_rat_matrix(wedderburn_image(Generator::sigma, T)) == int_matrix({{1, 0, 0}, {6, -5, 1}, {24, -21, 4}}));
    CHECK(to_rat_matrix(ddot_power(1, T)) == ddot);
    const RatMatrix diff = tdot - ddot;
    CHECK(diff == int_matrix({{0, 0, 0}, {0, 0, 0}, {0, -9, 6}}));
    CHECK(in_lambda(to_kmatrix(Rat(1, 3) * diff), T));
    CHECK_THROWS_AS(wedderburn_image(Generator::u, T), Error);
}

TEST_CASE("powers of tddot") {
    const ExtensionTower& T = *test_tower(3, 2);
    CHECK(to_rat_matrix(ddot_power(0, T)) == RatMatrix::identity(3));
    CHECK(to_rat_matrix(ddot_power(3, T)) == Rat(3) * RatMatrix::identity(3));
    for (long j = 0; j < 7; ++j) CHECK(ddot_power(j, T) * ddot_power(1, T) == ddot_power(j + 1, T));
}

TEST_CASE("tdot in epsilon coordinates") {
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
        CAPTURE(p);
        const ExtensionTower& T = *test_tower(p, n);
        const long g = T.g();
        const auto& e = T.mu_t();
        GammaElement want = ddot_power(1, T);
        for (long j = 1; j <= g - 2; ++j)
            want = want - (e[static_cast<std::size_t>(j)] / T.s()) * eps(g - 1, j + 1, T);
        want = want - e[static_cast<std::size_t>(g - 1)] * eps(g - 1, 0, T);
        CHECK(T.tdot() == want);
        // tdot - tddot in tddot^{1 + b(g-1)} Lambda
        CHECK(ideal_membership(T.tdot() - ddot_power(1, T), 1 + T.b() * (g - 1), T));
    }
}

TEST_CASE("ideal membership") {
    const ExtensionTower& T = *test_tower(3, 2);
    const GammaElement one = ddot_power(0, T);
    CHECK(ideal_membership(one, 0, T));
    CHECK_FALSE(ideal_membership(one, 1, T));
    CHECK(ideal_membership(T.tdot() - ddot_power(1, T), 3, T));
    // tdot Lambda: lower triangle including the diagonal in 3S
    std::mt19937_64 rng(7);
    for (int c = 0; c < 300; ++c) {
        RatMatrix f(3, 3);
        bool want = true;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                long x = std::uniform_int_distribution<long>(-4, 4)(rng);
                if (i > j) x *= 3;
                f(i, j) = x;
                if (i >= j && x % 3 != 0) want = false;
            }
        CHECK(ideal_membership(to_kmatrix(f), 1, T) == want);
    }
}

TEST_CASE("tddot Lambda = Lambda tddot = tdot Lambda = Lambda tdot") {
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}}) {
        const ExtensionTower& T = *test_tower(p, n);
        const auto lam = lambda_basis(T);
        std::vector<GammaElement> a, b, c, d;
        for (const auto& x : lam) {
            a.push_back(ddot_power(1, T) * x);
            b.push_back(x * ddot_power(1, T));
            c.push_back(T.tdot() * x);
            d.push_back(x * T.tdot());
        }
        const ZpLattice La = s_span(a, T);
        CHECK(La == s_span(b, T));
        CHECK(La == s_span(c, T));
        CHECK(La == s_span(d, T));
    }
}

TEST_CASE("colengths") {
    const ExtensionTower& T = *test_tower(3, 2);
    CHECK(colength(lambda_basis(T), gamma_basis(T), T) == 3);
    CHECK(colength(lambda_basis(T), lambda_basis(T), T) == 0);
    CHECK_THROWS_AS(colength(gamma_basis(T), lambda_basis(T), T), Error);
}

TEST_CASE("epsilon coordinates round trip") {
    std::mt19937_64 rng(11);
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {3, 3}}) {
        const ExtensionTower& T = *test_tower(p, n);
        for (int c = 0; c < 20; ++c) {
            KMatrix a(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j)
                    a(i, j) = KElem(Rat(std::uniform_int_distribution<long>(-9, 9)(rng), 1 + c % 4)) * T.s_pow(c % 3);
            CHECK(eps_coords(from_eps_coords(a, T), T) == a);
            const GammaElement f = from_eps_coords(a, T);
            CHECK(from_restricted_coords(restricted_coords(f, T), T) == f);
        }
    }
}

}  // TEST_SUITE
