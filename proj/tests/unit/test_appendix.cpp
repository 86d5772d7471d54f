#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "tgr/appendix.hpp"

using namespace tgr;

namespace {

const nlohmann::json& displayed_json() {
    static const nlohmann::json j = [] {
        std::ifstream in(TGR_TEST_DATA_DIR "/appendix_displayed.json");
        return nlohmann::json::parse(in);
    }();
    return j;
}

RatMatrix from_json(const std::string& key) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : displayed_json().at(key)) rows.push_back(r.get<std::vector<std::string>>());
    return rat_matrix(rows);
}

const AppendixTower& tower3() {
    static const AppendixTower A = AppendixTower::build(3);
    return A;
}

}  // namespace

TEST_SUITE("appendix") {

TEST_CASE("displayed matrices match the transcription") {
    for (const auto& d : displayed_matrices()) {
        const std::string key = std::string(d.name) + "_p" + std::to_string(d.p);
        CAPTURE(key);
        CHECK(displayed(d.p, d.name, false) == from_json(key));
    }
    REQUIRE(displayed_errata().size() == 1);
    const Erratum& e = displayed_errata()[0];
    CHECK(e.p == 5);
    const RatMatrix printed = displayed(5, e.name, false), fixed = displayed(5, e.name, true);
    CHECK(printed(static_cast<std::size_t>(e.row), static_cast<std::size_t>(e.col)) == Rat(e.printed));
    CHECK(fixed(static_cast<std::size_t>(e.row), static_cast<std::size_t>(e.col)) == Rat(e.corrected));
}

TEST_CASE("generators for p = 3") {
    const AppendixTower& A = tower3();
    CHECK(A.udot() == from_json("udot_p3"));
    CHECK(A.vdot() == from_json("vdot_p3"));
    CHECK(A.udot()(6, 0) == Rat(-2433, 7217));
    CHECK(A.udot()(6, 1) == Rat(3119, 1031));
    // the displayed sigma-dot is zeta -> zeta^2
    CHECK(A.galois_dot(2)(1, 0) == Rat(-24876, 7217));
    CHECK(A.galois_dot(2) == from_json("sigmadot_zeta2_p3"));
    for (const auto& c : A.sanity_checks()) CHECK_MESSAGE(c.ok, c.name);
}

TEST_CASE("valuations in the C_{p^2} tower") {
    for (long p : {3, 5}) {
        const AppendixTower A = AppendixTower::build(p);
        const AmbientField& F = A.ambient();
        CHECK(A.val_u(A.u()) == Valuation(1));
        CHECK(A.val_u(A.v()) == Valuation(p));
        CHECK(A.val_u(F.galois(A.u(), A.sigma_exponent()) - A.u()) == Valuation(2));
        CHECK(A.val_u(F.galois(A.v(), A.sigma_exponent()) - A.v()) == Valuation(1 + 2 * p));
        for (long r = 0; r < A.g(); ++r) CHECK(A.k(r) == A.val_u(F.pow(A.u(), r / p) * F.pow(A.v(), r % p)).value());
    }
}

TEST_CASE("conjecture (i)") {
    const ConjectureReport r3 = check_conjecture_i(tower3());
    CHECK(r3.bound == 9);
    REQUIRE(r3.rows.size() == 9);
    CHECK(r3.rows[0].achieved.is_infinite());
    CHECK(r3.holds_for_all);
    const ConjectureReport r5 = check_conjecture_i(AppendixTower::build(5), 2);
    CHECK(r5.rows.size() == 25);
    CHECK(r5.bound == 13);
    CHECK(r5.holds_for_all);
}

TEST_CASE("colength chain for p = 3") {
    const ColengthChain c = colength_chain(tower3());
    CHECK(c.xi_in_de == 0);
    CHECK(c.de_in_d == 18);
    CHECK(c.d_in_lambda == 45);
    CHECK(c.lambda_in_gamma == 36);
    CHECK(c.total() == 99);
    CHECK(c.formula == 9 * (9 + (9 - 3 - 2) / 2));
    CHECK(c.xi_contained);
    CHECK(c.exact);
}

TEST_CASE("reduced generators for p = 3") {
    const AppendixTower& A = tower3();
    CHECK(congruent_mod_ideal(A, A.udot(), displayed(3, "udot_mod6"), 6));
    CHECK(congruent_mod_ideal(A, A.udot(), displayed(3, "udot_mod3"), 3));
    CHECK(congruent_mod_ideal(A, A.vdot(), displayed(3, "vdot_mod15"), 15));
    CHECK(congruent_mod_ideal(A, A.vdot(), displayed(3, "vdot_mod12"), 12));
    std::string where;
    CHECK_FALSE(congruent_mod_ideal(A, A.udot(), displayed(3, "udot_mod3"), 6, &where));
    CHECK_FALSE(where.empty());
    // uddot is the cyclic shift with a single 3
    const RatMatrix ud = displayed(3, "udot_mod3");
    long threes = 0, ones = 0;
    for (const auto& e : ud.data()) {
        threes += e == 3;
        ones += e == 1;
    }
    CHECK(ones + threes == 9);
    const AppendixReport r = reduced_matrices(A);
    CHECK(r.pass);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.ok, c.name);
}

TEST_CASE("lambda bounds") {
    const AppendixTower& A = tower3();
    for (long r = 0; r < 9; ++r)
        for (long r2 = 0; r2 < 9; ++r2) {
            CHECK(lambda_bound(A, r, r2, 0) == (A.k(r) > A.k(r2) ? 1 : 0));
            CHECK(lambda_bound(A, r, r2, 9) == lambda_bound(A, r, r2, 0) + 1);
        }
}

TEST_CASE("p = 5 displayed v-dot blocks") {
    const RatMatrix v = displayed(5, "vdot_mod40");
    bool has25 = false, has75 = false, hasm50 = false, has5 = false;
    for (const auto& e : v.data()) {
        has25 = has25 || e == 25;
        has75 = has75 || e == 75;
        hasm50 = hasm50 || e == -50;
        has5 = has5 || e == 5;
    }
    CHECK(has25);
    CHECK(has75);
    CHECK(hasm50);
    CHECK(has5);
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(AppendixTower::build(11), Error);
    CHECK_THROWS_AS(AppendixTower::build(4), Error);
}

}  // TEST_SUITE
