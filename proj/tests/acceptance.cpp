// One line per acceptance criterion. Exit status is 0 only if every line passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "support/props.hpp"
#include "tgr/appendix.hpp"
#include "tgr/nebe.hpp"
#include "tgr/oracle.hpp"

using namespace tgr;

namespace {

// runtime limits in milliseconds
constexpr long kGoldenMs = 1000;
constexpr long kTiesMs = 1000;
constexpr long kSmallTowerMs = 5000;    // (3,2) and (5,2)
constexpr long kP7TowerMs = 60000;      // (7,2)
constexpr long kN3TowerMs = 120000;     // (3,3)
constexpr long kRingMs = 5000;
constexpr long kOracleMs = 60000;
constexpr long kNebeMs = 30000;
constexpr long kConjectureSmallMs = 300000;  // p = 3 and 5 together
constexpr long kConjectureP7Ms = 3600000;
constexpr long kPropertiesMs = 60000;
constexpr long kPropertyCases = 1000;
constexpr std::uint64_t kPropertySeed = 0x5eed2026;

using Clock = std::chrono::steady_clock;

long since(Clock::time_point t0) {
    return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count());
}

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, long ms, const std::string& budget) {
    std::printf("%s criterion %d: %s [%ld ms; %s]%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), ms, budget.c_str(),
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
}

bool all_ok(const std::vector<CheckLine>& cs, std::string* first = nullptr) {
    for (const auto& c : cs)
        if (!c.ok) {
            if (first) *first = c.name + ": expected " + c.expected + ", got " + c.actual;
            return false;
        }
    return true;
}

RatMatrix ints(std::vector<std::vector<long>> rows, long den_row = -1, long den_col = -1, long den = 1) {
    RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = Rat(rows[i][j], static_cast<long>(i) == den_row && static_cast<long>(j) == den_col ? den : 1);
    return m;
}

void golden_matrices() {
    const auto t0 = Clock::now();
    Outcome o;
    TowerPtr T = ExtensionTower::cyclotomic(3, 2);
    const RatMatrix tdot = to_rat_matrix(wedderburn_image(Generator::t, *T));
    const RatMatrix sdot = to_rat_matrix(wedderburn_image(Generator::sigma, *T));
    const RatMatrix tdd = to_rat_matrix(ddot_power(1, *T));
    o.require(tdot == ints({{0, 1, 0}, {0, 0, 1}, {3, -9, 6}}), "tdot");
    o.require(sdot == ints({{1, 0, 0}, {6, -5, 1}, {24, -21, 4}}), "sigmadot");
    o.require(tdd == ints({{0, 1, 0}, {0, 0, 1}, {3, 0, 0}}), "tddot");
    o.require(in_lambda(to_kmatrix(Rat(1, 3) * (tdot - tdd)), *T), "tdot - tddot not in 3 Lambda");
    const long ms = since(t0);
    o.require(ms < kGoldenMs, "over time");
    report(1, "golden tdot, sigmadot, tddot and tdot - tddot in 3 Lambda (p = 3, n = 2)", o, ms, "limit 1000 ms");
}

void tie_system() {
    const auto t0 = Clock::now();
    Outcome o;
    TowerPtr T = ExtensionTower::cyclotomic(3, 2);
    auto text = [&](const TieSystem& s) {
        std::string out;
        long j = -1;
        for (const auto& c : s.conditions) {
            if (j >= 0) out += c.j == j ? ", " : "; ";
            j = c.j;
            out += c.str(*T);
        }
        return out;
    };
    const std::string want0 =
        "a_{0,0} in 3^0 S, a_{0,0} - a_{1,0} in 3^1 S, a_{0,0} - 2 a_{1,0} + a_{2,0} in 3^1 S; "
        "a_{0,1} in 3^0 S, a_{0,1} - a_{1,1} in 3^0 S, a_{0,1} - 2 a_{1,1} + a_{2,1} in 3^1 S; "
        "a_{0,2} in 3^0 S, a_{0,2} - a_{1,2} in 3^0 S, a_{0,2} - 2 a_{1,2} + a_{2,2} in 3^0 S";
    const std::string want1 =
        "a_{0,0} in 3^1 S, a_{0,0} - a_{1,0} in 3^1 S, a_{0,0} - 2 a_{1,0} + a_{2,0} in 3^1 S; "
        "a_{0,1} in 3^0 S, a_{0,1} - a_{1,1} in 3^1 S, a_{0,1} - 2 a_{1,1} + a_{2,1} in 3^1 S; "
        "a_{0,2} in 3^0 S, a_{0,2} - a_{1,2} in 3^0 S, a_{0,2} - 2 a_{1,2} + a_{2,2} in 3^1 S";
    const TieOrder d0 = lambda_D(*T, 0), d1 = lambda_D(*T, 1);
    o.require(text(d0.ties) == want0, "Lambda^D ties: " + text(d0.ties));
    o.require(text(d1.ties) == want1, "tdot Lambda^D ties: " + text(d1.ties));
    const long c = colength(d0.mu, lambda_basis(*T), *T);
    o.require(c == 3 && c == T->b() * 3 * 2 / 2, "colength " + std::to_string(c));
    const long ms = since(t0);
    o.require(ms < kTiesMs, "over time");
    report(2, "tie systems of Lambda^D and tdot Lambda^D, colength 3 (p = 3, n = 2)", o, ms, "limit 1000 ms");
}

void towers() {
    struct Case {
        long p, n, limit;
    };
    Outcome o3, o4;
    long total = 0;
    std::string budget;
    for (Case c : {Case{3, 2, kSmallTowerMs}, Case{5, 2, kSmallTowerMs}, Case{7, 2, kP7TowerMs}, Case{3, 3, kN3TowerMs}}) {
        const std::string tag = "(" + std::to_string(c.p) + "," + std::to_string(c.n) + ")";
        const auto t0 = Clock::now();
        TowerPtr T = ExtensionTower::cyclotomic(c.p, c.n);
        const FT16Report f = verify_ft16(*T);
        const ResolutionMaps R = build_resolution(*T);
        const long ms = since(t0);
        total += ms;
        budget += (budget.empty() ? "" : ", ") + tag + " " + std::to_string(ms) + "/" + std::to_string(c.limit);
        std::string why;
        o3.require(all_ok(f.checks, &why) && f.pass, tag + " " + why);
        const long b = T->b(), p = c.p;
        o3.require(f.colength_in_gamma == (1 + b) * p * (p - 1) / 2 &&
                       f.colength_in_gamma == p * T->discriminant_valuation() / 2,
                   tag + " colength " + std::to_string(f.colength_in_gamma));
        o3.require(ms < c.limit, tag + " over time");
        o4.require(all_ok(R.checks, &why) && R.exact, tag + " " + why);
        bool pairs = false;
        for (const auto& ch : R.checks)
            if (ch.name.find("colength") != std::string::npos) pairs = true;
        o4.require(pairs, tag + " no colength pair checks");
        o4.require((R.alpha * R.beta).is_zero_matrix() && (R.beta * R.alpha).is_zero_matrix(), tag + " alpha beta");
    }
    report(3, "Wedderburn factorization: membership and colength (1+b)p(p-1)/2 = p val_s(Delta)/2 for 4 towers", o3,
           total, "ms/limit " + budget);
    report(4, "resolution: alpha beta = beta alpha = 0 and exactness colengths for 4 towers", o4, total,
           "counted under criterion 3");
}

void ring_structure() {
    const auto t0 = Clock::now();
    Outcome o;
    TowerPtr T = ExtensionTower::cyclotomic(3, 2);
    const ExtRingPresentation P = ring_presentation(*T);
    o.require(P.text == "Z_(3)[h1,h2]/(3h1,3h2,h1^2)", "presentation " + P.text);
    const Lift l0 = lift_cocycle(*T, 0), l2 = lift_cocycle(*T, 2);
    o.require(to_rat_matrix(l0.nu) == ints({{0, 0, 0}, {0, 0, 1}, {3, 0, 0}}, 1, 2, 2), "nu_0");
    o.require(to_rat_matrix(l0.mu) == RatMatrix::identity(3), "mu_0");
    o.require(to_rat_matrix(l2.nu) == ints({{3, 0, 0}, {0, 3, 0}, {0, 0, 0}}, 0, 0, 2), "nu_2");
    o.require(to_rat_matrix(l2.mu) == ints({{0, 0, 1}, {3, 0, 0}, {0, 3, 0}}), "mu_2");
    const StructureConstant sc = structure_constant(3, 4, 0, 2);
    o.require(sc.present && sc.exponent == 2 && sc.unit == 1 && !sc.zero_in_quotient, "structure_constant(3,4,0,2)");
    const long ms = since(t0);
    o.require(ms < kRingMs, "over time");
    report(5, "ring presentation, lift matrices and the nonzero s^(p-1) product", o, ms, "limit 5000 ms");
}

void oracles() {
    const auto t0 = Clock::now();
    Outcome o;
    std::string why;
    for (auto [p, n] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
        const std::string tag = "(" + std::to_string(p) + "," + std::to_string(n) + ")";
        TowerPtr T = ExtensionTower::cyclotomic(p, n);
        const OracleReport r = oracle_classical(T, 6);
        o.require(all_ok(r.checks, &why) && r.checks.size() == 7, tag + " " + why);
    }
    const OracleReport bar = oracle_bar(ExtensionTower::cyclotomic(3, 2), 3);
    o.require(all_ok(bar.checks, &why) && bar.pass, "bar " + why);
    long lengths = 0, products = 0;
    for (const auto& c : bar.checks) {
        lengths += c.name.find("bar = classical") != std::string::npos;
        products += c.name.find("H^1 x H^1 product") != std::string::npos;
    }
    o.require(lengths == 4, "bar H^0..H^3 not all compared");
    o.require(products == 2, "bar cup products not compared");
    const long ms = since(t0);
    o.require(ms < kOracleMs, "over time");
    report(6, "classical = formula = Smith in degrees 0..6 for 4 towers; bar H^0..H^3 and cup products at (3,2)", o, ms,
           "limit 60000 ms");
}

void nebe() {
    const auto t0 = Clock::now();
    Outcome o;
    std::string why;
    const NebeReport r3 = verify_nd3(3);
    o.require(all_ok(r3.checks, &why) && r3.pass, why);
    o.require(r3.colength_xi == 27 && r3.colength_blocks == 27, "colengths");
    o.require(!r3.checks.empty() && r3.checks[0].actual == "Xi' | Xi' / tdot Xi' | Xi'", "block pattern");
    const NebeReport r7 = verify_nd7(3, 4);
    o.require(all_ok(r7.checks, &why) && r7.pass, why);
    const char* lengths[] = {"free-1", "1", "1", "1", "1"};
    for (int d = 0; d <= 4; ++d) {
        bool seen = false;
        for (const auto& c : r7.checks)
            if (c.name.find("degree " + std::to_string(d) + " length") != std::string::npos)
                seen = c.ok && c.expected == lengths[d] && c.actual == lengths[d];
        o.require(seen, "degree " + std::to_string(d));
    }
    const long ms = since(t0);
    o.require(ms < kNebeMs, "over time");
    report(7, "Nebe decomposition 27 = 27 with block pattern; Ext lengths degrees 0..4 and vanishing H^1 products (p = 3)", o,
           ms, "limit 30000 ms");
}

void appendix() {
    const auto start = Clock::now();
    Outcome o;
    std::string why;
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::ostringstream budget;

    auto t0 = Clock::now();
    const AppendixTower A3 = AppendixTower::build(3), A5 = AppendixTower::build(5);
    for (const AppendixTower* A : {&A3, &A5}) {
        const ConjectureReport c = check_conjecture_i(*A, threads);
        o.require(c.holds_for_all && c.bound == 2 * A->p() + 3 && static_cast<long>(c.rows.size()) == A->g(),
                  "conjecture p = " + std::to_string(A->p()));
    }
    long ms = since(t0);
    o.require(ms < kConjectureSmallMs, "conjecture p = 3, 5 over time");
    budget << "conjecture p=3,5 " << ms << "/" << kConjectureSmallMs;

    t0 = Clock::now();
    const ConjectureReport c7 = check_conjecture_i(AppendixTower::build(7), threads);
    ms = since(t0);
    o.require(c7.holds_for_all && c7.rows.size() == 49, "conjecture p = 7");
    o.require(ms < kConjectureP7Ms, "conjecture p = 7 over time");
    budget << ", p=7 " << ms << "/" << kConjectureP7Ms;

    t0 = Clock::now();
    struct Want {
        const AppendixTower* A;
        long a, b, c, d;
    };
    for (Want w : {Want{&A3, 0, 18, 45, 36}, Want{&A5, 100, 100, 350, 300}}) {
        const long p = w.A->p();
        TieModules mods;
        const ColengthChain ch = colength_chain(*w.A, threads, false, &mods);
        const std::string tag = "p = " + std::to_string(p);
        o.require(ch.xi_in_de == w.a && ch.de_in_d == w.b && ch.d_in_lambda == w.c && ch.lambda_in_gamma == w.d,
                  tag + " chain (" + std::to_string(ch.xi_in_de) + "," + std::to_string(ch.de_in_d) + "," +
                      std::to_string(ch.d_in_lambda) + "," + std::to_string(ch.lambda_in_gamma) + ")");
        o.require(ch.total() == p * p * (p * p + (p * p - p - 2) / 2) && ch.total() == ch.formula, tag + " total");
        o.require(ch.xi_contained && ch.exact, tag + " certification");
        const AppendixReport rm = reduced_matrices(*w.A, threads, &mods);
        o.require(all_ok(rm.checks, &why) && rm.pass, tag + " " + why);
    }
    ms = since(t0);
    budget << ", chains and congruences " << ms;
    report(8, "appendix: conjecture (i) for p = 3, 5, 7; chains (0,18,45,36), (100,100,350,300); reduced-matrix congruences",
           o, since(start), budget.str());
}

void properties() {
    const auto t0 = Clock::now();
    Outcome o;
    std::string counts;
    for (const auto& r : props::acceptance_suites(kPropertySeed, kPropertyCases)) {
        o.require(r.ok() && r.cases >= kPropertyCases, r.name + ": " + r.first_failure);
        counts += (counts.empty() ? "" : ", ") + std::to_string(r.cases);
    }
    const long ms = since(t0);
    o.require(ms < kPropertiesMs, "over time");
    report(9, "property suites (epsilon law, floor sums, mu-basis, closure, graded commutativity, tie pair), cases " + counts,
           o, ms, "limit 60000 ms");
}

// criteria 3 and 4 share one run
const std::vector<std::pair<const char*, std::function<void()>>> kCriteria = {
    {"1", golden_matrices}, {"2", tie_system}, {"3-4", towers},    {"5", ring_structure},
    {"6", oracles},         {"7", nebe},       {"8", appendix},    {"9", properties}};

}  // namespace

int main() {
    for (const auto& [id, run] : kCriteria) {
        try {
            run();
        } catch (const std::exception& e) {
            std::printf("FAIL criterion %s: uncaught %s\n", id, e.what());
            ++failures;
        }
    }
    std::printf("%d criteria failed\n", failures);
    return failures ? 1 : 0;
}
