#include "tgr/suites.hpp"

#include <chrono>
#include <sstream>

#include "json.hpp"
#include "tgr/appendix.hpp"
#include "tgr/nebe.hpp"

namespace tgr {

const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::evidence: return "evidence";
    }
    return "fail";
}

bool Report::passed() const {
    for (const auto& c : checks)
        if (c.status == Status::fail) return false;
    return true;
}

namespace {

class Builder {
public:
    Builder(std::string command, const RunOptions& o) : t0_(std::chrono::steady_clock::now()) {
        r_.command = std::move(command);
        r_.params = {{"p", o.p}, {"n", o.n}, {"threads", static_cast<long>(o.threads)}, {"force", o.force}};
    }
    void param(const std::string& k, ParamValue v) { r_.params.emplace_back(k, std::move(v)); }
    void add(const CheckLine& c, const std::string& prefix = "") {
        r_.checks.push_back(ReportCheck{prefix + c.name, c.ok ? Status::pass : Status::fail, c.expected, c.actual, c.detail});
    }
    void add(const std::vector<CheckLine>& cs, const std::string& prefix = "") {
        for (const auto& c : cs) add(c, prefix);
    }
    void add(std::string name, Status s, std::string exp, std::string act, std::string detail = "") {
        r_.checks.push_back(ReportCheck{std::move(name), s, std::move(exp), std::move(act), std::move(detail)});
    }
    void note(std::string s) { r_.notes.push_back(std::move(s)); }
    Report finish() {
        r_.elapsed_ms = static_cast<long>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0_).count());
        return std::move(r_);
    }

private:
    Report r_;
    std::chrono::steady_clock::time_point t0_;
};

Status st(bool ok) { return ok ? Status::pass : Status::fail; }

std::string mod_str(const ModuleDescription& m, const ExtensionTower& T) { return m.str(T.ring_name(), T.unif_name()); }

void ring_checks(Builder& b, const ExtensionTower& T, const std::string& prefix) {
    ExtRingPresentation P = ring_presentation(T, 6);
    b.note(P.text);
    b.add(prefix + "presentation", Status::pass, "", P.text, "b = " + std::to_string(P.b) + ", b_bar = " +
                                                                std::to_string(P.b_bar) + ", ul(b) = " + std::to_string(P.b_under));
    for (std::size_t d = 0; d < P.ext_table.size(); ++d) {
        ModuleDescription f = ext_formula(T.p(), T.b(), static_cast<long>(d));
        b.add(prefix + "Ext^" + std::to_string(d) + " Smith = formula", st(f == P.ext_table[d]), mod_str(f, T),
              mod_str(P.ext_table[d], T));
    }
    for (const auto& g : P.odd)
        b.add(prefix + "odd generator h" + std::to_string(g.j) + "^(1)", Status::pass, "",
              g.annihilator ? "annihilated by " + unif_power_str(T.unif_name(), g.annihilator) : "vanishes");
    b.add(prefix + "even generator h0^(2)", Status::pass, "",
          "annihilated by " + unif_power_str(T.unif_name(), P.even_annihilator));
}

void ag11_checks(Builder& b, const ExtensionTower& T, const std::string& prefix) {
    const long p = T.p();
    ResolutionMaps R = build_resolution(T);
    const long quot = T.b() - T.b_under();
    for (long j = 0; j < p; ++j) {
        if (j == T.b_bar()) continue;
        Lift L = lift_cocycle(T, j);
        std::string exp, act;
        bool ok = true;
        for (long k = 0; k < p; ++k) {
            if (k == T.b_bar()) continue;
            StructureConstant sc = structure_constant(p, T.b(), j, k);
            auto c = ext2_coefficient(T, R, L.nu.row(static_cast<std::size_t>(k)));
            std::string e1 = sc.present ? std::to_string(sc.unit) + "*" + unif_power_str(T.unif_name(), sc.exponent) : "0";
            std::string a1 = "not a cocycle";
            if (c) {
                auto [v, u] = split_unit(*c, T);
                a1 = v.is_infinite() ? "0" : std::to_string(u) + "*" + unif_power_str(T.unif_name(), v.value());
            }
            exp += (exp.empty() ? "" : " ") + e1;
            act += (act.empty() ? "" : " ") + a1;
            ok = ok && e1 == a1;
        }
        b.add(prefix + "products chi_" + std::to_string(j) + " chi_k from nu_" + std::to_string(j), st(ok), exp, act,
              "cochain-level values before reduction mod " + unif_power_str(T.unif_name(), quot));
    }
    // graded commutativity in Ext^2 = S/s^quot
    bool comm = true;
    for (long j = 0; j < p; ++j)
        for (long k = 0; k < p; ++k) {
            if (j == T.b_bar() || k == T.b_bar()) continue;
            StructureConstant a = structure_constant(p, T.b(), j, k), c = structure_constant(p, T.b(), k, j);
            if (a.present != c.present) comm = false;
            if (!a.present) continue;
            // s^e (u_jk + u_kj) with u's units mod p: p = s^{val_s p} times a unit
            if ((a.unit + c.unit) % p != 0) comm = false;
            if (a.exponent != c.exponent) comm = false;
            if (!(a.zero_in_quotient || T.e() + a.exponent >= quot)) comm = false;
        }
    b.add(prefix + "odd products anticommute in Ext^2", st(comm), "true", comm ? "true" : "false");
    std::string nonzero;
    for (long j = 0; j < p; ++j)
        for (long k = j; k < p; ++k) {
            if (j == T.b_bar() || k == T.b_bar()) continue;
            StructureConstant sc = structure_constant(p, T.b(), j, k);
            if (sc.present && !sc.zero_in_quotient)
                nonzero += (nonzero.empty() ? "" : ", ") + std::string("h") + std::to_string(j) + "h" + std::to_string(k) +
                           " = " + std::to_string(sc.unit) + " " + unif_power_str(T.unif_name(), sc.exponent) + " h0^(2)";
        }
    b.add(prefix + "nonzero odd products", Status::pass, "", nonzero.empty() ? "none" : nonzero);

    if (p == 3 && T.n() == 2) {
        ExtRingPresentation P = ring_presentation(T, 2);
        const std::string want = "Z_(3)[h1,h2]/(3h1,3h2,h1^2)";
        b.add(prefix + "presentation (p = 3, n = 2)", st(P.text == want), want, P.text);
        auto M = [](std::vector<std::vector<long>> rows, std::vector<std::vector<long>> den = {}) {
            RatMatrix m(3, 3);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) m(i, j) = Rat(rows[i][j], den.empty() ? 1 : den[i][j]);
            return m;
        };
        const Lift l0 = lift_cocycle(T, 0), l2 = lift_cocycle(T, 2);
        const RatMatrix nu0 = M({{0, 0, 0}, {0, 0, 1}, {3, 0, 0}}, {{1, 1, 1}, {1, 1, 2}, {1, 1, 1}});
        const RatMatrix mu0 = RatMatrix::identity(3);
        const RatMatrix nu2 = M({{3, 0, 0}, {0, 3, 0}, {0, 0, 0}}, {{2, 1, 1}, {1, 1, 1}, {1, 1, 1}});
        const RatMatrix mu2 = M({{0, 0, 1}, {3, 0, 0}, {0, 3, 0}});
        auto eq = [&](const char* name, const GammaElement& x, const RatMatrix& y) {
            const bool ok = to_rat_matrix(x) == y;
            b.add(prefix + name + " equals the reference lift", st(ok), "equal", ok ? "equal" : "different");
        };
        eq("nu_0", l0.nu, nu0);
        eq("mu_0", l0.mu, mu0);
        eq("nu_2", l2.nu, nu2);
        eq("mu_2", l2.mu, mu2);
    }
}

TowerPtr tower(const RunOptions& o) {
    if (o.n > 3 && !o.force)
        fail(ErrorKind::resource, "towers with n > 3 work in degree p^(n-1)(p-1); pass --force to build them");
    if (o.n == 3 && o.p > 3 && !o.force)
        fail(ErrorKind::resource, "n = 3 is wired for p = 3; pass --force for larger p");
    return ExtensionTower::cyclotomic(o.p, o.n);
}

void nebe_checks(Builder& b, const std::string& which, const RunOptions& o) {
    NebeReport r = which == "nd3" ? verify_nd3(o.p, o.force) : verify_nd7(o.p, 4, o.force);
    b.add(r.checks, which == "nd3" ? "nd3: " : "nd7: ");
}

}  // namespace

Report run_ring(const RunOptions& o) {
    require_odd_prime(o.p);
    Builder b("ring", o);
    TowerPtr T = tower(o);
    ring_checks(b, *T, "");
    return b.finish();
}

Report run_verify(const std::string& target, const RunOptions& o) {
    require_odd_prime(o.p);
    static const std::vector<std::string> targets = {"ft16", "resolution", "ag11", "nd3", "nd7", "all"};
    if (std::find(targets.begin(), targets.end(), target) == targets.end())
        fail(ErrorKind::usage, "unknown verify target " + target);
    Builder b("verify", o);
    b.param("target", target);
    const bool all = target == "all";
    if (all || target == "ft16" || target == "resolution" || target == "ag11") {
        TowerPtr T = tower(o);
        if (all || target == "ft16") b.add(verify_ft16(*T).checks, all ? "ft16: " : "");
        if (all || target == "resolution") b.add(build_resolution(*T).checks, all ? "resolution: " : "");
        if (all || target == "ag11") {
            ring_checks(b, *T, all ? "ag11: " : "");
            ag11_checks(b, *T, all ? "ag11: " : "");
        }
    }
    if (target == "nd3" || target == "nd7") nebe_checks(b, target, o);
    if (all) {
        if (o.p <= 5 || o.force) {
            nebe_checks(b, "nd3", o);
            nebe_checks(b, "nd7", o);
        } else {
            b.note("nd3/nd7 skipped for p > 5 (pass --force to run them)");
        }
    }
    return b.finish();
}

Report run_appendix(const std::string& check, const RunOptions& o) {
    require_odd_prime(o.p);
    static const std::vector<std::string> checks = {"conjecture", "colengths", "matrices", "all"};
    if (std::find(checks.begin(), checks.end(), check) == checks.end())
        fail(ErrorKind::usage, "unknown appendix check " + check);
    Builder b("appendix", o);
    b.param("check", check);
    const bool all = check == "all";
    const bool lattice_ok = o.p <= 5 || o.force;
    if ((check == "colengths" || check == "matrices") && !lattice_ok)
        fail(ErrorKind::resource, "appendix lattice work at p = " + std::to_string(o.p) +
                                      " runs in dimension p^4 (hours at p = 7); pass --force to run it");
    if (check == "matrices" && o.p != 3 && o.p != 5) fail(ErrorKind::usage, "reduced matrices are tabulated for p = 3 and p = 5 only");

    AppendixTower A = AppendixTower::build(o.p, o.force);
    b.add(A.sanity_checks(), "tower: ");
    if (all || check == "conjecture") {
        ConjectureReport c = check_conjecture_i(A, o.threads);
        // the inequality is known for p in {3, 5, 7}; beyond that a failure is only evidence
        const bool expected = o.p <= 7;
        for (const auto& row : c.rows) {
            Status s = row.holds ? Status::evidence : (expected ? Status::fail : Status::evidence);
            b.add("conjecture (i): tau = zeta -> zeta^" + std::to_string(row.tau_exponent), s, ">= " + std::to_string(c.bound),
                  row.achieved.str());
        }
        b.add("conjecture (i) for all tau", c.holds_for_all ? Status::evidence : (expected ? Status::fail : Status::evidence),
              "holds", c.holds_for_all ? "holds" : "fails", std::to_string(c.rows.size()) + " values of tau");
    }
    TieModules mods;
    bool have_mods = false;
    if ((all && lattice_ok) || check == "colengths") {
        ColengthChain ch = colength_chain(A, o.threads, o.force, &mods);
        have_mods = true;
        const long p = o.p, g = p * p;
        std::ostringstream exp, act;
        act << "(" << ch.xi_in_de << "," << ch.de_in_d << "," << ch.d_in_lambda << "," << ch.lambda_in_gamma << ")";
        const bool tabulated = p == 3 || p == 5;
        if (p == 3) exp << "(0,18,45,36)";
        if (p == 5) exp << "(100,100,350,300)";
        if (tabulated) b.add("colength chain Xi < Lambda^{D,E} < Lambda^D < Lambda < Gamma", st(exp.str() == act.str()), exp.str(), act.str());
        else b.add("colength chain Xi < Lambda^{D,E} < Lambda^D < Lambda < Gamma", Status::evidence, "", act.str());
        b.add("total colength = p^2 (p^2 + (p^2 - p - 2)/2)", st(ch.total() == ch.formula), std::to_string(ch.formula),
              std::to_string(ch.total()));
        b.add("colength(Gamma/Lambda) = g(g-1)/2", st(ch.lambda_in_gamma == g * (g - 1) / 2), std::to_string(g * (g - 1) / 2),
              std::to_string(ch.lambda_in_gamma));
        b.add("Xi inside Lambda^{D,E}", st(ch.xi_contained), "true", ch.xi_contained ? "true" : "false");
        b.add("working precision covers Xi", st(ch.exact), "true", ch.exact ? "true" : "false",
              "Xi contains p^(B-1) Lambda with B = " + std::to_string(mods.precision));
    }
    if ((all && (o.p == 3 || o.p == 5)) || check == "matrices") {
        AppendixReport r = reduced_matrices(A, o.threads, have_mods ? &mods : nullptr);
        b.add(r.checks, all ? "matrices: " : "");
    }
    if (all && !lattice_ok) b.note("colengths/matrices skipped for p > 5 (pass --force to run them)");
    return b.finish();
}

Report run_oracle(const std::string& method, const RunOptions& o) {
    require_odd_prime(o.p);
    static const std::vector<std::string> methods = {"classical", "bar", "lift", "all"};
    if (std::find(methods.begin(), methods.end(), method) == methods.end())
        fail(ErrorKind::usage, "unknown oracle method " + method);
    if (method == "bar" && o.p != 3 && !o.force)
        fail(ErrorKind::resource, "the bar complex is restricted to p = 3 by its size guard");
    Builder b("oracle", o);
    b.param("method", method);
    const bool all = method == "all";
    TowerPtr T = tower(o);
    if (all || method == "classical") b.add(oracle_classical(T, 6).checks, all ? "classical: " : "");
    if (all || method == "lift") b.add(oracle_lift(*T).checks, all ? "lift: " : "");
    if (method == "bar" || (all && (o.p == 3 || o.force))) b.add(oracle_bar(T, 3).checks, all ? "bar: " : "");
    if (all && o.p != 3 && !o.force) b.note("bar oracle skipped for p != 3 (size guard)");
    return b.finish();
}

std::string report_json(const Report& r, bool timing) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) std::visit([&, &k = k](const auto& x) { params[k] = x; }, v);
    j["params"] = params;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json x;
        x["name"] = c.name;
        x["status"] = to_string(c.status);
        x["expected"] = c.expected;
        x["actual"] = c.actual;
        x["detail"] = c.detail;
        cs.push_back(std::move(x));
    }
    j["checks"] = cs;
    j["elapsed_ms"] = timing ? r.elapsed_ms : 0;
    return j.dump(2) + "\n";
}

std::string report_text(const Report& r, bool timing) {
    std::ostringstream os;
    os << r.command;
    for (const auto& [k, v] : r.params) {
        os << " " << k << "=";
        std::visit([&](const auto& x) {
            using X = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<X, bool>) os << (x ? "true" : "false");
            else os << x;
        }, v);
    }
    os << "\n";
    for (const auto& n : r.notes) os << "  " << n << "\n";
    long counts[3] = {0, 0, 0};
    for (const auto& c : r.checks) {
        ++counts[static_cast<int>(c.status)];
        os << "[" << to_string(c.status) << "] " << c.name;
        if (!c.expected.empty() || !c.actual.empty()) {
            os << ": ";
            if (!c.expected.empty()) os << "expected " << c.expected << ", ";
            os << "got " << c.actual;
        }
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
    }
    os << counts[0] << " pass, " << counts[1] << " fail, " << counts[2] << " evidence";
    if (timing) os << "; " << r.elapsed_ms << " ms";
    os << "\n";
    return os.str();
}

}  // namespace tgr
