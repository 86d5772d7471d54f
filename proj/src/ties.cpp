#include "tgr/ties.hpp"

#include <sstream>

namespace tgr {

GammaElement derivation_apply(const GammaElement& x, const GammaElement& f, long i) {
    if (i < 0) fail(ErrorKind::usage, "derivation power must be non-negative");
    const std::size_t g = x.rows();
    std::vector<GammaElement> xp{GammaElement::identity(g)};
    for (long h = 1; h <= i; ++h) xp.push_back(xp.back() * x);
    GammaElement r(g, g);
    for (long h = 0; h <= i; ++h) {
        Int c = binom(i, h);
        if (h % 2) c = -c;
        r = r + KElem(Rat(c)) * (xp[static_cast<std::size_t>(h)] * f * xp[static_cast<std::size_t>(i - h)]);
    }
    return r;
}

bool in_derivation_ring(const DerivationSpec& spec, const GammaElement& f, const ExtensionTower& T) {
    if (!in_lambda(f, T)) fail(ErrorKind::domain, "in_derivation_ring: element not in Lambda");
    const std::size_t k = spec.xs.size();
    if (spec.heights.size() != k || spec.lengths.size() != k) fail(ErrorKind::usage, "derivation spec: ragged tuples");
    std::vector<long> idx(k, 0);
    while (true) {
        GammaElement y = f;
        long m = 0;
        for (std::size_t q = k; q-- > 0;) {
            y = derivation_apply(spec.xs[q], y, idx[q]);
            m += idx[q] * spec.lengths[q];
        }
        if (!ideal_membership(y, m, T)) return false;
        std::size_t q = 0;
        while (q < k && ++idx[q] > spec.heights[q]) idx[q++] = 0;
        if (q == k) return true;
    }
}

std::string Tie::str(const ExtensionTower& T) const {
    const long g = T.g();
    std::ostringstream os;
    for (long h = 0; h <= l; ++h) {
        Int c = binom(l, h);
        bool neg = h % 2;
        if (h == 0) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        if (c != 1) os << c.get_str() << " ";
        os << "a_{" << ol(i + h, g) << "," << j << "}";
    }
    os << " in " << T.unif_name() << "^" << bound << " S";
    return os.str();
}

static Rat tie_sum_coeff(long l, long h) {
    Int c = binom(l, h);
    return Rat(h % 2 ? Int(-c) : c);
}

static KElem tie_value(const Tie& t, const KMatrix& a, long g) {
    KElem acc;
    for (long h = 0; h <= t.l; ++h) {
        const KElem& x = a(static_cast<std::size_t>(ol(t.i + h, g)), static_cast<std::size_t>(t.j));
        if (!is_zero(x)) acc += KElem(tie_sum_coeff(t.l, h)) * x;
    }
    return acc;
}

const Tie* TieSystem::violated(const GammaElement& f, const ExtensionTower& T) const {
    KMatrix a = eps_coords(f, T);
    const KVal v = T.val_s();
    static const Tie outside{-1, -1, -1, 0};
    for (const auto& x : a.data())
        if (v(x) < Valuation(0)) return &outside;
    for (const auto& t : conditions)
        if (v(tie_value(t, a, T.g())) < Valuation(t.bound)) return &t;
    return nullptr;
}

bool TieSystem::satisfied_by(const GammaElement& f, const ExtensionTower& T) const { return violated(f, T) == nullptr; }

bool operator==(const TieSystem& a, const TieSystem& b) {
    if (a.gamma != b.gamma || a.conditions.size() != b.conditions.size()) return false;
    for (std::size_t k = 0; k < a.conditions.size(); ++k) {
        const Tie &x = a.conditions[k], &y = b.conditions[k];
        if (x.i != y.i || x.j != y.j || x.l != y.l || x.bound != y.bound) return false;
    }
    return true;
}

TieSystem tie_system_for(long p, long b, long val_s_p, long gamma) {
    if (b < 1) fail(ErrorKind::precondition, "ties need b >= 1");
    if (gamma < 0) fail(ErrorKind::usage, "shift gamma must be non-negative");
    if (val_s_p < b - ul(b - gamma, p))
        fail(ErrorKind::precondition, "hypothesis val_s(p) >= b - ul(b - gamma) fails: " + std::to_string(val_s_p) +
                                          " < " + std::to_string(b - ul(b - gamma, p)));
    TieSystem sys;
    sys.gamma = gamma;
    for (long j = 0; j < p; ++j)
        for (long l = 0; l < p; ++l) sys.conditions.push_back(Tie{0, j, l, 1 + ul(b * l - j - 1 + gamma, p)});
    return sys;
}

TieOrder lambda_D(const ExtensionTower& T, long gamma, long m) {
    const long p = T.p();
    if (T.g() != p) fail(ErrorKind::precondition, "tie description needs g = p");
    TieOrder out;
    out.ties = tie_system_for(p, T.b(), T.e(), gamma);
    if (m != 0)
        for (auto& t : out.ties.conditions) t.i = m;
    for (long l = 0; l < p; ++l)
        for (long j = 0; j < p; ++j) {
            GammaElement x(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
            for (long i = 0; i < p; ++i) {
                Int c = binom(i, l);
                if (c != 0) x = x + KElem(Rat(c)) * eps(ol(i + m, p), j, T);
            }
            out.mu.push_back(T.s_pow(1 + ul(T.b() * l - j - 1 + gamma, p)) * x);
        }
    return out;
}

TieSystem full_tie_family(const ExtensionTower& T, long gamma) {
    TieSystem base = tie_system_for(T.p(), T.b(), T.e(), gamma);
    TieSystem sys;
    sys.gamma = gamma;
    for (long i = 0; i < T.g(); ++i)
        for (const auto& t : base.conditions) sys.conditions.push_back(Tie{i, t.j, t.l, t.bound});
    return sys;
}

long tie_colength(const TieSystem& sys, const ExtensionTower& T) {
    const std::size_t g = static_cast<std::size_t>(T.g()), e = static_cast<std::size_t>(T.e());
    const std::size_t dim = g * g * e;
    std::vector<ValuationCondition> conds;
    for (const auto& t : sys.conditions) {
        // val_s(sum_a c_a s^a) >= k  iff  v_p(c_a) >= ceil((k - a) / e) for every a
        for (std::size_t a = 0; a < e; ++a) {
            long bound = -floor_div(-(t.bound - static_cast<long>(a)), static_cast<long>(e));
            if (bound <= 0) continue;
            ValuationCondition c;
            c.coeffs.assign(dim, Rat(0));
            for (long h = 0; h <= t.l; ++h) {
                std::size_t r = static_cast<std::size_t>(ol(t.i + h, T.g()));
                c.coeffs[(r * g + static_cast<std::size_t>(t.j)) * e + a] += tie_sum_coeff(t.l, h);
            }
            c.bound = bound;
            conds.push_back(std::move(c));
        }
    }
    return condition_colength(T.p(), dim, conds);
}

ZpLattice xi_lattice(const ExtensionTower& T) {
    std::vector<GammaElement> gens;
    const GammaElement& sd = T.sigmadot();
    const GammaElement& td = T.tdot();
    GammaElement si = GammaElement::identity(static_cast<std::size_t>(T.g()));
    for (long i = 0; i < T.g(); ++i) {
        GammaElement x = si;
        for (long j = 0; j < T.g(); ++j) {
            gens.push_back(x);
            x = x * td;
        }
        si = si * sd;
    }
    return s_span(gens, T);
}

FT16Report verify_ft16(const ExtensionTower& T) {
    FT16Report rep;
    const long p = T.p(), b = T.b();
    auto add = [&](std::string name, bool ok, std::string exp, std::string act, std::string detail = "") {
        rep.checks.push_back(CheckLine{std::move(name), ok, std::move(exp), std::move(act), std::move(detail)});
    };
    add("b >= 1", b >= 1, ">= 1", std::to_string(b));
    add("val_s(p) >= b - ul(b)", T.e() >= b - ul(b, p), ">= " + std::to_string(b - ul(b, p)), std::to_string(T.e()));
    if (b < 1 || T.e() < b - ul(b, p)) {
        rep.pass = false;
        return rep;
    }
    TieOrder LD = lambda_D(T, 0);
    for (auto [name, gen] : {std::pair{"tdot", Generator::t}, std::pair{"sigmadot", Generator::sigma}}) {
        const Tie* bad = LD.ties.violated(wedderburn_image(gen, T), T);
        add(std::string(name) + " satisfies ties", bad == nullptr, "all ties", bad ? "violated" : "all ties",
            bad ? (bad->j < 0 ? "entry outside Lambda" : bad->str(T)) : "");
    }
    DerivationSpec spec{{T.tdot()}, {p - 1}, {1 + b}};
    add("sigmadot in Lambda((tdot),(p-1),(1+b))", in_derivation_ring(spec, T.sigmadot(), T), "true",
        in_derivation_ring(spec, T.sigmadot(), T) ? "true" : "false");
    bool mu_ok = true;
    for (const auto& m : LD.mu) mu_ok = mu_ok && LD.ties.satisfied_by(m, T);
    add("mu-basis satisfies ties", mu_ok, "true", mu_ok ? "true" : "false");

    const long exp_lambda = b * p * (p - 1) / 2;
    const long by_ties = tie_colength(LD.ties, T);
    const long by_basis = colength(LD.mu, lambda_basis(T), T);
    rep.colength_in_lambda = by_basis;
    rep.expected_in_lambda = exp_lambda;
    add("colength(Lambda^D, Lambda) from ties", by_ties == exp_lambda, std::to_string(exp_lambda), std::to_string(by_ties));
    add("colength(Lambda^D, Lambda) from mu-basis", by_basis == exp_lambda, std::to_string(exp_lambda),
        std::to_string(by_basis));
    const long lam_gamma = colength(lambda_basis(T), gamma_basis(T), T);
    add("colength(Lambda, Gamma)", lam_gamma == p * (p - 1) / 2, std::to_string(p * (p - 1) / 2),
        std::to_string(lam_gamma));
    rep.colength_in_gamma = by_basis + lam_gamma;
    rep.expected_in_gamma = (1 + b) * p * (p - 1) / 2;
    const long disc = T.discriminant_valuation();
    add("val_s(Delta) = (p-1)(1+b)", disc == (p - 1) * (1 + b), std::to_string((p - 1) * (1 + b)), std::to_string(disc));
    const bool xi_len = p * disc % 2 == 0 && rep.colength_in_gamma == p * disc / 2;
    add("colength(Lambda^D, Gamma) = p val_s(Delta)/2", xi_len, std::to_string(p * disc / 2),
        std::to_string(rep.colength_in_gamma));
    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.ok;
    return rep;
}

PolyTower poly_tower(long p, const RatPoly& mu) {
    require_odd_prime(p);
    NumberField F(p, mu, "t");  // validates the Eisenstein property
    PolyTower pt{p, poly_trim(mu), 0, 0};
    pt.disc_val = val_p(poly_discriminant(mu), p).value();
    pt.b = b_from_discriminant(p, pt.disc_val);
    return pt;
}

TieIsoReport tie_isomorphism_check(const PolyTower& a, const PolyTower& b) {
    if (a.p != b.p) fail(ErrorKind::usage, "towers over different base rings");
    TieIsoReport r;
    r.disc1 = a.disc_val;
    r.disc2 = b.disc_val;
    if (a.disc_val != b.disc_val) fail(ErrorKind::precondition, "discriminant valuations differ");
    const long p = a.p;
    if (a.disc_val > p * 1 + p - 1) fail(ErrorKind::precondition, "val_s(Delta) exceeds p val_s(p) + p - 1");
    r.b = a.b;
    r.ties1 = tie_system_for(p, a.b, 1);
    r.ties2 = tie_system_for(p, b.b, 1);
    r.isomorphic = r.ties1 == r.ties2;
    return r;
}

}  // namespace tgr
