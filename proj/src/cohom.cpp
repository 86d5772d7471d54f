#include "tgr/cohom.hpp"

#include <sstream>

namespace tgr {

namespace {

long inverse_mod(long a, long p) {
    a = mod_floor(a, p);
    for (long x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    fail(ErrorKind::domain, "no inverse mod p");
}

// matrix of y -> x y on restricted coordinates
RatMatrix left_mult_matrix(const GammaElement& x, const ExtensionTower& T) {
    const std::size_t dim = static_cast<std::size_t>(T.g() * T.g() * T.e());
    RatMatrix M(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        std::vector<Rat> ek(dim);
        ek[k] = 1;
        M.set_row(k, restricted_coords(x * from_restricted_coords(ek, T), T));
    }
    return M;
}

std::string unif_pow(const std::string& u, long a) {
    if (a == 0) return "";
    if (a == 1) return u;
    return u + "^" + std::to_string(a);
}

}  // namespace

std::string unif_power_str(const std::string& unif, long a) { return a == 0 ? "1" : unif_pow(unif, a); }

ResolutionMaps build_resolution(const ExtensionTower& T) {
    const long p = T.p(), b = T.b(), bb = T.b_bar(), bu = T.b_under();
    ResolutionMaps R;
    R.alpha = T.s_pow(b - bu - 1) * eps(bb, p - bb, T);
    R.beta = GammaElement(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    for (long i = 1; i < p; ++i) R.beta = R.beta + KElem(i) * eps(i, bb, T);
    R.beta = T.s_pow(bu) * R.beta;
    for (long k = 0; k < p; ++k) {
        std::vector<KElem> row(static_cast<std::size_t>(p));
        row[static_cast<std::size_t>(k)] = KElem(1);
        R.chi.push_back(row);
    }
    auto add = [&](std::string name, bool ok, std::string exp, std::string act) {
        R.checks.push_back(CheckLine{std::move(name), ok, std::move(exp), std::move(act), ""});
    };
    const bool ab = (R.alpha * R.beta).is_zero_matrix(), ba = (R.beta * R.alpha).is_zero_matrix();
    add("alpha beta = 0", ab, "0", ab ? "0" : "nonzero");
    add("beta alpha = 0", ba, "0", ba ? "0" : "nonzero");

    TieOrder LD = lambda_D(T, 0);
    const bool in_xi = LD.ties.satisfied_by(R.alpha, T) && LD.ties.satisfied_by(R.beta, T);
    add("alpha, beta in Xi", in_xi, "true", in_xi ? "true" : "false");

    const std::size_t dim = static_cast<std::size_t>(p * p * T.e());
    ZpLattice Lam = ZpLattice::standard(p, dim);
    ZpLattice Xi = s_span(LD.mu, T);
    RatMatrix La = left_mult_matrix(R.alpha, T), Lb = left_mult_matrix(R.beta, T);

    ZpLattice Bk = Lam.kernel(Lb), ker_b = Xi.kernel(Lb), im_a = Xi.image(La);
    ZpLattice Ak = Lam.kernel(La), ker_a = Xi.kernel(La), im_b = Xi.image(Lb);
    const long e1 = b * (p - 1), e2 = b * p * (p - 1) / 2;
    long c;
    c = ker_b.colength_in(Bk);
    add("colength(ker beta, B)", c == e1, std::to_string(e1), std::to_string(c));
    c = im_a.colength_in(Bk);
    add("colength(im alpha, B)", c == e1, std::to_string(e1), std::to_string(c));
    c = ker_a.colength_in(Ak);
    add("colength(ker alpha, A)", c == e2, std::to_string(e2), std::to_string(c));
    c = im_b.colength_in(Ak);
    add("colength(im beta, A)", c == e2, std::to_string(e2), std::to_string(c));
    add("im alpha = ker beta", im_a == ker_b, "equal", im_a == ker_b ? "equal" : "different");
    add("im beta = ker alpha", im_b == ker_a, "equal", im_b == ker_a ? "equal" : "different");

    R.exact = true;
    for (const auto& ch : R.checks) R.exact = R.exact && ch.ok;
    return R;
}

ModuleDescription ext_formula(long p, long b, long degree) {
    if (degree < 0) fail(ErrorKind::usage, "negative degree");
    const long bb = ol(b, p), bu = ul(b, p);
    ModuleDescription d;
    if (degree == 0) {
        d.free_rank = 1;
        return d;
    }
    if (degree % 2 == 0) {
        if (b - bu > 0) d.torsion.push_back(b - bu);
        return d;
    }
    for (long k = 0; k < p; ++k) {
        if (k == bb) continue;
        long a = k < bb ? bu + 1 : bu;
        if (a > 0) d.torsion.push_back(a);
    }
    std::sort(d.torsion.begin(), d.torsion.end());
    return d;
}

ModuleDescription ext_by_smith(const ExtensionTower& T, const ResolutionMaps& R, long degree) {
    if (degree < 0) fail(ErrorKind::usage, "negative degree");
    const KVal v = T.val_s();
    if (degree == 0) return homology(KMatrix(0, static_cast<std::size_t>(T.g())), R.beta, v);
    if (degree % 2) return homology(R.beta, R.alpha, v);
    return homology(R.alpha, R.beta, v);
}

ModuleDescription ext_module(const ExtensionTower& T, long degree) {
    ResolutionMaps R = build_resolution(T);
    if (!R.exact) fail(ErrorKind::consistency, "resolution is not exact");
    ModuleDescription a = ext_by_smith(T, R, degree), f = ext_formula(T.p(), T.b(), degree);
    if (!(a == f))
        fail(ErrorKind::consistency, "Ext^" + std::to_string(degree) + ": Smith form gives " + a.str() +
                                         ", closed form gives " + f.str());
    return a;
}

Lift lift_cocycle(const ExtensionTower& T, long j) {
    const long p = T.p(), b = T.b(), bb = T.b_bar();
    if (j < 0 || j >= p || j == bb) fail(ErrorKind::usage, "lift_cocycle: j must lie in [0, p-1] without b_bar");
    Lift L;
    L.j = j;
    L.mu = ddot_power(j, T);
    const long r1 = ol(2 * b - j, p), c1 = ol(j - 2 * b, p);
    KElem u1 = KElem(1) / KElem(ol(b - j, p)), u2 = KElem(1) / KElem(ol(j - b, p));
    L.nu = T.s_pow(b + ul(j - 2 * b, p)) * (u1 * eps(r1, c1, T) + u2 * eps(bb, c1, T));

    ResolutionMaps R = build_resolution(T);
    TieOrder LD = lambda_D(T, 0);
    if (const Tie* bad = LD.ties.violated(L.nu, T))
        fail(ErrorKind::consistency, "nu_" + std::to_string(j) + " violates " + (bad->j < 0 ? "Lambda" : bad->str(T)));
    if (!(R.beta * L.nu == L.mu * R.alpha)) fail(ErrorKind::consistency, "nu_j beta != alpha mu_j");
    if (!(R.alpha * L.mu == L.nu * R.beta)) fail(ErrorKind::consistency, "mu_j alpha != beta nu_j");
    if (!(L.mu.row(0) == R.chi[static_cast<std::size_t>(j)])) fail(ErrorKind::consistency, "mu_j chi_0 != chi_j");
    return L;
}

StructureConstant structure_constant(long p, long b, long j, long k) {
    require_odd_prime(p);
    if (b < 1) fail(ErrorKind::usage, "structure_constant: b must be >= 1");
    const long bb = ol(b, p);
    auto bad = [&](long x) { return x < 0 || x >= p || x == bb; };
    if (bad(j) || bad(k)) fail(ErrorKind::usage, "structure_constant: indices must lie in [0, p-1] without b_bar");
    StructureConstant c;
    c.present = ol(j + k, p) == ol(2 * b, p);
    if (!c.present) return c;
    c.exponent = b + ul(j + k - 2 * b, p);
    c.unit = inverse_mod(ol(b - j, p), p);
    c.zero_in_quotient = c.exponent >= b - ul(b, p);
    return c;
}

std::optional<KElem> ext2_coefficient(const ExtensionTower& T, const ResolutionMaps& R, const std::vector<KElem>& c) {
    KMatrix row = KMatrix::from_rows({c});
    if (!(row * R.beta).is_zero_matrix()) return std::nullopt;
    for (std::size_t k = 1; k < c.size(); ++k)
        if (!is_zero(c[k])) fail(ErrorKind::consistency, "degree-2 cocycle outside S chi_0");
    (void)T;
    return c[0];
}

std::pair<Valuation, long> split_unit(const KElem& x, const ExtensionTower& T) {
    Valuation v = T.val_s()(x);
    if (v.is_infinite()) return {v, 0};
    KElem u = x / T.s_pow(v.value());
    Rat r = u.coeffs()[0];
    const long p = T.p();
    Int num = r.get_num(), den = r.get_den();
    Int pm(p);
    Int res = (num * Int(inverse_mod(mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p)), p))) % pm;
    if (sgn(res) < 0) res += pm;
    return {v, res.get_si()};
}

ExtRingPresentation ring_presentation(const ExtensionTower& T, long max_degree) {
    ExtRingPresentation P;
    P.p = T.p();
    P.n = T.n();
    P.b = T.b();
    P.b_bar = T.b_bar();
    P.b_under = T.b_under();
    P.ring = T.ring_name();
    P.unif = T.unif_name();
    P.even_annihilator = P.b - P.b_under;
    const long p = P.p;

    ResolutionMaps R = build_resolution(T);
    if (!R.exact) fail(ErrorKind::consistency, "resolution is not exact");
    for (long d = 0; d <= max_degree; ++d) {
        ModuleDescription a = ext_by_smith(T, R, d), f = ext_formula(p, P.b, d);
        if (!(a == f)) fail(ErrorKind::consistency, "Ext^" + std::to_string(d) + " mismatch: " + a.str() + " vs " + f.str());
        P.ext_table.push_back(a);
    }
    for (long j = 0; j < p; ++j)
        if (j != P.b_bar) P.odd.push_back(OddGenerator{j, j < P.b_bar ? P.b_under + 1 : P.b_under});

    std::vector<Lift> lifts(static_cast<std::size_t>(p));
    for (const auto& g : P.odd) lifts[static_cast<std::size_t>(g.j)] = lift_cocycle(T, g.j);
    for (const auto& gj : P.odd)
        for (const auto& gk : P.odd) {
            StructureConstant c = structure_constant(p, P.b, gj.j, gk.j);
            // the cochain nu_j chi_k is row k of nu_j
            auto coeff = ext2_coefficient(T, R, lifts[static_cast<std::size_t>(gj.j)].nu.row(static_cast<std::size_t>(gk.j)));
            if (!coeff) fail(ErrorKind::consistency, "nu_j chi_k is not a cocycle");
            auto [v, u] = split_unit(*coeff, T);
            bool ok = c.present ? (v == Valuation(c.exponent) && u == c.unit) : v.is_infinite();
            if (!ok)
                fail(ErrorKind::consistency, "product chi_" + std::to_string(gj.j) + " chi_" + std::to_string(gk.j) +
                                                 " disagrees with the structure constant");
            if (gj.j <= gk.j && gj.annihilator > 0 && gk.annihilator > 0) P.products.push_back(ProductEntry{gj.j, gk.j, c});
        }

    std::ostringstream os;
    const std::string& u = P.unif;
    if (P.b == 1) {
        os << P.ring << "[h1,h2]/(" << u << "h1," << u << "h2,h1^2)";
    } else {
        os << P.ring << "[";
        for (const auto& g : P.odd) os << "h" << g.j << "^(1),";
        os << "h0^(2)]/(";
        bool first = true;
        auto sep = [&]() {
            if (!first) os << ", ";
            first = false;
        };
        for (const auto& g : P.odd) {
            sep();
            std::string s = unif_pow(u, g.annihilator);
            os << s << (s.empty() ? "" : " ") << "h" << g.j << "^(1)";
        }
        sep();
        os << unif_pow(u, P.even_annihilator) << " h0^(2)";
        for (const auto& pe : P.products) {
            sep();
            os << "h" << pe.j << "^(1)h" << pe.k << "^(1)";
            if (pe.c.present && !pe.c.zero_in_quotient) {
                os << " - ";
                if (pe.c.unit != 1) os << pe.c.unit << " ";
                std::string s = unif_pow(u, pe.c.exponent);
                os << s << (s.empty() ? "" : " ") << "h0^(2)";
            }
        }
        os << ")";
    }
    P.text = os.str();
    return P;
}

}  // namespace tgr
