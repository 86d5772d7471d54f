#include "tgr/wedder.hpp"

namespace tgr {

IndexSplit split(long i, long g) {
    if (g <= 0) fail(ErrorKind::usage, "split: modulus must be positive");
    return IndexSplit{i, g, floor_div(i, g), mod_floor(i, g)};
}

static std::size_t gsize(const ExtensionTower& T) { return static_cast<std::size_t>(T.g()); }

GammaElement eps(long i, long j, const ExtensionTower& T) {
    const long g = T.g();
    if (i < 0 || i >= g) fail(ErrorKind::usage, "eps: row index outside [0, g-1]");
    GammaElement m(gsize(T), gsize(T));
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(ol(i + j, g))) = T.s_pow(ul(i + j, g));
    return m;
}

GammaElement ddot_power(long j, const ExtensionTower& T) {
    if (j < 0) fail(ErrorKind::usage, "ddot_power: negative exponent");
    GammaElement m(gsize(T), gsize(T));
    for (long i = 0; i < T.g(); ++i) m = m + eps(i, j, T);
    return m;
}

GammaElement wedderburn_image(Generator gen, const ExtensionTower& T) {
    switch (gen) {
        case Generator::t: return T.tdot();
        case Generator::sigma: return T.sigmadot();
        default: fail(ErrorKind::usage, "generator not available for this tower");
    }
}

KMatrix eps_coords(const GammaElement& f, const ExtensionTower& T) {
    const long g = T.g();
    KMatrix a(gsize(T), gsize(T));
    for (long i = 0; i < g; ++i)
        for (long j = 0; j < g; ++j) {
            const KElem& x = f(static_cast<std::size_t>(i), static_cast<std::size_t>(ol(i + j, g)));
            if (!is_zero(x)) a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = x * T.s_pow(-ul(i + j, g));
        }
    return a;
}

GammaElement from_eps_coords(const KMatrix& a, const ExtensionTower& T) {
    const long g = T.g();
    GammaElement f(gsize(T), gsize(T));
    for (long i = 0; i < g; ++i)
        for (long j = 0; j < g; ++j) {
            const KElem& x = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (!is_zero(x)) f(static_cast<std::size_t>(i), static_cast<std::size_t>(ol(i + j, g))) = x * T.s_pow(ul(i + j, g));
        }
    return f;
}

bool in_gamma(const GammaElement& f, const ExtensionTower& T) {
    const KVal v = T.val_s();
    for (const auto& x : f.data())
        if (v(x) < Valuation(0)) return false;
    return true;
}

bool in_lambda(const GammaElement& f, const ExtensionTower& T) { return ideal_membership(f, 0, T); }

bool ideal_membership(const GammaElement& f, long k, const ExtensionTower& T) {
    const long g = T.g();
    const KVal v = T.val_s();
    KMatrix a = eps_coords(f, T);
    for (long i = 0; i < g; ++i)
        for (long j = 0; j < g; ++j)
            if (v(a(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) < Valuation(-ul(j - k, g))) return false;
    return true;
}

std::vector<GammaElement> lambda_basis(const ExtensionTower& T) {
    std::vector<GammaElement> r;
    for (long i = 0; i < T.g(); ++i)
        for (long j = 0; j < T.g(); ++j) r.push_back(eps(i, j, T));
    return r;
}

std::vector<GammaElement> gamma_basis(const ExtensionTower& T) {
    std::vector<GammaElement> r;
    for (std::size_t i = 0; i < gsize(T); ++i)
        for (std::size_t j = 0; j < gsize(T); ++j) {
            GammaElement m(gsize(T), gsize(T));
            m(i, j) = KElem(1);
            r.push_back(m);
        }
    return r;
}

std::vector<Rat> restricted_coords(const GammaElement& f, const ExtensionTower& T) {
    KMatrix a = eps_coords(f, T);
    const std::size_t e = static_cast<std::size_t>(T.e());
    std::vector<Rat> out;
    out.reserve(a.rows() * a.cols() * e);
    for (const auto& x : a.data()) {
        auto c = x.coeffs();
        c.resize(e);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

GammaElement from_restricted_coords(const std::vector<Rat>& v, const ExtensionTower& T) {
    const std::size_t g = gsize(T), e = static_cast<std::size_t>(T.e());
    if (v.size() != g * g * e) fail(ErrorKind::usage, "from_restricted_coords: wrong length");
    KMatrix a(g, g);
    for (std::size_t k = 0; k < g * g; ++k) {
        std::vector<Rat> c(v.begin() + static_cast<long>(k * e), v.begin() + static_cast<long>((k + 1) * e));
        a(k / g, k % g) = T.K() ? KElem(T.K(), c) : KElem(c[0]);
    }
    return from_eps_coords(a, T);
}

ZpLattice s_span(const std::vector<GammaElement>& gens, const ExtensionTower& T) {
    const std::size_t dim = gsize(T) * gsize(T) * static_cast<std::size_t>(T.e());
    std::vector<std::vector<Rat>> rows;
    for (const auto& x : gens) {
        KElem sa(1);
        for (long a = 0; a < T.e(); ++a) {
            rows.push_back(restricted_coords(sa * x, T));
            sa = sa * T.s();
        }
    }
    return ZpLattice::from_generators(T.p(), dim, rows);
}

long colength(const std::vector<GammaElement>& sub, const std::vector<GammaElement>& super, const ExtensionTower& T) {
    ZpLattice A = s_span(sub, T), B = s_span(super, T);
    return A.colength_in(B);
}

}  // namespace tgr
