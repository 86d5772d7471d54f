#include "tgr/nebe.hpp"

namespace tgr {

std::vector<Rat> flatten(const RatMatrix& m) { return m.data(); }

namespace {

long primitive_root(long p) {
    const long m = p * p;
    for (long r = 2; r < m; ++r) {
        if (r % p == 0) continue;
        long x = 1, k = 0;
        do {
            x = x * r % m;
            ++k;
        } while (x != 1);
        if (k == p * (p - 1)) return r;
    }
    fail(ErrorKind::consistency, "no primitive root mod p^2");
}

std::vector<std::vector<Rat>> lattice_rows(const std::vector<GammaElement>& xs, const BlockDecomposition& B, long k, long l) {
    std::vector<std::vector<Rat>> out;
    for (const auto& x : xs) out.push_back(flatten(B.place(x, k, l)));
    return out;
}

}  // namespace

BlockDecomposition BlockDecomposition::build(long p, bool force) {
    require_odd_prime(p);
    if (p > 5 && !force)
        fail(ErrorKind::resource, "block decomposition for p > 5 works in dimension (p(p-1))^2; pass force to run it");
    BlockDecomposition B;
    B.p_ = p;
    B.g_ = p;
    B.n_ = p - 1;
    if (B.n_ % p == 0) fail(ErrorKind::precondition, "[U:T] must be prime to p");
    B.T_ = ExtensionTower::cyclotomic(p, 2);
    const AmbientField& F = B.T_->ambient();
    const AElem& t = B.T_->t_amb();
    const AElem& u = B.T_->theta_amb();
    std::vector<AElem> fam;
    AElem uj = F.one();
    for (long j = 0; j < B.n_; ++j) {
        AElem x = uj;
        for (long i = 0; i < B.g_; ++i) {
            fam.push_back(x);
            x = x * t;
        }
        uj = uj * u;
    }
    B.solver_ = std::make_shared<SubspaceSolver>(fam);
    B.fam_ = fam;
    if (B.solver_->size() != fam.size()) fail(ErrorKind::consistency, "mixed basis u^j t^i is degenerate");

    const std::size_t h = static_cast<std::size_t>(B.h());
    B.udot_ = RatMatrix(h, h);
    for (std::size_t r = 0; r < h; ++r) B.udot_.set_row(r, B.coords(fam[r] * u));
    const long root = primitive_root(p);
    long rk = 1;
    for (std::size_t k = 0; k < h; ++k) {
        RatMatrix R(h, h);
        for (std::size_t r = 0; r < h; ++r) R.set_row(r, B.coords(F.galois(fam[r], rk)));
        B.rhodot_.push_back(std::move(R));
        rk = rk * root % (p * p);
    }

    const auto xi0 = lambda_D(*B.T_, 0).mu, xi1 = lambda_D(*B.T_, 1).mu;
    std::vector<std::vector<Rat>> gens;
    for (long k = 0; k < B.n_; ++k)
        for (long l = 0; l < B.n_; ++l) {
            auto rows = lattice_rows(k <= l ? xi0 : xi1, B, k, l);
            gens.insert(gens.end(), rows.begin(), rows.end());
        }
    B.blocks_ = ZpLattice::from_generators(p, h * h, gens);
    return B;
}

std::vector<Rat> BlockDecomposition::coords(const AElem& x) const {
    auto c = solver_->solve(x);
    if (!c) fail(ErrorKind::consistency, "element outside the span of the mixed basis");
    return *c;
}

RatMatrix BlockDecomposition::place(const GammaElement& x, long k, long l) const {
    const std::size_t h = static_cast<std::size_t>(this->h()), g = static_cast<std::size_t>(g_);
    RatMatrix X = to_rat_matrix(x);
    RatMatrix m(h, h);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) m(static_cast<std::size_t>(k) * g + i, static_cast<std::size_t>(l) * g + j) = X(i, j);
    return m;
}

RatMatrix BlockDecomposition::block_unit(long k, long l) const {
    return place(GammaElement::identity(static_cast<std::size_t>(g_)), k, l);
}

ZpLattice BlockDecomposition::xi_lattice() const {
    const std::size_t h = static_cast<std::size_t>(this->h());
    std::vector<RatMatrix> mult;
    const auto& fam = fam_;
    for (std::size_t r = 0; r < h; ++r) {
        RatMatrix X(h, h);
        for (std::size_t q = 0; q < h; ++q) X.set_row(q, coords(fam[q] * fam[r]));
        mult.push_back(std::move(X));
    }
    std::vector<std::vector<Rat>> gens;
    for (const auto& X : mult)
        for (const auto& R : rhodot_) gens.push_back(flatten(X * R));
    return ZpLattice::from_generators(p_, h * h, gens);
}

bool BlockDecomposition::in_block_lattice(const RatMatrix& m) const { return blocks_.contains(flatten(m)); }

namespace {
using ResMat = std::vector<std::uint64_t>;

ResMat reduce_matrix(const RatMatrix& m, const ResidueRing& R) {
    ResMat out(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j))) out[i * m.cols() + j] = R.reduce(m(i, j));
    return out;
}

ResMat mul(const ResMat& x, const ResMat& y, std::size_t n, const ResidueRing& R) {
    ResMat r(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const std::uint64_t a = x[i * n + k];
            if (!a) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (y[k * n + j]) r[i * n + j] = R.add(r[i * n + j], R.mul(a, y[k * n + j]));
        }
    return r;
}
}  // namespace

HowellModule BlockDecomposition::xi_module(int B) const {
    ResidueRing R(p_, B);
    const std::size_t h = static_cast<std::size_t>(this->h());
    HowellModule M(R, h * h);
    std::vector<ResMat> rho;
    for (const auto& X : rhodot_) rho.push_back(reduce_matrix(X, R));
    for (std::size_t r = 0; r < h; ++r) {
        RatMatrix X(h, h);
        for (std::size_t q = 0; q < h; ++q) X.set_row(q, coords(fam_[q] * fam_[r]));
        const ResMat x = reduce_matrix(X, R);
        for (const auto& y : rho) M.insert(mul(x, y, h, R));
    }
    return M;
}

HowellModule BlockDecomposition::block_module(int B) const {
    ResidueRing R(p_, B);
    const std::size_t h = static_cast<std::size_t>(this->h());
    HowellModule M(R, h * h);
    const auto xi0 = lambda_D(*T_, 0).mu, xi1 = lambda_D(*T_, 1).mu;
    for (long k = 0; k < n_; ++k)
        for (long l = 0; l < n_; ++l)
            for (const auto& x : k <= l ? xi0 : xi1) M.insert(reduce_matrix(place(x, k, l), R));
    return M;
}

std::vector<std::vector<std::string>> BlockDecomposition::pattern() const {
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(n_));
    for (long k = 0; k < n_; ++k)
        for (long l = 0; l < n_; ++l) out[static_cast<std::size_t>(k)].push_back(k <= l ? "Xi'" : "tdot Xi'");
    return out;
}

namespace {
void finish(NebeReport& r) {
    r.pass = true;
    for (const auto& c : r.checks) r.pass = r.pass && c.ok;
}
std::string yes(bool b) { return b ? "true" : "false"; }
}  // namespace

NebeReport verify_nd3(long p, bool force) {
    NebeReport rep;
    auto add = [&](std::string name, bool ok, std::string exp, std::string act, std::string detail = "") {
        rep.checks.push_back(CheckLine{std::move(name), ok, std::move(exp), std::move(act), std::move(detail)});
    };
    BlockDecomposition B = BlockDecomposition::build(p, force);
    const ExtensionTower& T = *B.inner();
    const long h = B.h(), n = B.n();

    std::string pat;
    for (const auto& row : B.pattern()) {
        pat += pat.empty() ? "" : " / ";
        for (std::size_t l = 0; l < row.size(); ++l) pat += (l ? " | " : "") + row[l];
    }
    TieOrder t0 = lambda_D(T, 0), t1 = lambda_D(T, 1);
    std::string ties0, ties1;
    for (const auto& c : t0.ties.conditions)
        if (c.bound > 0) ties0 += (ties0.empty() ? "" : "; ") + c.str(T);
    for (const auto& c : t1.ties.conditions)
        if (c.bound > 0) ties1 += (ties1.empty() ? "" : "; ") + c.str(T);
    add("block pattern (k <= l: Xi', k > l: tdot Xi')", true, pat, pat, "Xi': " + ties0 + " || tdot Xi': " + ties1);

    bool units = true;
    for (long k = 0; k < n; ++k)
        for (long l = 0; l < n; ++l)
            for (long k2 = 0; k2 < n; ++k2)
                for (long l2 = 0; l2 < n; ++l2) {
                    RatMatrix prod = B.block_unit(k, l) * B.block_unit(k2, l2);
                    RatMatrix want = l == k2 ? B.block_unit(k, l2) : RatMatrix(static_cast<std::size_t>(h), static_cast<std::size_t>(h));
                    units = units && prod == want;
                }
    add("block units are matrix units", units, "true", yes(units));

    const bool u_in = B.in_block_lattice(B.udot());
    add("udot in block lattice", u_in, "true", yes(u_in));
    bool rho_in = true;
    for (const auto& R : B.rhodot()) rho_in = rho_in && B.in_block_lattice(R);
    add("rhodot in block lattice for all rho in H", rho_in, "true", yes(rho_in));

    // lattices are compared mod p^B; containing p^{B-1} Gamma makes that faithful
    int prec = 1;
    for (long q = p; q < (1L << 62) / p; q *= p) ++prec;
    HowellModule Xi = B.xi_module(prec), L = B.block_module(prec);
    const ResidueRing& R = L.ring();
    const std::size_t hh = static_cast<std::size_t>(h);
    auto covers = [&](const HowellModule& M) {
        for (std::size_t c = 0; c < hh * hh; ++c) {
            std::vector<std::uint64_t> e(hh * hh);
            e[c] = R.pow_p(prec - 1);
            if (!M.contains(e)) return false;
        }
        return true;
    };
    const bool faithful = covers(Xi) && covers(L);
    add("working precision covers both lattices", faithful, "true", yes(faithful), "B = " + std::to_string(prec));
    const bool contained = L.contains(Xi);
    add("Xi inside block lattice", contained, "true", yes(contained));

    RatPoly phi(static_cast<std::size_t>(p * (p - 1) + 1));
    for (long k = 0; k < p; ++k) phi[static_cast<std::size_t>(k * p)] = 1;
    const long dU = val_p(poly_discriminant(phi), p).value();
    const long dT = T.discriminant_valuation();
    const long f_xi = h * dU / 2, f_blocks = h * n * dT / 2 + h * (n - 1) / 2;
    add("val_s(Delta_{U|S}) = p(2p-3)", dU == p * (2 * p - 3), std::to_string(p * (2 * p - 3)), std::to_string(dU),
        "discriminant of Phi_{p^2} by resultant");
    add("colength formulas h val(Delta_U)/2 = h n val(Delta_T)/2 + h(n-1)/2", f_xi == f_blocks, std::to_string(f_xi),
        std::to_string(f_blocks));
    rep.colength_xi = Xi.log_index();
    rep.colength_blocks = L.log_index();
    add("colength(Xi, Gamma) from lattice", rep.colength_xi == f_xi, std::to_string(f_xi), std::to_string(rep.colength_xi));
    add("colength(block lattice, Gamma) from lattice", rep.colength_blocks == f_blocks, std::to_string(f_blocks),
        std::to_string(rep.colength_blocks));
    const bool eq = faithful && contained && Xi.contains(L);
    add("Xi = block lattice", eq, "equal", eq ? "equal" : "different");

    // corner (1 (x) e''_00) L (1 (x) e''_00) against Xi' placed in block (0,0)
    const std::size_t g = static_cast<std::size_t>(B.g());
    HowellModule C(R, hh * hh), X0(R, hh * hh);
    for (auto r : L.rows()) {
        for (std::size_t q = 0; q < hh * hh; ++q)
            if (q / hh >= g || q % hh >= g) r[q] = 0;
        C.insert(std::move(r));
    }
    for (const auto& x : lambda_D(T, 0).mu) {
        RatMatrix m = B.place(x, 0, 0);
        std::vector<std::uint64_t> r(hh * hh);
        for (std::size_t q = 0; q < hh * hh; ++q)
            if (!is_zero(m(q / hh, q % hh))) r[q] = R.reduce(m(q / hh, q % hh));
        X0.insert(std::move(r));
    }
    long rank = 0;
    for (const auto& r : C.rows()) rank += std::any_of(r.begin(), r.end(), [&](std::uint64_t v) { return R.val(v) < prec - 1; }) ? 1 : 0;
    const bool ff = C.contains(X0) && X0.contains(C) && rank == T.g() * T.g();
    add("corner e00 L e00 = Xi' (x) e00, rank g^2", ff, std::to_string(T.g() * T.g()), std::to_string(rank));
    finish(rep);
    return rep;
}

NebeReport verify_nd7(long p, long max_degree, bool force) {
    require_odd_prime(p);
    if (p > 5 && !force) fail(ErrorKind::resource, "U-side computations for p > 5 need force");
    NebeReport rep;
    auto T = ExtensionTower::cyclotomic(p, 2);
    GaloisModule U = galois_module_U(p);
    for (long d = 0; d <= max_degree; ++d) {
        ModuleDescription a = ext_module(*T, d), b = classical_ext(U, d);
        const Valuation la = a.length(), lb = b.length();
        auto s = [](const ModuleDescription& m) {
            return m.free_rank ? "free-" + std::to_string(m.free_rank) : std::to_string(m.length().value());
        };
        rep.checks.push_back(CheckLine{"degree " + std::to_string(d) + " length T wr G = U wr H",
                                       la == lb && a.free_rank == b.free_rank, s(a), s(b), ""});
    }
    ExtRingPresentation P = ring_presentation(*T, 2);
    bool t_zero = true;
    for (const auto& pe : P.products) t_zero = t_zero && (!pe.c.present || pe.c.zero_in_quotient);
    rep.checks.push_back(CheckLine{"H^1 products vanish on T wr G (structure constants)", t_zero, "true", yes(t_zero), ""});
    if (p == 3) {
        auto prod = bar_h1_products(U, P);
        rep.checks.insert(rep.checks.end(), prod.checks.begin(), prod.checks.end());
    }
    finish(rep);
    return rep;
}

}  // namespace tgr
