#include "tgr/appendix.hpp"

#include <functional>
#include <sstream>
#include <thread>

namespace tgr {

const std::vector<Erratum>& displayed_errata() {
    static const std::vector<Erratum> data = {
        {5, "udot_mod31", 20, 16, "-10", "10"},
    };
    return data;
}

RatMatrix displayed(long p, const std::string& name, bool corrected) {
    for (const auto& d : displayed_matrices()) {
        if (d.p != p || name != d.name) continue;
        const std::size_t n = static_cast<std::size_t>(d.dim);
        RatMatrix m(n, n);
        std::istringstream in(d.entries);
        std::string tok;
        std::size_t k = 0;
        while (in >> tok) {
            if (k >= n * n) break;
            Rat x(tok);
            x.canonicalize();
            m(k / n, k % n) = x;
            ++k;
        }
        if (k != n * n) fail(ErrorKind::consistency, "reference matrix " + name + " has the wrong number of entries");
        if (corrected)
            for (const auto& e : displayed_errata())
                if (e.p == p && name == e.name) {
                    Rat x(e.corrected);
                    m(static_cast<std::size_t>(e.row), static_cast<std::size_t>(e.col)) = x;
                }
        return m;
    }
    fail(ErrorKind::usage, "no reference matrix " + name + " for p = " + std::to_string(p));
}

namespace {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) fn(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

// dense square matrices over Z/m with m < 2^32
struct ModMat {
    std::size_t n = 0;
    std::uint64_t m = 1;
    std::vector<std::uint64_t> a;
    ModMat() = default;
    ModMat(std::size_t n_, std::uint64_t m_) : n(n_), m(m_), a(n_ * n_, 0) {}
    std::uint64_t& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    std::uint64_t operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

ModMat operator*(const ModMat& x, const ModMat& y) {
    ModMat r(x.n, x.m);
    const std::size_t n = x.n;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t* out = &r.a[i * n];
        for (std::size_t k = 0; k < n; ++k) {
            const std::uint64_t xik = x.a[i * n + k];
            if (!xik) continue;
            const std::uint64_t* yk = &y.a[k * n];
            for (std::size_t j = 0; j < n; ++j)
                if (yk[j]) out[j] += xik * yk[j] % x.m;
        }
        for (std::size_t j = 0; j < n; ++j) out[j] %= x.m;
    }
    return r;
}

ModMat operator-(ModMat x, const ModMat& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] = (x.a[i] + x.m - y.a[i]) % x.m;
    return x;
}

ModMat operator+(ModMat x, const ModMat& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] = (x.a[i] + y.a[i]) % x.m;
    return x;
}

ModMat scaled(ModMat x, std::uint64_t c) {
    for (auto& e : x.a) e = e * c % x.m;
    return x;
}

ModMat mod_pow(const ModMat& x, long e) {
    ModMat r(x.n, x.m);
    for (std::size_t i = 0; i < x.n; ++i) r(i, i) = 1 % x.m;
    for (long i = 0; i < e; ++i) r = r * x;
    return r;
}

ModMat to_mod(const RatMatrix& x, const ResidueRing& R) {
    ModMat r(x.rows(), R.modulus());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (!is_zero(x(i, j))) r(i, j) = R.reduce(x(i, j));
    return r;
}

// largest B with p^{B+1} < 2^32
int working_precision(long p) {
    int B = 0;
    std::uint64_t q = static_cast<std::uint64_t>(p);
    while (q * static_cast<std::uint64_t>(p) < (std::uint64_t{1} << 32)) {
        q *= static_cast<std::uint64_t>(p);
        ++B;
    }
    return B;
}

std::uint64_t lambda_weight(const AppendixTower& A, long r, long r2) { return A.k(r) > A.k(r2) ? A.p() : 1; }

}  // namespace

AppendixTower AppendixTower::build(long p, bool force) {
    require_odd_prime(p);
    if (p > 7 && !force) fail(ErrorKind::resource, "the C_{p^2} tower for p > 7 lives in degree p^2(p-1); pass force to build it");
    AppendixTower A;
    A.p_ = p;
    A.F_ = std::make_shared<AmbientField>(p, 3);
    const AmbientField& F = *A.F_;
    A.u_ = make_pi(F, 3);
    const long N = F.order();
    A.v_ = F.one();
    long e = 1;
    for (long i = 0; i < p; ++i) {
        A.v_ = A.v_ * F.galois(A.u_, e);
        e = e * (1 + p) % N;
    }
    const long g = A.g();
    AElem vj = F.one();
    std::vector<AElem> vp;
    for (long j = 0; j < p; ++j) {
        vp.push_back(vj);
        vj = vj * A.v_;
    }
    AElem ui = F.one();
    for (long i = 0; i < p; ++i) {
        for (long j = 0; j < p; ++j) A.basis_.push_back(ui * vp[static_cast<std::size_t>(j)]);
        ui = ui * A.u_;
    }
    A.solver_ = std::make_shared<SubspaceSolver>(A.basis_);
    if (static_cast<long>(A.solver_->size()) != g) fail(ErrorKind::consistency, "basis u^i v^j is degenerate");

    const std::size_t n = static_cast<std::size_t>(g);
    A.udot_ = RatMatrix(n, n);
    A.vdot_ = RatMatrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        A.udot_.set_row(r, A.coords(A.basis_[r] * A.u_));
        A.vdot_.set_row(r, A.coords(A.basis_[r] * A.v_));
    }
    A.sigmadot_ = A.galois_dot(A.sigma_exponent());
    return A;
}

std::vector<Rat> AppendixTower::coords(const AElem& x) const {
    auto c = solver_->solve(x);
    if (!c) fail(ErrorKind::consistency, "element outside Q(pi_3)");
    return *c;
}

RatMatrix AppendixTower::galois_dot(long k) const {
    if (k % p_ == 0) fail(ErrorKind::usage, "galois_dot: exponent must be prime to p");
    const std::size_t n = static_cast<std::size_t>(g());
    const long N = F_->order();
    RatMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) m.set_row(r, coords(F_->galois(basis_[r], mod_floor(k, N))));
    return m;
}

Valuation AppendixTower::val_u(const AElem& x) const {
    Valuation v = F_->val_theta(x);
    if (v.is_infinite()) return v;
    if (v.value() % (p_ - 1)) fail(ErrorKind::consistency, "val_u of an element outside Q(pi_3) requested");
    return Valuation(v.value() / (p_ - 1));
}

std::vector<CheckLine> AppendixTower::sanity_checks() const {
    std::vector<CheckLine> out;
    const AmbientField& F = *F_;
    const long s = sigma_exponent();
    auto line = [&](std::string name, Valuation got, long want) {
        out.push_back(CheckLine{std::move(name), got == Valuation(want), std::to_string(want), got.str(), ""});
    };
    line("val_u(u)", val_u(u_), 1);
    line("val_u(v) = p", val_u(v_), p_);
    line("val_u(u^sigma - u) = 2", val_u(F.galois(u_, s) - u_), 2);
    line("val_u(v^sigma - v) = 2p + 1", val_u(F.galois(v_, s) - v_), 2 * p_ + 1);

    std::vector<AElem> upow;
    AElem x = F.one();
    for (long a = 0; a < g(); ++a) {
        upow.push_back(x);
        x = x * u_;
    }
    SubspaceSolver us(upow);
    std::vector<std::vector<Rat>> rows;
    for (const auto& b : basis_) rows.push_back(*us.solve(b));
    const long idx = ZpLattice::from_generators(p_, static_cast<std::size_t>(g()), rows).log_index();
    out.push_back(CheckLine{"u^i v^j is an S-basis of U", idx == 0, "0", std::to_string(idx),
                            "index of the basis in the u-power basis"});
    return out;
}

ConjectureReport check_conjecture_i(const AppendixTower& A, unsigned threads) {
    const long p = A.p(), g = A.g();
    const AmbientField& F = A.ambient();
    ConjectureReport rep;
    rep.bound = 2 * p + 3;
    rep.rows.resize(static_cast<std::size_t>(g));
    std::vector<long> exps(static_cast<std::size_t>(g));
    long e = 1;
    for (long k = 0; k < g; ++k) {
        exps[static_cast<std::size_t>(k)] = e;
        e = e * A.sigma_exponent() % F.order();
    }
    const AElem &u = A.u(), &v = A.v();
    const AElem up1 = F.pow(u, p - 1);
    parallel_for(static_cast<std::size_t>(g), threads, [&](std::size_t k) {
        const long t = exps[k];
        const AElem ut = F.galois(u, t), vt = F.galois(v, t);
        const AElem du = u - ut;
        const AElem utp = F.pow(ut, p), ut2p1 = F.pow(ut, 2 * p - 1);
        const AElem ut2p = ut2p1 * ut;
        const AElem expr = Rat(2) * (v - vt) + utp * du * up1 + (ut2p1 - ut2p) * du;
        ConjectureRow row;
        row.tau_exponent = t;
        row.achieved = A.val_u(expr);
        row.holds = row.achieved >= Valuation(rep.bound);
        rep.rows[k] = row;
    });
    rep.holds_for_all = true;
    for (const auto& r : rep.rows) rep.holds_for_all = rep.holds_for_all && r.holds;
    return rep;
}

long lambda_bound(const AppendixTower& A, long r, long r2, long m) {
    return -floor_div(A.k(r2) - A.k(r) - m, A.g());
}

bool congruent_mod_ideal(const AppendixTower& A, const RatMatrix& x, const RatMatrix& y, long m, std::string* where) {
    const long g = A.g();
    for (long r = 0; r < g; ++r)
        for (long r2 = 0; r2 < g; ++r2) {
            const Rat d = x(static_cast<std::size_t>(r), static_cast<std::size_t>(r2)) -
                          y(static_cast<std::size_t>(r), static_cast<std::size_t>(r2));
            const long b = lambda_bound(A, r, r2, m);
            if (val_p(d, A.p()) < Valuation(b)) {
                if (where)
                    *where = "entry (" + std::to_string(r) + "," + std::to_string(r2) + ") differs by " + d.get_str() +
                             ", needs v_p >= " + std::to_string(b);
                return false;
            }
        }
    return true;
}

TieModules tie_modules(const AppendixTower& A, const RatMatrix& u_d, const RatMatrix& v_d, const RatMatrix& u_e,
                       const RatMatrix& v_e, unsigned threads) {
    const long p = A.p(), g = A.g();
    const int B = working_precision(p);
    ResidueRing R(p, B);
    const std::size_t n = static_cast<std::size_t>(g), N = n * n;
    const ModMat Ud = to_mod(u_d, R), Vd = to_mod(v_d, R), Ue = to_mod(u_e, R), Ve = to_mod(v_e, R);
    const ModMat Uep = mod_pow(Ue, p), Uep1 = mod_pow(Ue, p - 1), Ue2p1 = mod_pow(Ue, 2 * p - 1);
    const ModMat C = Ue2p1 - Ue2p1 * Ue;
    auto D = [](const ModMat& x, const ModMat& f) { return f * x - x * f; };
    auto E = [&](const ModMat& f) {
        const ModMat du = D(Ue, f);
        return scaled(D(Ve, f), 2) + Uep * du * Uep1 + C * du;
    };

    std::vector<ModMat> base(N);
    for (std::size_t c = 0; c < N; ++c) {
        ModMat m(n, R.modulus());
        m(c / n, c % n) = lambda_weight(A, static_cast<long>(c / n), static_cast<long>(c % n));
        base[c] = std::move(m);
    }

    HowellModule W(R, N);
    // rows for one map given its images of the Lambda basis
    auto insert_map = [&](const std::vector<ModMat>& img, long m) {
        for (long r = 0; r < g; ++r)
            for (long r2 = 0; r2 < g; ++r2) {
                const long b = lambda_bound(A, r, r2, m);
                if (b <= 0) continue;
                if (b > B) fail(ErrorKind::resource, "working precision too small for the tie bounds");
                const std::uint64_t scale = R.pow_p(B - static_cast<int>(b));
                std::vector<std::uint64_t> row(N);
                bool nz = false;
                for (std::size_t c = 0; c < N; ++c) {
                    row[c] = R.mul(img[c](static_cast<std::size_t>(r), static_cast<std::size_t>(r2)), scale);
                    nz = nz || row[c];
                }
                if (nz) W.insert(std::move(row));
            }
    };
    // D_u^i o X^j for i, j < p with j >= j0; X is D_v or E
    auto sweep = [&](const std::function<ModMat(const ModMat&)>& X, const ModMat& U, long j0, long wu, long wx) {
        std::vector<ModMat> outer = base, inner(N);
        for (long j = 0; j < p; ++j) {
            if (j >= j0) {
                inner = outer;
                for (long i = 0; i < p; ++i) {
                    insert_map(inner, wu * i + wx * j);
                    if (i + 1 < p) parallel_for(N, threads, [&](std::size_t c) { inner[c] = D(U, inner[c]); });
                }
            }
            if (j + 1 < p) parallel_for(N, threads, [&](std::size_t c) { outer[c] = X(outer[c]); });
        }
    };

    TieModules T;
    T.precision = B;
    sweep([&](const ModMat& f) { return D(Vd, f); }, Ud, 0, 2, 2 * p + 1);
    T.lambda_D = W.log_size();
    T.rows_D = W.rows();
    sweep(E, Ue, 1, 2, 2 * p + 3);
    T.lambda_DE = W.log_size();
    T.rows_DE = W.rows();
    return T;
}

namespace {
HowellModule module_of(const AppendixTower& A, long precision, const std::vector<std::vector<std::uint64_t>>& rows) {
    ResidueRing R(A.p(), static_cast<int>(precision));
    HowellModule W(R, static_cast<std::size_t>(A.g() * A.g()));
    for (const auto& r : rows) W.insert(r);
    return W;
}
}  // namespace

bool same_modules(const AppendixTower& A, const TieModules& a, const TieModules& b) {
    if (a.precision != b.precision) return false;
    if (a.lambda_D != b.lambda_D || a.lambda_DE != b.lambda_DE) return false;
    HowellModule aD = module_of(A, a.precision, a.rows_D), bD = module_of(A, b.precision, b.rows_D);
    HowellModule aE = module_of(A, a.precision, a.rows_DE), bE = module_of(A, b.precision, b.rows_DE);
    return aD.contains(bD) && bD.contains(aD) && aE.contains(bE) && bE.contains(aE);
}

ColengthChain colength_chain(const AppendixTower& A, unsigned threads, bool force, TieModules* modules_out) {
    const long p = A.p(), g = A.g();
    if (p > 5 && !force)
        fail(ErrorKind::resource, "lattice work at p = " + std::to_string(p) + " runs in dimension p^4; pass force to run it");
    TieModules T = tie_modules(A, A.udot(), A.vdot(), A.udot(), A.vdot(), threads);
    const int B = static_cast<int>(T.precision);
    ResidueRing R(p, B), R1(p, B + 1);
    const std::size_t n = static_cast<std::size_t>(g), N = n * n;

    // Xi in Lambda coordinates: sigma^c u^a, entries below the k-diagonal divided by p
    const ModMat S = to_mod(A.sigmadot(), R1), U = to_mod(A.udot(), R1);
    std::vector<ModMat> spow(n), upow(n);
    ModMat x(n, R1.modulus());
    for (std::size_t i = 0; i < n; ++i) x(i, i) = 1;
    for (std::size_t c = 0; c < n; ++c) {
        spow[c] = x;
        x = x * S;
    }
    for (std::size_t i = 0; i < N; ++i) x.a[i] = 0;
    for (std::size_t i = 0; i < n; ++i) x(i, i) = 1;
    for (std::size_t a = 0; a < n; ++a) {
        upow[a] = x;
        x = x * U;
    }
    std::vector<std::vector<std::uint64_t>> gens(N);
    parallel_for(N, threads, [&](std::size_t idx) {
        const ModMat m = spow[idx / n] * upow[idx % n];
        std::vector<std::uint64_t> row(N);
        for (std::size_t c = 0; c < N; ++c) {
            std::uint64_t e = m.a[c];
            if (lambda_weight(A, static_cast<long>(c / n), static_cast<long>(c % n)) != 1) {
                if (e % static_cast<std::uint64_t>(p)) fail(ErrorKind::consistency, "Xi is not contained in Lambda");
                e /= static_cast<std::uint64_t>(p);
            }
            row[c] = e % R.modulus();
        }
        gens[idx] = std::move(row);
    });
    HowellModule X(R, N);
    for (auto& r : gens) X.insert(std::move(r));

    ColengthChain ch;
    ch.exact = true;
    for (std::size_t c = 0; c < N && ch.exact; ++c) {
        std::vector<std::uint64_t> e(N);
        e[c] = R.pow_p(B - 1);
        ch.exact = X.contains(e);
    }
    ch.xi_contained = true;
    const auto xr = X.rows();
    for (const auto& w : T.rows_DE) {
        for (const auto& xi : xr) {
            std::uint64_t s = 0;
            for (std::size_t c = 0; c < N; ++c)
                if (w[c] && xi[c]) s = R.add(s, R.mul(w[c], xi[c]));
            if (s) {
                ch.xi_contained = false;
                break;
            }
        }
        if (!ch.xi_contained) break;
    }
    ch.d_in_lambda = T.lambda_D;
    ch.de_in_d = T.lambda_DE - T.lambda_D;
    ch.xi_in_de = X.log_index() - T.lambda_DE;
    for (long r = 0; r < g; ++r)
        for (long r2 = 0; r2 < g; ++r2) ch.lambda_in_gamma += A.k(r) > A.k(r2) ? 1 : 0;
    ch.formula = p * p * (p * p + (p * p - p - 2) / 2);
    if (modules_out) *modules_out = std::move(T);
    return ch;
}

AppendixReport reduced_matrices(const AppendixTower& A, unsigned threads, const TieModules* base) {
    const long p = A.p();
    if (p != 3 && p != 5) fail(ErrorKind::usage, "reduced matrices are tabulated for p = 3 and p = 5 only");
    AppendixReport rep;
    auto add = [&](std::string name, bool ok, std::string exp, std::string act, std::string detail = "") {
        rep.checks.push_back(CheckLine{std::move(name), ok, std::move(exp), std::move(act), std::move(detail)});
    };
    if (p == 3) {
        const bool ue = A.udot() == displayed(3, "udot");
        add("udot equals the reference matrix", ue, "equal", ue ? "equal" : "different");
        const bool ve = A.vdot() == displayed(3, "vdot");
        add("vdot equals the reference matrix", ve, "equal", ve ? "equal" : "different");
        const bool se = A.galois_dot(2) == displayed(3, "sigmadot_zeta2");
        add("(zeta -> zeta^2)dot equals the reference matrix", se, "equal", se ? "equal" : "different",
            "the reference generator of C_9 is zeta -> zeta^2");
    }
    struct Red {
        const char* name;
        bool is_u;
        long m;
    };
    // dddot first, then ddot
    const std::vector<Red> reds = p == 3 ? std::vector<Red>{{"udot_mod6", true, 6},
                                                            {"udot_mod3", true, 3},
                                                            {"vdot_mod15", false, 15},
                                                            {"vdot_mod12", false, 12}}
                                         : std::vector<Red>{{"udot_mod31", true, 31},
                                                            {"udot_mod5", true, 5},
                                                            {"vdot_mod40", false, 40},
                                                            {"vdot_mod30", false, 30}};
    std::vector<RatMatrix> mats;
    for (const auto& r : reds) {
        RatMatrix ref = displayed(p, r.name);
        const RatMatrix printed = displayed(p, r.name, false);
        if (!(printed == ref)) {
            // the printed matrix must fail exactly at the listed entries and nowhere else
            const RatMatrix& X = r.is_u ? A.udot() : A.vdot();
            std::string bad, listed;
            for (long i = 0; i < A.g(); ++i)
                for (long j = 0; j < A.g(); ++j) {
                    const std::size_t a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
                    if (val_p(X(a, b) - printed(a, b), p) < Valuation(lambda_bound(A, i, j, r.m)))
                        bad += (bad.empty() ? "" : " ") + std::to_string(i) + "," + std::to_string(j);
                }
            for (const auto& e : displayed_errata())
                if (e.p == p && r.name == std::string(e.name))
                    listed += (listed.empty() ? "" : " ") + std::to_string(e.row) + "," + std::to_string(e.col);
            std::string detail;
            for (const auto& e : displayed_errata())
                if (e.p == p && r.name == std::string(e.name))
                    detail += (detail.empty() ? "" : "; ") + std::string("(") + std::to_string(e.row) + "," +
                              std::to_string(e.col) + ") printed " + e.printed + ", congruence needs " + e.corrected;
            add(std::string("printed ") + r.name + " fails only at the listed errata", bad == listed, listed, bad, detail);
        }
        std::string where;
        const bool ok = congruent_mod_ideal(A, r.is_u ? A.udot() : A.vdot(), ref, r.m, &where);
        const std::string lhs = r.is_u ? "udot" : "vdot";
        add(lhs + " = reference mod udot^" + std::to_string(r.m) + " Lambda", ok, "congruent", ok ? "congruent" : "not congruent",
            where);
        mats.push_back(std::move(ref));
    }
    TieModules own;
    if (!base) {
        own = tie_modules(A, A.udot(), A.vdot(), A.udot(), A.vdot(), threads);
        base = &own;
    }
    const RatMatrix &u3 = mats[0], &u2 = mats[1], &v3 = mats[2], &v2 = mats[3];
    TieModules red = tie_modules(A, u2, v2, u3, v3, threads);
    const long B = base->precision;
    HowellModule bD = module_of(A, B, base->rows_D), rD = module_of(A, B, red.rows_D);
    HowellModule bE = module_of(A, B, base->rows_DE), rE = module_of(A, B, red.rows_DE);
    const bool eqD = bD.contains(rD) && rD.contains(bD);
    const bool eqE = bE.contains(rE) && rE.contains(bE);
    add("Lambda^D from (ddot u, ddot v) equals Lambda^D from (udot, vdot)", eqD, std::to_string(base->lambda_D),
        std::to_string(red.lambda_D), "colength in Lambda");
    add("Lambda^{D,E} with E from (dddot u, dddot v) equals Lambda^{D,E} from (udot, vdot)", eqE,
        std::to_string(base->lambda_DE), std::to_string(red.lambda_DE), "colength in Lambda");
    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.ok;
    return rep;
}

}  // namespace tgr
