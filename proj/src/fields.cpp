#include "tgr/fields.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace tgr {

// ---------------------------------------------------------------------------
// polynomials

RatPoly poly_trim(RatPoly a) {
    while (!a.empty() && is_zero(a.back())) a.pop_back();
    return a;
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return poly_trim(r);
}

RatPoly poly_derivative(const RatPoly& a) {
    RatPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
    return poly_trim(d);
}

std::string poly_str(const RatPoly& a0, const std::string& var) {
    RatPoly a = poly_trim(a0);
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = a.size(); k-- > 0;) {
        const Rat& c = a[k];
        if (is_zero(c)) continue;
        Rat ac = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = ac == 1;
        if (!unit || k == 0) os << ac.get_str();
        if (k > 0) {
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

static Rat det_rat(RatMatrix M) {
    const std::size_t n = M.rows();
    Rat det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = n;
        for (std::size_t i = k; i < n; ++i)
            if (!is_zero(M(i, k))) {
                pr = i;
                break;
            }
        if (pr == n) return Rat(0);
        if (pr != k) {
            M.swap_rows(pr, k);
            det = -det;
        }
        det *= M(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (is_zero(M(i, k))) continue;
            Rat f = M(i, k) / M(k, k);
            M.add_row(i, k, -f);
        }
    }
    return det;
}

Rat resultant(const RatPoly& f0, const RatPoly& g0) {
    RatPoly f = poly_trim(f0), g = poly_trim(g0);
    if (f.empty() || g.empty()) return Rat(0);
    const std::size_t m = f.size() - 1, n = g.size() - 1;
    if (m + n == 0) return Rat(1);
    RatMatrix S(m + n, m + n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) S(i, i + j) = f[m - j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) S(n + i, i + j) = g[n - j];
    return det_rat(S);
}

Rat poly_discriminant(const RatPoly& f0) {
    RatPoly f = poly_trim(f0);
    const long d = static_cast<long>(f.size()) - 1;
    Rat r = resultant(f, poly_derivative(f)) / f.back();
    if ((d * (d - 1) / 2) % 2) r = -r;
    return r;
}

// ---------------------------------------------------------------------------
// number fields

NumberField::NumberField(long p, RatPoly f, std::string gen_name)
    : p_(p), f_(poly_trim(std::move(f))), name_(std::move(gen_name)) {
    if (f_.size() < 2 || f_.back() != 1) fail(ErrorKind::usage, "number field modulus must be monic of degree >= 1");
    d_ = f_.size() - 1;
    for (std::size_t i = 0; i < d_; ++i)
        if (val_p(f_[i], p) < Valuation(1)) fail(ErrorKind::precondition, "modulus is not Eisenstein at p");
    if (val_p(f_[0], p) != Valuation(1)) fail(ErrorKind::precondition, "modulus is not Eisenstein at p");
}

std::vector<Rat> NumberField::mul(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
    std::vector<Rat> r(2 * d_ - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!is_zero(b[j])) r[i + j] += a[i] * b[j];
    }
    for (std::size_t k = r.size(); k-- > d_;) {
        if (is_zero(r[k])) continue;
        Rat c = r[k];
        r[k] = 0;
        for (std::size_t i = 0; i < d_; ++i)
            if (!is_zero(f_[i])) r[k - d_ + i] -= c * f_[i];
    }
    r.resize(d_);
    return r;
}

std::vector<Rat> NumberField::inv(const std::vector<Rat>& a) const {
    // rows: coordinates of x^i * a; solve y * M = e_0
    RatMatrix M(d_, d_);
    std::vector<Rat> xi(d_);
    xi[0] = 1;
    for (std::size_t i = 0; i < d_; ++i) {
        auto r = mul(xi, a);
        for (std::size_t j = 0; j < d_; ++j) M(i, j) = r[j];
        std::vector<Rat> x(d_);
        if (d_ > 1) x[1] = 1;
        xi = d_ > 1 ? mul(xi, x) : xi;
    }
    // Gauss-Jordan on [M^T | e_0]
    RatMatrix A = M.transpose();
    std::vector<Rat> rhs(d_);
    rhs[0] = 1;
    for (std::size_t k = 0; k < d_; ++k) {
        std::size_t pr = d_;
        for (std::size_t i = k; i < d_; ++i)
            if (!is_zero(A(i, k))) {
                pr = i;
                break;
            }
        if (pr == d_) fail(ErrorKind::domain, "inverse of zero in number field");
        A.swap_rows(k, pr);
        std::swap(rhs[k], rhs[pr]);
        Rat piv = A(k, k);
        for (std::size_t i = 0; i < d_; ++i) {
            if (i == k || is_zero(A(i, k))) continue;
            Rat f = A(i, k) / piv;
            A.add_row(i, k, -f);
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<Rat> y(d_);
    for (std::size_t i = 0; i < d_; ++i) y[i] = rhs[i] / A(i, i);
    return y;
}

Valuation NumberField::val(const std::vector<Rat>& a) const {
    Valuation best = Valuation::infinite();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        Valuation v(static_cast<long>(d_) * val_p(a[i], p_).value() + static_cast<long>(i));
        if (v < best) best = v;
    }
    return best;
}

KElem::KElem(FieldPtr F, std::vector<Rat> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
    if (F_ && c_.size() > F_->degree()) {
        std::vector<Rat> one(F_->degree());
        one[0] = 1;
        c_ = F_->mul(c_, one);
    }
    if (!F_ && c_.size() > 1) fail(ErrorKind::usage, "rational KElem with several coefficients");
    trim();
}

KElem KElem::gen(const FieldPtr& F) {
    if (F->degree() == 1) return KElem(-F->modulus()[0]);
    return KElem(F, {Rat(0), Rat(1)});
}

void KElem::trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
}

std::vector<Rat> KElem::coeffs() const {
    std::vector<Rat> r = c_;
    r.resize(F_ ? F_->degree() : 1);
    return r;
}

bool KElem::is_rational() const { return c_.size() <= 1; }

Rat KElem::rational() const {
    if (!is_rational()) fail(ErrorKind::domain, "number field element is not rational");
    return c_.empty() ? Rat(0) : c_[0];
}

static const FieldPtr& pick_field(const KElem& a, const KElem& b) {
    if (a.field() && b.field() && a.field() != b.field()) fail(ErrorKind::usage, "mixing elements of different fields");
    return a.field() ? a.field() : b.field();
}

KElem& KElem::operator+=(const KElem& o) {
    F_ = pick_field(*this, o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

KElem& KElem::operator-=(const KElem& o) {
    F_ = pick_field(*this, o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

KElem operator-(KElem a) {
    for (auto& x : a.c_) x = -x;
    return a;
}

KElem operator*(const KElem& a, const KElem& b) {
    const FieldPtr& F = pick_field(a, b);
    if (a.c_.empty() || b.c_.empty()) return KElem(F, {});
    if (a.is_rational() || b.is_rational()) {
        const KElem& r = a.is_rational() ? a : b;
        const KElem& o = a.is_rational() ? b : a;
        KElem out = o;
        out.F_ = F;
        for (auto& x : out.c_) x *= r.c_[0];
        return out;
    }
    return KElem(F, F->mul(a.c_, b.c_));
}

KElem operator/(const KElem& a, const KElem& b) {
    if (b.c_.empty()) fail(ErrorKind::domain, "division by zero");
    const FieldPtr& F = pick_field(a, b);
    if (b.is_rational()) {
        KElem out = a;
        out.F_ = F;
        for (auto& x : out.c_) x /= b.c_[0];
        return out;
    }
    return a * KElem(F, F->inv(b.c_));
}

bool is_zero(const KElem& a) { return a.c_.empty(); }

std::string KElem::str() const {
    if (c_.empty()) return "0";
    if (is_rational()) return c_[0].get_str();
    return "(" + poly_str(c_, F_->gen_name()) + ")";
}

Valuation kval(const KElem& x, long p, long e) {
    if (is_zero(x)) return Valuation::infinite();
    if (x.field()) return x.field()->val(x.coeffs());
    return Valuation(e * val_p(x.rational(), p).value());
}

std::string kmatrix_str(const KMatrix& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
    }
    os << "]";
    return os.str();
}

RatMatrix to_rat_matrix(const KMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).rational();
    return r;
}

KMatrix to_kmatrix(const RatMatrix& m) {
    KMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = KElem(m(i, j));
    return r;
}

// ---------------------------------------------------------------------------
// ambient cyclotomic field

AmbientField::AmbientField(long p, long n) : p_(p), n_(n) {
    require_odd_prime(p);
    if (n < 1) fail(ErrorKind::usage, "cyclotomic level must be >= 1");
    m_ = int_pow(p, static_cast<unsigned long>(n - 1)).get_si();
    N_ = m_ * p;
    phi_ = m_ * (p - 1);
}

AElem AmbientField::zero() const {
    AElem a;
    a.F = this;
    a.c.assign(static_cast<std::size_t>(phi_), Int(0));
    return a;
}

AElem AmbientField::from_rat(const Rat& r) const {
    AElem a = zero();
    a.c[0] = r.get_num();
    a.den = r.get_den();
    return a;
}

AElem AmbientField::zeta_pow(long e) const {
    std::vector<Int> cyc(static_cast<std::size_t>(N_));
    cyc[static_cast<std::size_t>(mod_floor(e, N_))] = 1;
    return reduce_cyclic(std::move(cyc), Int(1));
}

void AmbientField::normalize(AElem& a) const {
    if (sgn(a.den) < 0) {
        a.den = -a.den;
        for (auto& x : a.c) x = -x;
    }
    Int g = a.den;
    for (const auto& x : a.c) {
        if (g == 1) break;
        if (sgn(x)) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g != 1) {
        a.den /= g;
        for (auto& x : a.c)
            if (sgn(x)) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
}

AElem AmbientField::reduce_cyclic(std::vector<Int> cyc, Int den) const {
    // zeta^{(p-1)m} = -sum_{k<p-1} zeta^{km}; one top-down pass suffices
    for (long e = N_ - 1; e >= phi_; --e) {
        Int& x = cyc[static_cast<std::size_t>(e)];
        if (sgn(x) == 0) continue;
        for (long k = 0; k <= p_ - 2; ++k) cyc[static_cast<std::size_t>(e - (p_ - 1 - k) * m_)] -= x;
        x = 0;
    }
    AElem a;
    a.F = this;
    cyc.resize(static_cast<std::size_t>(phi_));
    a.c = std::move(cyc);
    a.den = std::move(den);
    normalize(a);
    return a;
}

AElem AmbientField::pow(const AElem& a, long e) const {
    if (e < 0) fail(ErrorKind::usage, "negative power in ambient field");
    AElem r = one(), b = a;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

AElem AmbientField::galois(const AElem& a, long k) const {
    if (k % p_ == 0) fail(ErrorKind::usage, "Galois exponent must be coprime to p");
    std::vector<Int> cyc(static_cast<std::size_t>(N_));
    for (long i = 0; i < phi_; ++i)
        if (sgn(a.c[static_cast<std::size_t>(i)]))
            cyc[static_cast<std::size_t>(mod_floor(i * k, N_))] += a.c[static_cast<std::size_t>(i)];
    return reduce_cyclic(std::move(cyc), a.den);
}

Valuation AmbientField::val_theta(const AElem& a) const {
    if (a.is_zero()) return Valuation::infinite();
    // Taylor shift zeta = 1 + theta; Phi(1 + theta) is Eisenstein of degree phi
    std::vector<Int> d = a.c;
    const long n = phi_;
    for (long i = 0; i < n; ++i)
        for (long j = n - 2; j >= i; --j)
            if (sgn(d[static_cast<std::size_t>(j + 1)])) d[static_cast<std::size_t>(j)] += d[static_cast<std::size_t>(j + 1)];
    long best = -1;
    bool have = false;
    for (long j = 0; j < n; ++j) {
        if (sgn(d[static_cast<std::size_t>(j)]) == 0) continue;
        long v = n * val_int(d[static_cast<std::size_t>(j)], p_) + j;
        if (!have || v < best) {
            best = v;
            have = true;
        }
    }
    return Valuation(best - n * val_int(a.den, p_));
}

Rat AmbientField::norm(const AElem& a) const {
    AElem r = one();
    for (long k = 1; k < N_; ++k)
        if (k % p_ != 0) r = r * galois(a, k);
    for (long i = 1; i < phi_; ++i)
        if (sgn(r.c[static_cast<std::size_t>(i)])) fail(ErrorKind::consistency, "norm is not rational");
    return Rat(r.c[0], r.den);
}

bool AElem::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Int& x) { return sgn(x) == 0; });
}

std::vector<Rat> AElem::coeffs() const {
    std::vector<Rat> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        r[i] = Rat(c[i], den);
        r[i].canonicalize();
    }
    return r;
}

static AElem add_sub(const AElem& a, const AElem& b, bool sub) {
    const AmbientField* F = a.F ? a.F : b.F;
    AElem r;
    r.F = F;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    r.den = a.den * b.den;
    if (a.den == b.den) r.den = a.den;
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        Int x = i < a.c.size() ? a.c[i] : Int(0);
        Int y = i < b.c.size() ? b.c[i] : Int(0);
        if (a.den != b.den) {
            x *= b.den;
            y *= a.den;
        }
        r.c[i] = sub ? Int(x - y) : Int(x + y);
    }
    F->normalize(r);
    return r;
}

AElem operator+(const AElem& a, const AElem& b) { return add_sub(a, b, false); }
AElem operator-(const AElem& a, const AElem& b) { return add_sub(a, b, true); }

AElem operator*(const AElem& a, const AElem& b) {
    const AmbientField* F = a.F;
    const std::size_t N = static_cast<std::size_t>(F->order());
    std::vector<Int> cyc(N);
    std::vector<std::size_t> nzb;
    for (std::size_t j = 0; j < b.c.size(); ++j)
        if (sgn(b.c[j])) nzb.push_back(j);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (sgn(a.c[i]) == 0) continue;
        for (std::size_t j : nzb) {
            std::size_t k = i + j;
            if (k >= N) k -= N;
            mpz_addmul(cyc[k].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
        }
    }
    return F->reduce_cyclic(std::move(cyc), a.den * b.den);
}

AElem operator*(const Rat& r, const AElem& a) {
    AElem out = a;
    for (auto& x : out.c) x *= r.get_num();
    out.den *= r.get_den();
    a.F->normalize(out);
    return out;
}

bool operator==(const AElem& a, const AElem& b) { return (a - b).is_zero(); }

AElem make_pi(const AmbientField& F, long level) {
    if (level < 1 || level > F.n()) fail(ErrorKind::usage, "make_pi: level outside the ambient field");
    const long p = F.p();
    const long N = F.order();
    const long step = N / int_pow(p, static_cast<unsigned long>(level)).get_si();  // zeta_{p^level} = zeta^step
    const long ql = int_pow(p, static_cast<unsigned long>(level)).get_si();
    const long ex = int_pow(p, static_cast<unsigned long>(level - 1)).get_si();
    AElem r = F.one();
    for (long j = 1; j < p; ++j) {
        // j^{p^{level-1}} mod p^level
        Int e;
        Int base(j), exp(ex), mod(ql);
        mpz_powm(e.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
        r = r * (F.zeta_pow(e.get_si() * step) - F.one());
    }
    return r;
}

// ---------------------------------------------------------------------------

SubspaceSolver::SubspaceSolver(const std::vector<AElem>& family) : k_(family.size()) {
    if (family.empty()) return;
    dim_ = family[0].c.size();
    for (const auto& f : family) cols_.push_back(f.coeffs());
    // first-nonzero pivoting on the dim x k matrix with columns = family
    RatMatrix A(dim_, k_);
    for (std::size_t j = 0; j < k_; ++j)
        for (std::size_t i = 0; i < dim_; ++i) A(i, j) = cols_[j][i];
    std::vector<bool> used(dim_, false);
    for (std::size_t j = 0; j < k_; ++j) {
        std::size_t pr = dim_;
        for (std::size_t i = 0; i < dim_; ++i)
            if (!used[i] && !is_zero(A(i, j))) {
                pr = i;
                break;
            }
        if (pr == dim_) fail(ErrorKind::consistency, "subspace family is linearly dependent");
        used[pr] = true;
        prow_.push_back(pr);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (i == pr || is_zero(A(i, j))) continue;
            Rat f = A(i, j) / A(pr, j);
            for (std::size_t c = j; c < k_; ++c)
                if (!is_zero(A(pr, c))) A(i, c) -= f * A(pr, c);
        }
    }
    // invert the pivot-row submatrix of the original family
    RatMatrix P(k_, k_);
    for (std::size_t r = 0; r < k_; ++r)
        for (std::size_t j = 0; j < k_; ++j) P(r, j) = cols_[j][prow_[r]];
    RatMatrix I = RatMatrix::identity(k_);
    for (std::size_t c = 0; c < k_; ++c) {
        std::size_t pr = k_;
        for (std::size_t r = c; r < k_; ++r)
            if (!is_zero(P(r, c))) {
                pr = r;
                break;
            }
        if (pr == k_) fail(ErrorKind::consistency, "singular pivot submatrix");
        P.swap_rows(c, pr);
        I.swap_rows(c, pr);
        Rat piv = P(c, c);
        for (std::size_t j = 0; j < k_; ++j) {
            P(c, j) /= piv;
            I(c, j) /= piv;
        }
        for (std::size_t r = 0; r < k_; ++r) {
            if (r == c || is_zero(P(r, c))) continue;
            Rat f = P(r, c);
            P.add_row(r, c, -f);
            I.add_row(r, c, -f);
        }
    }
    inv_ = I;
}

std::optional<std::vector<Rat>> SubspaceSolver::solve(const AElem& x) const {
    std::vector<Rat> xv = x.coeffs();
    std::vector<Rat> xp(k_);
    for (std::size_t r = 0; r < k_; ++r) xp[r] = xv[prow_[r]];
    // c = P^{-1} x_P with P(r, j) = family_j[prow_r]
    std::vector<Rat> c(k_);
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t r = 0; r < k_; ++r)
            if (!is_zero(inv_(i, r)) && !is_zero(xp[r])) c[i] += inv_(i, r) * xp[r];
    std::vector<Rat> back(dim_);
    for (std::size_t j = 0; j < k_; ++j) {
        if (is_zero(c[j])) continue;
        for (std::size_t i = 0; i < dim_; ++i)
            if (!is_zero(cols_[j][i])) back[i] += c[j] * cols_[j][i];
    }
    for (std::size_t i = 0; i < dim_; ++i)
        if (back[i] != xv[i]) return std::nullopt;
    return c;
}

RatPoly minimal_polynomial_q(const AmbientField& F, const AElem& x) {
    // incremental echelon of the powers of x with tracked combinations
    struct Row {
        std::vector<Rat> v, comb;
        std::size_t piv;
    };
    std::vector<Row> rows;
    AElem power = F.one();
    for (std::size_t k = 0;; ++k) {
        std::vector<Rat> v = power.coeffs();
        std::vector<Rat> comb(k + 1);
        comb[k] = 1;
        for (auto& r : rows) {
            if (is_zero(v[r.piv])) continue;
            Rat f = v[r.piv];
            for (std::size_t i = r.piv; i < v.size(); ++i)
                if (!is_zero(r.v[i])) v[i] -= f * r.v[i];
            for (std::size_t i = 0; i < r.comb.size(); ++i)
                if (!is_zero(r.comb[i])) comb[i] -= f * r.comb[i];
        }
        std::size_t piv = 0;
        while (piv < v.size() && is_zero(v[piv])) ++piv;
        if (piv == v.size()) return poly_trim(comb);  // comb(x) = 0, monic in x^k
        Rat inv = 1 / v[piv];
        for (auto& y : v) y *= inv;
        for (auto& y : comb) y *= inv;
        rows.push_back(Row{std::move(v), std::move(comb), piv});
        power = power * x;
    }
}

const char* level_name(Level l) {
    switch (l) {
        case Level::Q: return "Q";
        case Level::K: return "K";
        case Level::L: return "L";
        case Level::Ambient: return "ambient";
    }
    return "?";
}

ParameterRow parameter_table(long p, long n, TowerKind kind) {
    require_odd_prime(p);
    if (n < 2) fail(ErrorKind::usage, "parameter table needs n >= 2");
    ParameterRow r;
    const long pn1 = int_pow(p, static_cast<unsigned long>(n - 1)).get_si();
    const long pn2 = int_pow(p, static_cast<unsigned long>(n - 2)).get_si();
    if (kind == TowerKind::cyclotomic_theta) {
        r.b = pn1 - 1;
        r.b_under = pn2 - 1;
    } else {
        r.b = (pn1 - 1) / (p - 1);
        r.b_under = (pn2 - 1) / (p - 1);
    }
    r.b_bar = r.b - p * r.b_under;
    r.different_valuation = (p - 1) * (1 + r.b);
    r.discriminant_valuation = r.different_valuation;
    return r;
}

long b_from_discriminant(long p, long disc_val) {
    if (disc_val % (p - 1) != 0) fail(ErrorKind::precondition, "discriminant valuation not divisible by p-1");
    return disc_val / (p - 1) - 1;
}

// ---------------------------------------------------------------------------
// towers

std::shared_ptr<const ExtensionTower> ExtensionTower::cyclotomic(long p, long n) {
    require_odd_prime(p);
    if (n < 2) fail(ErrorKind::usage, "tower level n must be >= 2");
    std::shared_ptr<ExtensionTower> T(new ExtensionTower());
    T->p_ = p;
    T->n_ = n;
    T->amb_ = std::make_shared<AmbientField>(p, n);
    const AmbientField& F = *T->amb_;
    T->e_ = int_pow(p, static_cast<unsigned long>(n - 2)).get_si();
    T->t_ = make_pi(F, n);
    T->s_ = make_pi(F, n - 1);
    T->theta_ = F.zeta_pow(1) - F.one();
    if (n >= 3) {
        RatPoly f = minimal_polynomial_q(F, T->s_);
        T->K_ = std::make_shared<NumberField>(p, f, "pi_" + std::to_string(n - 1));
    }
    AElem sp = F.one();
    for (long a = 0; a < T->e_; ++a) {
        T->s_pows_.push_back(sp);
        sp = sp * T->s_;
    }
    T->K_solver_ = std::make_shared<SubspaceSolver>(T->s_pows_);
    std::vector<AElem> lb;
    AElem tp = F.one();
    for (long i = 0; i < p; ++i) {
        for (long a = 0; a < T->e_; ++a) lb.push_back(T->s_pows_[static_cast<std::size_t>(a)] * tp);
        tp = tp * T->t_;
    }
    T->L_solver_ = std::make_shared<SubspaceSolver>(lb);

    T->sigma_k_ = 1 + int_pow(p, static_cast<unsigned long>(n - 1)).get_si();

    // mu_{t,K} as the product over sigma-conjugates
    std::vector<AElem> poly{F.one()};
    AElem conj = T->t_;
    for (long i = 0; i < p; ++i) {
        std::vector<AElem> next(poly.size() + 1, F.zero());
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] = next[k + 1] + poly[k];
            next[k] = next[k] - poly[k] * conj;
        }
        poly = std::move(next);
        conj = F.galois(conj, T->sigma_k_);
    }
    if (!(conj == T->t_)) fail(ErrorKind::consistency, "sigma does not have order p on t");
    for (const auto& c : poly) {
        auto k = T->to_K(c);
        if (!k) fail(ErrorKind::consistency, "coefficient of mu_t not in K");
        T->mu_t_.push_back(*k);
    }

    const std::size_t g = static_cast<std::size_t>(p);
    T->tdot_ = KMatrix(g, g);
    T->sigmadot_ = KMatrix(g, g);
    AElem ti = F.one();
    const AElem tsig = F.galois(T->t_, T->sigma_k_);
    AElem tsi = F.one();
    for (std::size_t i = 0; i < g; ++i) {
        T->tdot_.set_row(i, T->t_coords(ti * T->t_));
        T->sigmadot_.set_row(i, T->t_coords(tsi));
        ti = ti * T->t_;
        tsi = tsi * tsig;
    }

    Valuation vb = T->val_at(tsig - T->t_, Level::L);
    T->b_ = vb.value() - 1;
    T->b_under_ = floor_div(T->b_, p);
    T->b_bar_ = mod_floor(T->b_, p);

    // different: mu_t'(t)
    AElem der = F.zero();
    AElem tk = F.one();
    for (std::size_t j = 1; j < T->mu_t_.size(); ++j) {
        der = der + Rat(static_cast<long>(j)) * (T->from_K(T->mu_t_[j]) * tk);
        tk = tk * T->t_;
    }
    T->diff_val_ = T->val_at(der, Level::L).value();
    T->disc_val_ = T->val_at(T->trace_norm(der, Level::L, Level::K, true), Level::K).value();
    return T;
}

KElem ExtensionTower::s() const {
    if (!K_) return KElem(Rat(p_));
    return KElem::gen(K_);
}

KElem ExtensionTower::s_pow(long k) const {
    KElem base = k >= 0 ? s() : KElem(1) / s();
    KElem r(1);
    for (long i = 0; i < std::labs(k); ++i) r = r * base;
    return r;
}

Valuation ExtensionTower::val_at(const AElem& x, Level lvl) const {
    Valuation v = amb_->val_theta(x);
    if (v.is_infinite()) return v;
    long div = 1;
    switch (lvl) {
        case Level::Ambient: div = 1; break;
        case Level::L: div = p_ - 1; break;
        case Level::K: div = p_ * (p_ - 1); break;
        case Level::Q: div = amb_->degree(); break;
    }
    if (v.value() % div != 0)
        fail(ErrorKind::consistency, std::string("valuation not integral at level ") + level_name(lvl));
    return Valuation(v.value() / div);
}

std::optional<KElem> ExtensionTower::to_K(const AElem& x) const {
    auto c = K_solver_->solve(x);
    if (!c) return std::nullopt;
    if (!K_) return KElem((*c)[0]);
    return KElem(K_, *c);
}

AElem ExtensionTower::from_K(const KElem& x) const {
    auto c = x.coeffs();
    AElem r = amb_->zero();
    for (std::size_t a = 0; a < c.size(); ++a)
        if (!is_zero(c[a])) r = r + c[a] * s_pows_[a];
    return r;
}

std::vector<KElem> ExtensionTower::t_coords(const AElem& x) const {
    auto c = L_solver_->solve(x);
    if (!c) fail(ErrorKind::domain, "element does not lie in L");
    std::vector<KElem> r;
    const std::size_t e = static_cast<std::size_t>(e_);
    for (long i = 0; i < p_; ++i) {
        std::vector<Rat> k(c->begin() + static_cast<long>(i * e_), c->begin() + static_cast<long>((i + 1) * e_));
        if (!K_) r.emplace_back(k[0]);
        else r.emplace_back(K_, std::move(k));
    }
    (void)e;
    return r;
}

AElem ExtensionTower::from_t_coords(const std::vector<KElem>& v) const {
    AElem r = amb_->zero();
    AElem tp = amb_->one();
    for (const auto& x : v) {
        if (!is_zero(x)) r = r + from_K(x) * tp;
        tp = tp * t_;
    }
    return r;
}

KMatrix ExtensionTower::mult_matrix(const std::vector<KElem>& y) const {
    const std::size_t g = static_cast<std::size_t>(p_);
    KMatrix r(g, g);
    KMatrix tp = KMatrix::identity(g);
    for (std::size_t k = 0; k < g; ++k) {
        if (!is_zero(y[k])) r = r + y[k] * tp;
        tp = tp * tdot_;
    }
    return r;
}

std::vector<long> ExtensionTower::fixing_group(Level l) const {
    const long N = amb_->order();
    const long Nk = N / p_;
    std::vector<long> out;
    for (long k = 1; k < N; ++k) {
        if (k % p_ == 0) continue;
        bool keep = false;
        switch (l) {
            case Level::Ambient: keep = k == 1; break;
            case Level::Q: keep = true; break;
            case Level::L: {
                Int r;
                mpz_powm_ui(r.get_mpz_t(), Int(k).get_mpz_t(), static_cast<unsigned long>(p_ - 1), Int(N).get_mpz_t());
                keep = r == 1;
                break;
            }
            case Level::K: {
                Int r;
                mpz_powm_ui(r.get_mpz_t(), Int(k).get_mpz_t(), static_cast<unsigned long>(p_ - 1), Int(Nk).get_mpz_t());
                keep = r == 1;
                break;
            }
        }
        if (keep) out.push_back(k);
    }
    return out;
}

AElem ExtensionTower::trace_norm(const AElem& x, Level from, Level to, bool norm) const {
    auto Hf = fixing_group(from);
    auto Ht = fixing_group(to);
    std::set<long> hf(Hf.begin(), Hf.end());
    if (!std::includes(Ht.begin(), Ht.end(), Hf.begin(), Hf.end()))
        fail(ErrorKind::usage, "trace_norm: target is not a subfield of the source");
    const long N = amb_->order();
    std::set<long> covered;
    AElem acc = norm ? amb_->one() : amb_->zero();
    for (long k : Ht) {
        if (covered.count(k)) continue;
        for (long h : Hf) covered.insert(mod_floor(k * h, N));
        AElem c = amb_->galois(x, k);
        acc = norm ? acc * c : acc + c;
    }
    return acc;
}

std::string ExtensionTower::ring_name() const {
    std::string base = "Z_(" + std::to_string(p_) + ")";
    if (n_ == 2) return base;
    return base + "[pi_" + std::to_string(n_ - 1) + "]";
}

std::string ExtensionTower::unif_name() const {
    if (n_ == 2) return std::to_string(p_);
    return "pi_" + std::to_string(n_ - 1);
}

}  // namespace tgr
