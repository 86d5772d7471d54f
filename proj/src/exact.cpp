#include "tgr/exact.hpp"

#include <sstream>

namespace tgr {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::usage: return "usage error";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::precondition: return "precondition error";
        case ErrorKind::consistency: return "internal-consistency error";
        case ErrorKind::resource: return "resource error";
    }
    return "error";
}

long Valuation::value() const {
    if (inf_) fail(ErrorKind::domain, "valuation is +infinity");
    return v_;
}

std::string Valuation::str() const { return inf_ ? std::string("+inf") : std::to_string(v_); }

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void require_odd_prime(long p) {
    if (p < 3 || !is_prime(p)) fail(ErrorKind::usage, "p must be an odd prime");
}

long val_int(const Int& x, long p) {
    if (sgn(x) == 0) fail(ErrorKind::domain, "val_int of zero");
    Int r;
    Int f(p);
    return static_cast<long>(mpz_remove(r.get_mpz_t(), x.get_mpz_t(), f.get_mpz_t()));
}

Valuation val_p(const Int& x, long p) {
    if (!is_prime(p)) fail(ErrorKind::usage, "val_p: modulus is not prime");
    if (sgn(x) == 0) return Valuation::infinite();
    return Valuation(val_int(x, p));
}

Valuation val_p(const Rat& x, long p) {
    if (!is_prime(p)) fail(ErrorKind::usage, "val_p: modulus is not prime");
    if (sgn(x) == 0) return Valuation::infinite();
    return Valuation(val_int(x.get_num(), p) - val_int(x.get_den(), p));
}

Int int_pow(long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), e);
    if (base < 0 && (e & 1)) r = -r;
    return r;
}

Rat rat_pow(long base, long e) {
    if (e >= 0) return Rat(int_pow(base, static_cast<unsigned long>(e)));
    return Rat(Int(1), int_pow(base, static_cast<unsigned long>(-e)));
}

Int binom(long a, long b) {
    if (b < 0 || a < 0 || b > a) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
}

long floor_div(long i, long g) {
    if (g <= 0) fail(ErrorKind::usage, "index split needs g >= 1");
    long q = i / g;
    if (i % g != 0 && i < 0) --q;
    return q;
}

long mod_floor(long i, long g) { return i - g * floor_div(i, g); }

Valuation ModuleDescription::length() const {
    if (free_rank > 0) return Valuation::infinite();
    long s = 0;
    for (long e : torsion) s += e;
    return Valuation(s);
}

std::string ModuleDescription::str(const std::string& ring, const std::string& unif) const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    for (long i = 0; i < free_rank; ++i) {
        sep();
        os << ring;
    }
    for (long e : torsion) {
        sep();
        os << ring << "/" << unif;
        if (e != 1) os << "^" << e;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------

ZpLattice ZpLattice::standard(long p, std::size_t dim) {
    std::vector<std::vector<Rat>> g(dim, std::vector<Rat>(dim));
    for (std::size_t i = 0; i < dim; ++i) g[i][i] = 1;
    return from_generators(p, dim, g);
}

ZpLattice ZpLattice::from_generators(long p, std::size_t dim, const std::vector<std::vector<Rat>>& gens) {
    ZpLattice L(p, dim);
    std::vector<std::vector<Rat>> work;
    for (const auto& g : gens) {
        if (g.size() != dim) fail(ErrorKind::usage, "lattice generator of wrong dimension");
        bool nz = std::any_of(g.begin(), g.end(), [](const Rat& x) { return !is_zero(x); });
        if (nz) work.push_back(g);
    }
    std::size_t done = 0;
    for (std::size_t c = 0; c < dim && done < work.size(); ++c) {
        std::size_t best = work.size();
        long bv = 0;
        for (std::size_t i = done; i < work.size(); ++i) {
            if (is_zero(work[i][c])) continue;
            long v = val_p(work[i][c], p).value();
            if (best == work.size() || v < bv) {
                best = i;
                bv = v;
            }
        }
        if (best == work.size()) continue;
        std::swap(work[done], work[best]);
        auto& pr = work[done];
        Rat unit = pr[c] / rat_pow(p, bv);
        for (auto& x : pr) x /= unit;
        for (std::size_t i = done + 1; i < work.size(); ++i) {
            if (is_zero(work[i][c])) continue;
            Rat f = work[i][c] / pr[c];
            for (std::size_t j = c; j < dim; ++j)
                if (!is_zero(pr[j])) work[i][j] -= f * pr[j];
        }
        L.pivots_.push_back(c);
        ++done;
    }
    work.resize(done);
    L.rows_ = std::move(work);
    return L;
}

bool ZpLattice::contains(const std::vector<Rat>& v0) const {
    if (v0.size() != dim_) fail(ErrorKind::usage, "lattice membership: wrong dimension");
    std::vector<Rat> v = v0;
    std::size_t k = 0;
    for (std::size_t c = 0; c < dim_; ++c) {
        if (k < pivots_.size() && pivots_[k] == c) {
            if (!is_zero(v[c])) {
                Rat f = v[c] / rows_[k][c];
                if (val_p(f, p_) < Valuation(0)) return false;
                for (std::size_t j = c; j < dim_; ++j)
                    if (!is_zero(rows_[k][j])) v[j] -= f * rows_[k][j];
            }
            ++k;
        } else if (!is_zero(v[c])) {
            return false;
        }
    }
    return true;
}

bool ZpLattice::contains(const ZpLattice& other) const {
    for (const auto& r : other.rows_)
        if (!contains(r)) return false;
    return true;
}

long ZpLattice::log_index() const {
    if (rows_.size() != dim_) fail(ErrorKind::domain, "log_index of a lattice that is not of full rank");
    long s = 0;
    for (std::size_t k = 0; k < rows_.size(); ++k) s += val_p(rows_[k][pivots_[k]], p_).value();
    return s;
}

long ZpLattice::colength_in(const ZpLattice& super) const {
    if (!super.contains(*this)) fail(ErrorKind::domain, "colength: sublattice not contained in superlattice");
    if (rank() != super.rank()) fail(ErrorKind::domain, "colength: ranks differ, quotient is not torsion");
    if (rank() == dim_) return log_index() - super.log_index();
    // coordinates of our basis in the echelon basis of super, then v_p(det)
    const std::size_t r = rank();
    std::vector<std::vector<Rat>> C(r, std::vector<Rat>(r));
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Rat> v = rows_[i];
        for (std::size_t k = 0; k < r; ++k) {
            const std::size_t c = super.pivots_[k];
            if (is_zero(v[c])) continue;
            Rat f = v[c] / super.rows_[k][c];
            C[i][k] = f;
            for (std::size_t j = c; j < dim_; ++j)
                if (!is_zero(super.rows_[k][j])) v[j] -= f * super.rows_[k][j];
        }
    }
    long s = 0;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t piv = r;
        for (std::size_t i = c; i < r; ++i)
            if (!is_zero(C[i][c])) {
                piv = i;
                break;
            }
        if (piv == r) fail(ErrorKind::consistency, "colength: singular coordinate matrix");
        std::swap(C[c], C[piv]);
        s += val_p(C[c][c], p_).value();
        for (std::size_t i = c + 1; i < r; ++i) {
            if (is_zero(C[i][c])) continue;
            Rat f = C[i][c] / C[c][c];
            for (std::size_t j = c; j < r; ++j) C[i][j] -= f * C[c][j];
        }
    }
    return s;
}

ZpLattice ZpLattice::kernel(const RatMatrix& M) const {
    if (M.rows() != dim_) fail(ErrorKind::usage, "lattice kernel: wrong matrix shape");
    RatMatrix B = RatMatrix::from_rows(rows_.empty() ? std::vector<std::vector<Rat>>{} : rows_);
    if (rows_.empty()) return ZpLattice(p_, dim_);
    RatMatrix Y = B * M;
    auto sf = smith(Y, RatVal{p_}, true);
    std::vector<std::vector<Rat>> gens;
    for (std::size_t i = sf.rank; i < Y.rows(); ++i) gens.push_back(B.left_apply(sf.U.row(i)));
    return from_generators(p_, dim_, gens);
}

ZpLattice ZpLattice::image(const RatMatrix& M) const {
    if (M.rows() != dim_) fail(ErrorKind::usage, "lattice image: wrong matrix shape");
    std::vector<std::vector<Rat>> gens;
    for (const auto& r : rows_) gens.push_back(M.left_apply(r));
    return from_generators(p_, M.cols(), gens);
}

ZpLattice ZpLattice::sum(const ZpLattice& other) const {
    auto gens = rows_;
    gens.insert(gens.end(), other.rows_.begin(), other.rows_.end());
    return from_generators(p_, dim_, gens);
}

ZpLattice ZpLattice::intersect(const ZpLattice& other) const {
    // y B1 = z B2  <=>  (y, z) [B1; -B2] = 0
    const std::size_t r1 = rows_.size(), r2 = other.rows_.size();
    ZpLattice coords = standard(p_, r1 + r2);
    RatMatrix M(r1 + r2, dim_);
    for (std::size_t i = 0; i < r1; ++i)
        for (std::size_t j = 0; j < dim_; ++j) M(i, j) = rows_[i][j];
    for (std::size_t i = 0; i < r2; ++i)
        for (std::size_t j = 0; j < dim_; ++j) M(r1 + i, j) = -other.rows_[i][j];
    ZpLattice K = coords.kernel(M);
    std::vector<std::vector<Rat>> gens;
    for (const auto& k : K.rows_) {
        std::vector<Rat> x(dim_);
        for (std::size_t i = 0; i < r1; ++i)
            if (!is_zero(k[i]))
                for (std::size_t j = 0; j < dim_; ++j) x[j] += k[i] * rows_[i][j];
        gens.push_back(x);
    }
    return from_generators(p_, dim_, gens);
}

// ---------------------------------------------------------------------------

ResidueRing::ResidueRing(long p, int B) : p_(p), B_(B) {
    if (!is_prime(p)) fail(ErrorKind::usage, "residue ring needs a prime");
    unsigned __int128 m = 1;
    pp_.push_back(1);
    for (int i = 0; i < B; ++i) {
        m *= static_cast<unsigned>(p);
        if (m >= (static_cast<unsigned __int128>(1) << 62))
            fail(ErrorKind::resource, "residue precision p^B does not fit in 62 bits");
        pp_.push_back(static_cast<std::uint64_t>(m));
    }
    m_ = static_cast<std::uint64_t>(m);
}

int ResidueRing::val(std::uint64_t a) const {
    if (a == 0) return B_;
    int e = 0;
    while (a % static_cast<std::uint64_t>(p_) == 0) {
        a /= static_cast<std::uint64_t>(p_);
        ++e;
    }
    return e;
}

std::uint64_t ResidueRing::inv_unit(std::uint64_t a) const {
    // extended Euclid on signed 128-bit values
    __int128 t = 0, nt = 1, r = m_, nr = a;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) fail(ErrorKind::consistency, "inverse of a non-unit in residue ring");
    if (t < 0) t += m_;
    return static_cast<std::uint64_t>(t);
}

std::uint64_t ResidueRing::reduce(const Int& x) const {
    Int r = x % Int(static_cast<unsigned long>(m_));
    if (sgn(r) < 0) r += Int(static_cast<unsigned long>(m_));
    return r.get_ui();
}

std::uint64_t ResidueRing::reduce(const Rat& x) const {
    if (val_int(x.get_den(), p_) != 0) fail(ErrorKind::domain, "rational outside Z_(p) reduced modulo p^B");
    return mul(reduce(x.get_num()), inv_unit(reduce(x.get_den())));
}

HowellModule::HowellModule(const ResidueRing& R, std::size_t dim) : R_(R), dim_(dim), piv_(dim) {}

std::vector<std::uint64_t> HowellModule::reduce(std::vector<std::uint64_t> r, std::size_t from) const {
    for (std::size_t c = from; c < dim_; ++c) {
        if (r[c] == 0) continue;
        const auto& P = piv_[c];
        if (P.empty()) return r;
        int vp = R_.val(P[c]);
        int vr = R_.val(r[c]);
        if (vr < vp) return r;
        // P[c] = p^vp exactly, r[c] = p^vp * q
        std::uint64_t q = r[c] / R_.pow_p(vp);
        for (std::size_t j = c; j < dim_; ++j)
            if (P[j]) r[j] = R_.sub(r[j], R_.mul(q, P[j]));
    }
    return r;
}

void HowellModule::insert(std::vector<std::uint64_t> row) {
    if (row.size() != dim_) fail(ErrorKind::usage, "residue row of wrong dimension");
    std::vector<std::vector<std::uint64_t>> stack{std::move(row)};
    while (!stack.empty()) {
        auto r = std::move(stack.back());
        stack.pop_back();
        r = reduce(std::move(r));
        std::size_t c = 0;
        while (c < dim_ && r[c] == 0) ++c;
        if (c == dim_) continue;
        int vr = R_.val(r[c]);
        std::uint64_t u = R_.inv_unit(r[c] / R_.pow_p(vr));
        for (auto& x : r) x = R_.mul(x, u);
        if (!piv_[c].empty()) stack.push_back(std::move(piv_[c]));
        // annihilator multiple p^{B-v} r vanishes at c but may not beyond it
        std::vector<std::uint64_t> ann(dim_);
        bool nz = false;
        for (std::size_t j = c + 1; j < dim_; ++j) {
            ann[j] = R_.mul(r[j], R_.pow_p(R_.precision() - vr));
            nz = nz || ann[j] != 0;
        }
        piv_[c] = std::move(r);
        if (nz) stack.push_back(std::move(ann));
    }
}

bool HowellModule::contains(std::vector<std::uint64_t> row) const {
    row = reduce(std::move(row));
    return std::all_of(row.begin(), row.end(), [](std::uint64_t x) { return x == 0; });
}

bool HowellModule::contains(const HowellModule& other) const {
    for (const auto& P : other.piv_)
        if (!P.empty() && !contains(P)) return false;
    return true;
}

long HowellModule::log_size() const {
    long s = 0;
    for (std::size_t c = 0; c < dim_; ++c)
        if (!piv_[c].empty()) s += R_.precision() - R_.val(piv_[c][c]);
    return s;
}

long HowellModule::log_index() const { return static_cast<long>(dim_) * R_.precision() - log_size(); }

std::vector<std::vector<std::uint64_t>> HowellModule::rows() const {
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& P : piv_)
        if (!P.empty()) out.push_back(P);
    return out;
}

std::vector<int> residue_smith_invariants(const ResidueRing& R, std::vector<std::vector<std::uint64_t>> a,
                                          std::size_t dim) {
    std::vector<int> inv;
    const std::size_t m = a.size();
    std::vector<std::size_t> cols(dim);
    for (std::size_t j = 0; j < dim; ++j) cols[j] = j;
    std::size_t k = 0;
    for (; k < std::min(m, dim); ++k) {
        std::size_t pr = m, pc = dim;
        int best = R.precision();
        for (std::size_t i = k; i < m && best > 0; ++i)
            for (std::size_t j = k; j < dim; ++j) {
                std::uint64_t x = a[i][cols[j]];
                if (!x) continue;
                int v = R.val(x);
                if (v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                    if (v == 0) break;
                }
            }
        if (pr == m) break;
        std::swap(a[k], a[pr]);
        std::swap(cols[k], cols[pc]);
        const std::size_t ck = cols[k];
        std::uint64_t u = R.inv_unit(a[k][ck] / R.pow_p(best));
        for (auto& x : a[k]) x = R.mul(x, u);
        // clear column below; the row part is handled implicitly since only invariants are needed
        for (std::size_t i = k + 1; i < m; ++i) {
            std::uint64_t x = a[i][ck];
            if (!x) continue;
            std::uint64_t q = x / R.pow_p(best);
            for (std::size_t j = k; j < dim; ++j) {
                std::uint64_t y = a[k][cols[j]];
                if (y) a[i][cols[j]] = R.sub(a[i][cols[j]], R.mul(q, y));
            }
        }
        inv.push_back(best);
    }
    for (; k < dim; ++k) inv.push_back(R.precision());
    return inv;
}

long condition_colength(long p, std::size_t dim, const std::vector<ValuationCondition>& conds) {
    long B = 0;
    for (const auto& c : conds) B = std::max(B, c.bound);
    if (B == 0) return 0;
    ResidueRing R(p, static_cast<int>(B));
    HowellModule W(R, dim);
    for (const auto& c : conds) {
        if (c.bound <= 0) continue;
        if (c.coeffs.size() != dim) fail(ErrorKind::usage, "condition of wrong dimension");
        std::vector<std::uint64_t> row(dim);
        const std::uint64_t scale = R.pow_p(static_cast<int>(B - c.bound));
        for (std::size_t i = 0; i < dim; ++i)
            if (!is_zero(c.coeffs[i])) row[i] = R.mul(R.reduce(c.coeffs[i]), scale);
        W.insert(std::move(row));
    }
    return W.log_size();
}

}  // namespace tgr
