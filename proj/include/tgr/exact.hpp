#pragma once

// Exact rationals, p-adic valuations, and linear algebra over a discrete
// valuation ring. Matrices follow the row convention used everywhere in the
// library: a map acts on row vectors from the right, x -> x * M.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tgr/errors.hpp"

namespace tgr {

using Int = mpz_class;
using Rat = mpq_class;

class Valuation {
public:
    Valuation() = default;
    Valuation(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    static Valuation infinite() {
        Valuation r;
        r.inf_ = true;
        return r;
    }

    bool is_infinite() const { return inf_; }
    long value() const;

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
        return a.v_ <=> b.v_;
    }
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return infinite();
        return Valuation(a.v_ + b.v_);
    }
    std::string str() const;

private:
    bool inf_ = false;
    long v_ = 0;
};

bool is_prime(long n);
void require_odd_prime(long p);

// Exponent of p in a nonzero integer.
long val_int(const Int& x, long p);
Valuation val_p(const Rat& x, long p);
Valuation val_p(const Int& x, long p);

Rat rat_pow(long base, long e);
Int int_pow(long base, unsigned long e);

// Binomial with C(a, b) = 0 unless 0 <= b <= a.
Int binom(long a, long b);

// Euclidean split i = g * floor_div(i, g) + mod_floor(i, g).
long floor_div(long i, long g);
long mod_floor(long i, long g);

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const T& one = T(1), const T& zero = T(0)) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m;
        m.rows_ = rows.size();
        m.cols_ = rows.empty() ? 0 : rows[0].size();
        for (const auto& r : rows) {
            if (r.size() != m.cols_) fail(ErrorKind::usage, "ragged matrix rows");
            m.a_.insert(m.a_.end(), r.begin(), r.end());
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    void set_row(std::size_t i, const std::vector<T>& r) {
        std::copy(r.begin(), r.end(), a_.begin() + i * cols_);
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    // row_i += f * row_j
    void add_row(std::size_t i, std::size_t j, const T& f) {
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_zero((*this)(j, c))) (*this)(i, c) += f * (*this)(j, c);
    }
    // col_i += f * col_j
    void add_col(std::size_t i, std::size_t j, const T& f) {
        for (std::size_t r = 0; r < rows_; ++r)
            if (!is_zero((*this)(r, j))) (*this)(r, i) += (*this)(r, j) * f;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero_matrix() const {
        return std::all_of(a_.begin(), a_.end(), [](const T& x) { return is_zero(x); });
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) fail(ErrorKind::usage, "matrix product dimension mismatch");
        Matrix r(x.rows_, y.cols_, zero_like(x, y));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (is_zero(xik)) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    if (!is_zero(y(k, j))) r(i, j) += xik * y(k, j);
            }
        return r;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) {
        x.check_same(y);
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }
    friend Matrix operator-(Matrix x, const Matrix& y) {
        x.check_same(y);
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
        return x;
    }
    friend Matrix operator*(const T& c, Matrix x) {
        for (auto& e : x.a_) e = c * e;
        return x;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            if (!is_zero(x.a_[i] - y.a_[i])) return false;
        return true;
    }

    // row vector times matrix
    std::vector<T> left_apply(const std::vector<T>& v) const {
        if (v.size() != rows_) fail(ErrorKind::usage, "vector-matrix dimension mismatch");
        std::vector<T> r(cols_, zero_like_vec(v));
        for (std::size_t i = 0; i < rows_; ++i) {
            if (is_zero(v[i])) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero((*this)(i, j))) r[j] += v[i] * (*this)(i, j);
        }
        return r;
    }

    const std::vector<T>& data() const { return a_; }

private:
    void check_same(const Matrix& y) const {
        if (rows_ != y.rows_ || cols_ != y.cols_) fail(ErrorKind::usage, "matrix shape mismatch");
    }
    // Zero of the right "kind"; for number-field scalars the context travels with values.
    static T zero_like(const Matrix& x, const Matrix& y) {
        for (const auto& e : x.a_) return e - e;
        for (const auto& e : y.a_) return e - e;
        return T(0);
    }
    static T zero_like_vec(const std::vector<T>& v) {
        for (const auto& e : v) return e - e;
        return T(0);
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using RatMatrix = Matrix<Rat>;

// ---------------------------------------------------------------------------
// Smith form over a DVR with valuation functor val(const T&) -> Valuation.

struct SmithReport {
    std::vector<long> elementary_divisor_valuations;
    std::size_t free_rank_defect = 0;  // cols - rank: free summands of the cokernel
    std::size_t rank = 0;
};

template <class T>
struct SmithForm {
    Matrix<T> D;      // U * M * V
    Matrix<T> U, Uinv, V;
    std::vector<long> divisors;  // valuations of D(k,k), k < rank
    std::size_t rank = 0;
};

template <class T, class ValFn>
SmithForm<T> smith(const Matrix<T>& M, ValFn val, bool transforms = true) {
    SmithForm<T> sf;
    sf.D = M;
    Matrix<T>& D = sf.D;
    const std::size_t m = M.rows(), n = M.cols();
    T zero = m && n ? M(0, 0) - M(0, 0) : T(0);
    T one = zero + T(1);
    if (transforms) {
        sf.U = Matrix<T>::identity(m, one, zero);
        sf.Uinv = Matrix<T>::identity(m, one, zero);
        sf.V = Matrix<T>::identity(n, one, zero);
    }
    std::size_t k = 0;
    for (; k < std::min(m, n); ++k) {
        // minimal valuation pivot, ties by lowest (row, col)
        std::size_t pr = m, pc = n;
        Valuation best = Valuation::infinite();
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = k; j < n; ++j) {
                if (is_zero(D(i, j))) continue;
                Valuation v = val(D(i, j));
                if (pr == m || v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr == m) break;
        if (best.value() < 0) fail(ErrorKind::domain, "entry with negative valuation in Smith form over S");
        D.swap_rows(k, pr);
        D.swap_cols(k, pc);
        if (transforms) {
            sf.U.swap_rows(k, pr);
            sf.Uinv.swap_cols(k, pr);
            sf.V.swap_cols(k, pc);
        }
        const T piv = D(k, k);
        for (std::size_t i = k + 1; i < m; ++i) {
            if (is_zero(D(i, k))) continue;
            T f = D(i, k) / piv;
            D.add_row(i, k, -f);
            if (transforms) {
                sf.U.add_row(i, k, -f);
                sf.Uinv.add_col(k, i, f);
            }
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            if (is_zero(D(k, j))) continue;
            T f = D(k, j) / piv;
            D.add_col(j, k, -f);
            if (transforms) sf.V.add_col(j, k, -f);
        }
        sf.divisors.push_back(best.value());
    }
    sf.rank = k;
    return sf;
}

template <class T, class ValFn>
SmithReport smith_over_dvr(const Matrix<T>& M, ValFn val) {
    for (const auto& e : M.data())
        if (!is_zero(e) && val(e) < Valuation(0))
            fail(ErrorKind::domain, "smith_over_dvr: entry outside S (negative valuation)");
    auto sf = smith(M, val, false);
    SmithReport r;
    r.elementary_divisor_valuations = sf.divisors;
    r.rank = sf.rank;
    r.free_rank_defect = M.cols() - sf.rank;
    return r;
}

// Length of S^cols / (row space of M); infinite if a free summand survives.
template <class T, class ValFn>
Valuation module_length(const Matrix<T>& M, ValFn val) {
    auto r = smith_over_dvr(M, val);
    if (r.free_rank_defect > 0) return Valuation::infinite();
    long s = 0;
    for (long d : r.elementary_divisor_valuations) s += d;
    return Valuation(s);
}

// Some x over S with A x = b (column convention), or nullopt.
template <class T, class ValFn>
std::optional<std::vector<T>> solve_over_dvr(const Matrix<T>& A, const std::vector<T>& b, ValFn val) {
    if (A.rows() != b.size()) fail(ErrorKind::usage, "solve_over_dvr: dimension mismatch");
    for (const auto& e : A.data())
        if (!is_zero(e) && val(e) < Valuation(0))
            fail(ErrorKind::domain, "solve_over_dvr: matrix entry outside S");
    auto sf = smith(A, val, true);
    // U A V = D, so A x = b  <=>  D (V^{-1} x) = U b
    std::vector<T> ub = sf.U.transpose().left_apply(b);
    T zero = b.empty() ? T(0) : b[0] - b[0];
    std::vector<T> y(A.cols(), zero);
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < sf.rank) {
            T q = ub[i] / sf.D(i, i);
            if (!is_zero(q) && val(q) < Valuation(0)) return std::nullopt;
            y[i] = q;
        } else if (!is_zero(ub[i])) {
            return std::nullopt;
        }
    }
    return sf.V.transpose().left_apply(y);
}

// Finitely generated S-module as free part plus cyclic torsion S/s^e, e >= 1.
struct ModuleDescription {
    long free_rank = 0;
    std::vector<long> torsion;  // ascending

    Valuation length() const;
    std::string str(const std::string& ring = "S", const std::string& unif = "s") const;
    friend bool operator==(const ModuleDescription&, const ModuleDescription&) = default;
};

template <class ValFn, class T>
ModuleDescription cokernel_description(const Matrix<T>& M, ValFn val) {
    auto sf = smith(M, val, false);
    ModuleDescription d;
    d.free_rank = static_cast<long>(M.cols() - sf.rank);
    for (long e : sf.divisors)
        if (e > 0) d.torsion.push_back(e);
    std::sort(d.torsion.begin(), d.torsion.end());
    return d;
}

// Homology ker(Y) / im(X) of S^a --X--> S^m --Y--> S^c (row convention).
template <class T, class ValFn>
ModuleDescription homology(const Matrix<T>& X, const Matrix<T>& Y, ValFn val) {
    const std::size_t m = Y.rows();
    if (X.cols() != m) fail(ErrorKind::usage, "homology: shapes do not compose");
    if (!(X * Y).is_zero_matrix()) fail(ErrorKind::consistency, "homology: X*Y != 0");
    auto sf = smith(Y, val, true);
    // kernel of Y = span of rows rank..m-1 of U; coordinates via Uinv
    const std::size_t k = m - sf.rank;
    Matrix<T> coords = X * sf.Uinv;
    T zero = m ? sf.U(0, 0) - sf.U(0, 0) : T(0);
    Matrix<T> C(X.rows(), k, zero);
    for (std::size_t i = 0; i < X.rows(); ++i) {
        for (std::size_t j = 0; j < sf.rank; ++j)
            if (!is_zero(coords(i, j))) fail(ErrorKind::consistency, "homology: image not inside kernel");
        for (std::size_t j = 0; j < k; ++j) C(i, j) = coords(i, sf.rank + j);
    }
    if (X.rows() == 0) {
        ModuleDescription d;
        d.free_rank = static_cast<long>(k);
        return d;
    }
    return cokernel_description(C, val);
}

// Valuation functor for rationals at a fixed prime.
struct RatVal {
    long p;
    Valuation operator()(const Rat& x) const { return val_p(x, p); }
};

// ---------------------------------------------------------------------------
// Full-rank-or-not Z_(p)-lattices in Q^N, kept in echelon form with pivots p^d.

class ZpLattice {
public:
    ZpLattice(long p, std::size_t dim) : p_(p), dim_(dim) {}
    static ZpLattice from_generators(long p, std::size_t dim, const std::vector<std::vector<Rat>>& gens);
    static ZpLattice standard(long p, std::size_t dim);

    long prime() const { return p_; }
    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<Rat>>& basis() const { return rows_; }

    bool contains(const std::vector<Rat>& v) const;
    bool contains(const ZpLattice& other) const;
    bool operator==(const ZpLattice& other) const { return contains(other) && other.contains(*this); }

    // valuation of the covolume relative to Z_(p)^N; full rank only
    long log_index() const;
    // S-length of super / *this
    long colength_in(const ZpLattice& super) const;

    // {x in L : x * M = 0}
    ZpLattice kernel(const RatMatrix& M) const;
    // L * M inside Q^{M.cols()}
    ZpLattice image(const RatMatrix& M) const;
    ZpLattice intersect(const ZpLattice& other) const;
    ZpLattice sum(const ZpLattice& other) const;

private:
    long p_;
    std::size_t dim_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<std::size_t> pivots_;
};

// ---------------------------------------------------------------------------
// Submodules of (Z/p^B)^N. A full Z_(p)-lattice containing p^B Z^N is
// determined by its image here, which makes large congruence systems cheap.

class ResidueRing {
public:
    ResidueRing(long p, int B);
    long p() const { return p_; }
    int precision() const { return B_; }
    std::uint64_t modulus() const { return m_; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m_);
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= m_ ? s - m_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + m_ - b; }
    std::uint64_t neg(std::uint64_t a) const { return a ? m_ - a : 0; }
    // valuation in [0, B]; B for zero
    int val(std::uint64_t a) const;
    std::uint64_t inv_unit(std::uint64_t a) const;
    std::uint64_t pow_p(int e) const { return pp_[static_cast<std::size_t>(e)]; }
    // reduce a rational with p-free denominator
    std::uint64_t reduce(const Rat& x) const;
    std::uint64_t reduce(const Int& x) const;

private:
    long p_;
    int B_;
    std::uint64_t m_;
    std::vector<std::uint64_t> pp_;
};

class HowellModule {
public:
    HowellModule(const ResidueRing& R, std::size_t dim);
    void insert(std::vector<std::uint64_t> row);
    bool contains(std::vector<std::uint64_t> row) const;
    bool contains(const HowellModule& other) const;
    // log_p of the number of elements
    long log_size() const;
    // sum over columns of the pivot valuations; B for columns without pivot
    long log_index() const;
    std::vector<std::vector<std::uint64_t>> rows() const;
    const ResidueRing& ring() const { return R_; }
    std::size_t dim() const { return dim_; }

private:
    // returns the reduced row (zero if contained)
    std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> row, std::size_t from = 0) const;

    ResidueRing R_;
    std::size_t dim_;
    std::vector<std::vector<std::uint64_t>> piv_;  // piv_[c] empty when no pivot at column c
};

// Length of Z_(p)^N / {x : v_p(x . c_k) >= bound_k for all k}. The image of
// Z_(p)^N in sum_k Z/p^{bound_k} has the size of the column span, which is
// what gets inserted here; coefficients must be p-integral.
struct ValuationCondition {
    std::vector<Rat> coeffs;
    long bound = 0;
};
long condition_colength(long p, std::size_t dim, const std::vector<ValuationCondition>& conds);

// Smith invariants (valuations, each capped at B) of a row-generated submodule.
std::vector<int> residue_smith_invariants(const ResidueRing& R, std::vector<std::vector<std::uint64_t>> rows,
                                          std::size_t dim);

}  // namespace tgr
