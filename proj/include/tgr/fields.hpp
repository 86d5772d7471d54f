#pragma once

// Number fields used by the towers. All construction happens inside one ambient
// cyclotomic field Q(zeta_{p^n}); the base field K = Q(s) is then re-expressed
// in the power basis of s so that Gamma-level matrices stay small.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tgr/exact.hpp"

namespace tgr {

// Polynomials over Q, coefficients low to high.
using RatPoly = std::vector<Rat>;

RatPoly poly_trim(RatPoly a);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_derivative(const RatPoly& a);
std::string poly_str(const RatPoly& a, const std::string& var = "X");
// discriminant of a monic integer-like polynomial via the Sylvester resultant
Rat poly_discriminant(const RatPoly& f);
Rat resultant(const RatPoly& f, const RatPoly& g);

// Q[x]/(f) with f monic and Eisenstein at p, so x is a uniformizer of the
// valuation ring above p and valuations are read off coefficientwise.
class NumberField {
public:
    NumberField(long p, RatPoly f, std::string gen_name);
    long prime() const { return p_; }
    std::size_t degree() const { return d_; }
    const RatPoly& modulus() const { return f_; }
    const std::string& gen_name() const { return name_; }

    std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) const;
    std::vector<Rat> inv(const std::vector<Rat>& a) const;
    Valuation val(const std::vector<Rat>& a) const;

private:
    long p_;
    RatPoly f_;
    std::size_t d_;
    std::string name_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Element of K. A null field means a plain rational; arithmetic promotes.
class KElem {
public:
    KElem() = default;
    KElem(long v) : c_{Rat(v)} { trim(); }   // NOLINT(google-explicit-constructor)
    KElem(const Rat& v) : c_{v} { trim(); }  // NOLINT(google-explicit-constructor)
    KElem(FieldPtr F, std::vector<Rat> coeffs);
    static KElem gen(const FieldPtr& F);

    const FieldPtr& field() const { return F_; }
    // coefficients in the power basis of the generator, padded to the degree
    std::vector<Rat> coeffs() const;
    bool is_rational() const;
    Rat rational() const;  // throws unless rational

    KElem& operator+=(const KElem& o);
    KElem& operator-=(const KElem& o);
    KElem& operator*=(const KElem& o) { return *this = *this * o; }
    friend KElem operator+(KElem a, const KElem& b) { return a += b; }
    friend KElem operator-(KElem a, const KElem& b) { return a -= b; }
    friend KElem operator-(KElem a);
    friend KElem operator*(const KElem& a, const KElem& b);
    friend KElem operator/(const KElem& a, const KElem& b);
    friend bool operator==(const KElem& a, const KElem& b) { return is_zero(a - b); }
    friend bool is_zero(const KElem& a);
    std::string str() const;

private:
    void trim();
    FieldPtr F_;
    std::vector<Rat> c_;  // empty means zero
};

// val_s; a plain rational x has val_s(x) = e * v_p(x) with e = [K:Q]
Valuation kval(const KElem& x, long p, long e = 1);

struct KVal {
    long p;
    long e = 1;
    Valuation operator()(const KElem& x) const { return kval(x, p, e); }
};

using KMatrix = Matrix<KElem>;

std::string kmatrix_str(const KMatrix& m);
RatMatrix to_rat_matrix(const KMatrix& m);
KMatrix to_kmatrix(const RatMatrix& m);

// ---------------------------------------------------------------------------

class AmbientField;

// sum_i c_i zeta^i / den with den > 0 and content normalized
struct AElem {
    const AmbientField* F = nullptr;
    std::vector<Int> c;
    Int den = 1;

    bool is_zero() const;
    std::vector<Rat> coeffs() const;

    friend AElem operator+(const AElem& a, const AElem& b);
    friend AElem operator-(const AElem& a, const AElem& b);
    friend AElem operator*(const AElem& a, const AElem& b);
    friend AElem operator*(const Rat& r, const AElem& a);
    friend bool operator==(const AElem& a, const AElem& b);
};

class AmbientField {
public:
    AmbientField(long p, long n);
    long p() const { return p_; }
    long n() const { return n_; }
    long order() const { return N_; }   // p^n
    long degree() const { return phi_; }

    AElem zero() const;
    AElem one() const { return from_rat(Rat(1)); }
    AElem from_rat(const Rat& r) const;
    AElem zeta_pow(long e) const;
    AElem pow(const AElem& a, long e) const;
    // zeta -> zeta^k, k coprime to p
    AElem galois(const AElem& a, long k) const;
    // theta-adic valuation, theta = zeta - 1
    Valuation val_theta(const AElem& a) const;
    // absolute norm as a product over all conjugates
    Rat norm(const AElem& a) const;

    // internal: reduce a length-N cyclic coefficient vector mod Phi_{p^n}
    AElem reduce_cyclic(std::vector<Int> cyc, Int den) const;
    void normalize(AElem& a) const;

private:
    long p_, n_, N_, phi_, m_;
};

// pi_n inside Q(zeta_{p^ambient_n}); pi_1 = p
AElem make_pi(const AmbientField& F, long level);

// Expresses ambient elements in a fixed linearly independent family.
class SubspaceSolver {
public:
    explicit SubspaceSolver(const std::vector<AElem>& family);
    std::size_t size() const { return k_; }
    std::optional<std::vector<Rat>> solve(const AElem& x) const;

private:
    std::size_t k_ = 0, dim_ = 0;
    std::vector<std::vector<Rat>> cols_;  // family as coefficient vectors
    std::vector<std::size_t> prow_;       // pivot rows
    RatMatrix inv_;                       // inverse of the pivot submatrix
};

// Minimal polynomial of x over Q by linear dependency of powers.
RatPoly minimal_polynomial_q(const AmbientField& F, const AElem& x);

enum class Level { Q, K, L, Ambient };
const char* level_name(Level l);

struct ParameterRow {
    long b = 0, b_bar = 0, b_under = 0;
    long different_valuation = 0;     // val_t of the different
    long discriminant_valuation = 0;  // val_s of the discriminant
};

enum class TowerKind { cyclotomic_pi, cyclotomic_theta, lubin_tate_formula };
ParameterRow parameter_table(long p, long n, TowerKind kind);

// The tower Z_(p)[pi_{n-1}] = S < T = S[pi_n] inside Q(zeta_{p^n}).
class ExtensionTower {
public:
    static std::shared_ptr<const ExtensionTower> cyclotomic(long p, long n);

    long p() const { return p_; }
    long n() const { return n_; }
    long g() const { return p_; }
    long e() const { return e_; }  // [K:Q] = val_s(p)
    long b() const { return b_; }
    long b_bar() const { return b_bar_; }
    long b_under() const { return b_under_; }
    long sigma_exponent() const { return sigma_k_; }

    const AmbientField& ambient() const { return *amb_; }
    const FieldPtr& K() const { return K_; }
    const AElem& s_amb() const { return s_; }
    const AElem& t_amb() const { return t_; }
    const AElem& theta_amb() const { return theta_; }
    KElem s() const;
    KElem s_pow(long k) const;  // k may be negative
    KVal val_s() const { return KVal{p_, e_}; }

    // mu_{t,K} coefficients c_0..c_g, c_g = 1
    const std::vector<KElem>& mu_t() const { return mu_t_; }
    const KMatrix& tdot() const { return tdot_; }
    const KMatrix& sigmadot() const { return sigmadot_; }

    // valuation normalized at the uniformizer of the given level
    Valuation val_at(const AElem& x, Level uniformizer) const;
    // K-coordinates of an element of L in the basis t^0..t^{g-1}
    std::vector<KElem> t_coords(const AElem& x) const;
    std::optional<KElem> to_K(const AElem& x) const;
    AElem from_K(const KElem& x) const;
    AElem from_t_coords(const std::vector<KElem>& v) const;
    // matrix of right multiplication by y in the t-basis
    KMatrix mult_matrix(const std::vector<KElem>& y) const;

    AElem trace_norm(const AElem& x, Level from, Level to, bool norm) const;
    // group of exponents k (zeta -> zeta^k) fixing the given level
    std::vector<long> fixing_group(Level l) const;

    long different_valuation() const { return diff_val_; }
    long discriminant_valuation() const { return disc_val_; }
    std::string ring_name() const;  // Z_(3) or Z_(3)[pi_2]
    std::string unif_name() const;  // 3 or pi_2

private:
    ExtensionTower() = default;
    long p_ = 0, n_ = 0, e_ = 0, b_ = 0, b_bar_ = 0, b_under_ = 0, sigma_k_ = 0;
    long diff_val_ = 0, disc_val_ = 0;
    std::shared_ptr<const AmbientField> amb_;
    FieldPtr K_;
    AElem s_, t_, theta_;
    std::vector<KElem> mu_t_;
    KMatrix tdot_, sigmadot_;
    std::shared_ptr<const SubspaceSolver> K_solver_, L_solver_;
    std::vector<AElem> s_pows_;
};

using TowerPtr = std::shared_ptr<const ExtensionTower>;

// b from a discriminant valuation for g = p: val_s(Delta) = (p-1)(1+b).
long b_from_discriminant(long p, long disc_val);

}  // namespace tgr
