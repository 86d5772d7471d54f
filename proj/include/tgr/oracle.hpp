#pragma once

// Independent cross-checks of the cohomology computations: the classical
// periodic complex of a cyclic Galois module, the bar complex with cup product
// and homotopy, and chain-map lifting by linear solving.

#include <functional>
#include <string>
#include <vector>

#include "tgr/cohom.hpp"

namespace tgr {

using ModVec = std::vector<KElem>;

// A ring that is free over S with a cyclic group <sigma> of order N acting.
// Elements are row vectors in a fixed S-basis; act[k] is sigma^k (rows are
// images of basis vectors).
struct GaloisModule {
    long N = 0;
    std::size_t rank = 0;
    std::vector<KMatrix> act;
    std::function<ModVec(const ModVec&, const ModVec&)> mul;
    ModVec one;
    KVal val{3, 1};
    KElem unif_elem;  // uniformizer of S
    std::string ring, unif, name;
};

// T over S with sigma acting by sigmadot
GaloisModule galois_module_T(const TowerPtr& T);
// U = Z_(p)[zeta_{p^2}] over Z_(p) in the zeta basis, H = (Z/p^2)^* generated
// by the smallest primitive root mod p^2
GaloisModule galois_module_U(long p);

struct ClassicalComplex {
    KMatrix diff;   // sigma - 1
    KMatrix trace;  // sum of sigma^k
};
ClassicalComplex classical_complex(const GaloisModule& M);
ModuleDescription classical_ext(const GaloisModule& M, long degree);

// Normalized homogeneous cochains: a(g_0, ..., g_i) is stored for g_0 = 1,
// indexed by (g_1, ..., g_i) in base N, each value a module vector.
struct BarCochain {
    long degree = 0;
    std::vector<ModVec> values;  // N^degree entries
};

class BarComplex {
public:
    // max_coords bounds N^i * rank for every cochain space built
    explicit BarComplex(const GaloisModule& M, long max_coords = 100000);
    const GaloisModule& module() const { return M_; }

    std::size_t dim(long degree) const;
    // d^i : C^i -> C^{i+1} as a matrix acting on the right of flattened cochains
    const KMatrix& coboundary(long degree);
    ModuleDescription cohomology(long degree);

    BarCochain apply_d(const BarCochain& a) const;
    ModVec eval(const BarCochain& a, const std::vector<long>& tuple) const;
    std::vector<KElem> flatten(const BarCochain& a) const;
    BarCochain unflatten(long degree, const std::vector<KElem>& v) const;

    bool is_cocycle(const BarCochain& a) const;
    bool is_coboundary(const BarCochain& a);

    BarCochain cup(const BarCochain& a, const BarCochain& b) const;
    BarCochain homotopy(const BarCochain& a, const BarCochain& b) const;
    BarCochain unit() const;
    // f(sigma^k) = (1 + sigma + ... + sigma^{k-1}) x for x in ker Tr
    BarCochain one_cocycle(const ModVec& x) const;

private:
    void guard(long degree) const;
    GaloisModule M_;
    long max_coords_;
    std::vector<KMatrix> d_;
};

// generators of ker Tr modulo im(sigma - 1), one per cyclic summand
std::vector<ModVec> h1_representatives(const GaloisModule& M);

struct BarProductCheck {
    std::vector<CheckLine> checks;
    bool pass = false;
};
// H^1 x H^1 cup products compared with the structure constants of P, plus the
// Leibniz, unit and homotopy identities
BarProductCheck bar_h1_products(const GaloisModule& M, const ExtRingPresentation& P);

struct IndependentLift {
    GammaElement mu, nu;
};
// Some lift (mu, nu) of the 1-cocycle c (a row vector in the t-basis) found by
// solving over S in the mu-basis of Xi; throws if the system has no solution.
IndependentLift independent_lift(const ExtensionTower& T, const ResolutionMaps& R, const std::vector<KElem>& c);

struct OracleReport {
    std::vector<CheckLine> checks;
    bool pass = false;
};
OracleReport oracle_classical(const TowerPtr& T, long max_degree = 6);
OracleReport oracle_bar(const TowerPtr& T, long max_degree = 3);
OracleReport oracle_lift(const ExtensionTower& T);

}  // namespace tgr
