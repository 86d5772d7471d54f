#pragma once

#include <string>
#include <vector>

#include "tgr/wedder.hpp"

namespace tgr {

// D_x^i(f) with D_x(f) = f x - x f
GammaElement derivation_apply(const GammaElement& x, const GammaElement& f, long i);

// A(x, h, l)_I for I = ideal_gen * Lambda, membership in I^m decided by
// ideal_membership(., m).
struct DerivationSpec {
    std::vector<GammaElement> xs;
    std::vector<long> heights;
    std::vector<long> lengths;
};

bool in_derivation_ring(const DerivationSpec& spec, const GammaElement& f, const ExtensionTower& T);

// val_s(sum_{h in [0,l]} (-1)^h C(l,h) a_{ol(i+h), j}) >= bound
struct Tie {
    long i = 0, j = 0, l = 0, bound = 0;
    std::string str(const ExtensionTower& T) const;
};

struct TieSystem {
    long gamma = 0;
    std::vector<Tie> conditions;  // i = 0, ordered by (j, l)
    bool satisfied_by(const GammaElement& f, const ExtensionTower& T) const;
    // the first violated condition, if any
    const Tie* violated(const GammaElement& f, const ExtensionTower& T) const;
    friend bool operator==(const TieSystem& a, const TieSystem& b);
};

struct TieOrder {
    TieSystem ties;
    std::vector<GammaElement> mu;  // mu^{(gamma)}_{l,j}, index l * p + j
};

// ties and mu-basis of tdot^gamma Lambda^D; m selects the row of Rem. 1.16
TieOrder lambda_D(const ExtensionTower& T, long gamma = 0, long m = 0);
// all conditions (*_{i,j,l}) for i, j, l in [0, g-1]
TieSystem full_tie_family(const ExtensionTower& T, long gamma = 0);

// Colength in Lambda of the lattice cut out by a tie system, computed from the
// conditions alone (modular duality), independent of any basis.
long tie_colength(const TieSystem& sys, const ExtensionTower& T);

struct CheckLine {
    std::string name;
    bool ok = false;
    std::string expected, actual, detail;
};

struct FT16Report {
    bool pass = false;
    long colength_in_lambda = 0, colength_in_gamma = 0;
    long expected_in_lambda = 0, expected_in_gamma = 0;
    std::vector<CheckLine> checks;
};

FT16Report verify_ft16(const ExtensionTower& T);

// Lambda-lattice spanned over S by sigmadot^i tdot^j (the image of T wr C_p).
ZpLattice xi_lattice(const ExtensionTower& T);

// A tower known only through the minimal polynomial of t over Q (n = 2 type,
// S = Z_(p)); enough data for the tie comparison.
struct PolyTower {
    long p;
    RatPoly mu;   // monic, Eisenstein
    long b;       // from the discriminant
    long disc_val;
};
PolyTower poly_tower(long p, const RatPoly& mu);

struct TieIsoReport {
    bool isomorphic = false;
    long disc1 = 0, disc2 = 0, b = 0;
    TieSystem ties1, ties2;
};
TieIsoReport tie_isomorphism_check(const PolyTower& a, const PolyTower& b);
// raw tie system of b over S = Z_(p)
TieSystem tie_system_for(long p, long b, long val_s_p, long gamma = 0);

}  // namespace tgr
