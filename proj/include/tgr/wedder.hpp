#pragma once

// Wedderburn embedding T wr G -> Gamma = End_S T and the order Lambda.
//
// Maps act on the right: row r of a Gamma matrix is the image of t^r, and the
// matrix of "first f, then h" is F * H.

#include <vector>

#include "tgr/fields.hpp"

namespace tgr {

struct IndexSplit {
    long i, g, under, over;
};

IndexSplit split(long i, long g);
inline long ul(long i, long g) { return floor_div(i, g); }
inline long ol(long i, long g) { return mod_floor(i, g); }

using GammaElement = KMatrix;

// single entry s^{ul(i+j)} at (i, ol(i+j))
GammaElement eps(long i, long j, const ExtensionTower& T);
// sum_i eps_{i,j}
GammaElement ddot_power(long j, const ExtensionTower& T);

enum class Generator { t, sigma, u, v };
GammaElement wedderburn_image(Generator gen, const ExtensionTower& T);

// a_{i,j} with f = sum a_{i,j} eps_{i,j}, i, j in [0, g-1]
KMatrix eps_coords(const GammaElement& f, const ExtensionTower& T);
GammaElement from_eps_coords(const KMatrix& a, const ExtensionTower& T);

bool in_gamma(const GammaElement& f, const ExtensionTower& T);
bool in_lambda(const GammaElement& f, const ExtensionTower& T);
// f in ddot(t)^k Lambda
bool ideal_membership(const GammaElement& f, long k, const ExtensionTower& T);

std::vector<GammaElement> lambda_basis(const ExtensionTower& T);
std::vector<GammaElement> gamma_basis(const ExtensionTower& T);

// Coordinates over Z_(p): eps-coordinates a_{i,j} expanded in the power basis
// of s. Lambda is the standard lattice in these coordinates; since S/sS = F_p,
// S-lengths equal Z_(p)-lengths.
std::vector<Rat> restricted_coords(const GammaElement& f, const ExtensionTower& T);
GammaElement from_restricted_coords(const std::vector<Rat>& v, const ExtensionTower& T);
// Z_(p)-lattice of the S-span of the given elements
ZpLattice s_span(const std::vector<GammaElement>& gens, const ExtensionTower& T);

// S-length of span(super) / span(sub); domain error unless sub is contained
long colength(const std::vector<GammaElement>& sub, const std::vector<GammaElement>& super, const ExtensionTower& T);

}  // namespace tgr
