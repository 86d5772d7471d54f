#pragma once

// The 2-periodic resolution ... -> Xi -a-> Xi -b-> Xi -> T over Xi = Lambda^D,
// its Ext groups and the Yoneda ring. Xi-linear maps Xi -> Xi are left
// multiplications 1 -> x; applying Hom(-, T) turns them into c -> c * X on
// row vectors c in the t-basis.

#include <string>
#include <vector>

#include "tgr/ties.hpp"

namespace tgr {

struct ResolutionMaps {
    GammaElement alpha, beta;
    std::vector<std::vector<KElem>> chi;  // chi[k] = row vector of t^k
    std::vector<CheckLine> checks;
    bool exact = false;
};

ResolutionMaps build_resolution(const ExtensionTower& T);

// Ext^i from the dualized resolution, checked against the closed form.
ModuleDescription ext_module(const ExtensionTower& T, long degree);
// the closed form alone
ModuleDescription ext_formula(long p, long b, long degree);
// Ext^i computed from the dual complex only
ModuleDescription ext_by_smith(const ExtensionTower& T, const ResolutionMaps& R, long degree);

struct Lift {
    long j = 0;
    GammaElement mu, nu;
};
Lift lift_cocycle(const ExtensionTower& T, long j);

struct StructureConstant {
    bool present = false;
    long exponent = 0;
    long unit = 0;  // (ol(b - j))^{-1} mod p
    bool zero_in_quotient = true;
};
StructureConstant structure_constant(long p, long b, long j, long k);

// The class in Ext^2 = S chi_0 / s^{b - ul(b)} of a degree-2 cocycle given as a
// row vector; nullopt if it is not a cocycle.
std::optional<KElem> ext2_coefficient(const ExtensionTower& T, const ResolutionMaps& R, const std::vector<KElem>& c);
// val_s of the coefficient and its residue unit mod p (exponent = +inf for 0)
std::pair<Valuation, long> split_unit(const KElem& x, const ExtensionTower& T);

// "s^a" style rendering; "1" for a = 0
std::string unif_power_str(const std::string& unif, long a);

struct OddGenerator {
    long j = 0;
    long annihilator = 0;  // h_j^(1) is killed by s^annihilator; 0 means it vanishes
};

struct ProductEntry {
    long j = 0, k = 0;
    StructureConstant c;
};

struct ExtRingPresentation {
    long p = 0, n = 0, b = 0, b_bar = 0, b_under = 0;
    std::string ring, unif;
    long even_annihilator = 0;
    std::vector<OddGenerator> odd;
    std::vector<ProductEntry> products;  // j <= k, both odd generators nonzero
    std::vector<ModuleDescription> ext_table;  // degrees 0..max
    std::string text;
};

ExtRingPresentation ring_presentation(const ExtensionTower& T, long max_degree = 6);

}  // namespace tgr
