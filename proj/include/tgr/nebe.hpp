#pragma once

// Block decomposition of U wr H for S = Z_(p) < T = Z_(p)[pi_2] < U = Z_(p)[zeta_{p^2}]
// with H = (Z/p^2)^*, G = C_p and N of order n = p - 1. Endomorphisms of U are
// written in the mixed basis u^j t^i (index j g + i), blocks indexed by u-powers.

#include <string>
#include <vector>

#include "tgr/oracle.hpp"

namespace tgr {

class BlockDecomposition {
public:
    // n_level = 2 is the only level built here; p in {3, 5} unless forced
    static BlockDecomposition build(long p, bool force = false);

    long p() const { return p_; }
    long g() const { return g_; }
    long n() const { return n_; }
    long h() const { return g_ * n_; }
    const TowerPtr& inner() const { return T_; }

    // h x h matrices
    RatMatrix block_unit(long k, long l) const;          // 1 (x) e''_{k,l}
    RatMatrix place(const GammaElement& x, long k, long l) const;  // x (x) e''_{k,l}
    const RatMatrix& udot() const { return udot_; }
    const std::vector<RatMatrix>& rhodot() const { return rhodot_; }  // rho^k, k < h
    // coordinates of an element of U in the mixed basis
    std::vector<Rat> coords(const AElem& x) const;

    // S-lattices of h x h matrices (flattened row-major)
    const ZpLattice& block_lattice() const { return blocks_; }
    ZpLattice xi_lattice() const;
    bool in_block_lattice(const RatMatrix& m) const;
    // the same two lattices reduced mod p^B, as submodules of (Z/p^B)^{h^2}
    HowellModule xi_module(int B) const;
    HowellModule block_module(int B) const;

    // which ties each block carries: "Xi'" or "tdot Xi'"
    std::vector<std::vector<std::string>> pattern() const;

private:
    long p_ = 0, g_ = 0, n_ = 0;
    TowerPtr T_;
    std::vector<AElem> fam_;  // u^j t^i
    std::shared_ptr<const SubspaceSolver> solver_;
    RatMatrix udot_;
    std::vector<RatMatrix> rhodot_;
    ZpLattice blocks_{3, 0};
};

std::vector<Rat> flatten(const RatMatrix& m);

struct NebeReport {
    std::vector<CheckLine> checks;
    bool pass = false;
    long colength_xi = 0, colength_blocks = 0;
};

NebeReport verify_nd3(long p, bool force = false);
NebeReport verify_nd7(long p, long max_degree = 4, bool force = false);

}  // namespace tgr
