#pragma once

// The C_{p^2} experiment: S = Z_(p) < U = Z_(p)[pi_3], u = pi_3, sigma the
// restriction of zeta -> zeta^{1+p}, Sen element v = prod_i u^{sigma^i}.
// Endomorphisms of U are written in the basis u^i v^j (index i p + j), whose
// element r has u-valuation k(r) = i + p j.

#include <cstdint>
#include <string>
#include <vector>

#include "tgr/ties.hpp"

namespace tgr {

struct DisplayedMatrix {
    long p;
    const char* name;
    int dim;
    const char* entries;
};
const std::vector<DisplayedMatrix>& displayed_matrices();

// printed entries that contradict the congruence they are displayed under
struct Erratum {
    long p;
    const char* name;
    int row, col;
    const char* printed;
    const char* corrected;
};
const std::vector<Erratum>& displayed_errata();

// corrected applies displayed_errata()
RatMatrix displayed(long p, const std::string& name, bool corrected = true);

class AppendixTower {
public:
    // p in {3, 5, 7}; larger p needs force
    static AppendixTower build(long p, bool force = false);

    long p() const { return p_; }
    long g() const { return p_ * p_; }
    long k(long r) const { return r / p_ + p_ * (r % p_); }

    const AmbientField& ambient() const { return *F_; }
    const AElem& u() const { return u_; }
    const AElem& v() const { return v_; }
    long sigma_exponent() const { return 1 + p_; }

    const RatMatrix& udot() const { return udot_; }
    const RatMatrix& vdot() const { return vdot_; }
    const RatMatrix& sigmadot() const { return sigmadot_; }
    // zeta -> zeta^k on U in the u^i v^j basis
    RatMatrix galois_dot(long k) const;
    std::vector<Rat> coords(const AElem& x) const;
    // val_u of an element of Q(pi_3)
    Valuation val_u(const AElem& x) const;

    std::vector<CheckLine> sanity_checks() const;

private:
    long p_ = 0;
    std::shared_ptr<const AmbientField> F_;
    AElem u_, v_;
    std::vector<AElem> basis_;
    std::shared_ptr<const SubspaceSolver> solver_;
    RatMatrix udot_, vdot_, sigmadot_;
};

struct ConjectureRow {
    long tau_exponent = 0;  // tau = sigma^k
    Valuation achieved;
    bool holds = false;
};
struct ConjectureReport {
    long bound = 0;  // 2p + 3
    std::vector<ConjectureRow> rows;
    bool holds_for_all = false;
};
// threads > 1 splits the tau range; rows stay in tau order
ConjectureReport check_conjecture_i(const AppendixTower& A, unsigned threads = 1);

// lengths of Lambda^{D,E}/Xi, Lambda^D/Lambda^{D,E}, Lambda/Lambda^D, Gamma/Lambda
struct ColengthChain {
    long xi_in_de = 0, de_in_d = 0, d_in_lambda = 0, lambda_in_gamma = 0;
    long total() const { return xi_in_de + de_in_d + d_in_lambda + lambda_in_gamma; }
    long formula = 0;            // p^2 (p^2 + (p^2 - p - 2)/2)
    bool xi_contained = false;   // Xi inside Lambda^{D,E}
    bool exact = false;          // Xi contains p^{B-1} Lambda at the working precision
};

// u^m Lambda membership for an entry (r, r') needs v_p >= this
long lambda_bound(const AppendixTower& A, long r, long r2, long m);
bool congruent_mod_ideal(const AppendixTower& A, const RatMatrix& x, const RatMatrix& y, long m, std::string* where = nullptr);

// Condition modules of Lambda^D and Lambda^{D,E} as submodules of the dual of
// Lambda mod p^B. The D conditions use (u_d, v_d), the E conditions (u_e, v_e);
// the ideals u^m Lambda always refer to the true udot.
struct TieModules {
    long precision = 0;
    long lambda_D = 0, lambda_DE = 0;  // colengths in Lambda
    std::vector<std::vector<std::uint64_t>> rows_D, rows_DE;
};
TieModules tie_modules(const AppendixTower& A, const RatMatrix& u_d, const RatMatrix& v_d, const RatMatrix& u_e,
                       const RatMatrix& v_e, unsigned threads = 1);
bool same_modules(const AppendixTower& A, const TieModules& a, const TieModules& b);

// lattice work beyond p = 5 needs force; modules_out receives the (udot, vdot) modules
ColengthChain colength_chain(const AppendixTower& A, unsigned threads = 1, bool force = false,
                             TieModules* modules_out = nullptr);

struct AppendixReport {
    std::vector<CheckLine> checks;
    bool pass = false;
};
// p in {3, 5}; base may carry the (udot, vdot) modules from colength_chain
AppendixReport reduced_matrices(const AppendixTower& A, unsigned threads = 1, const TieModules* base = nullptr);

}  // namespace tgr
