#include "levelbound/toric.hpp"
#include "levelbound/errors.hpp"

#include <sstream>

namespace levelbound {

int sym2_rank(int r) {
    if (r < 1)
        throw error("sym2_rank: r >= 1 required");
    return r * (r + 1) / 2;
}

SymLattice SymLattice::make(int r) {
    SymLattice s;
    s.r = r;
    s.rank = sym2_rank(r);
    return s;
}

mpz_class refinement_index(int r, long m) {
    if (m < 1)
        throw error("refinement_index: m >= 1 required");
    mpz_class idx;
    mpz_class mm = m;
    mpz_pow_ui(idx.get_mpz_t(), mm.get_mpz_t(), sym2_rank(r));
    return idx;
}

LevelRefinement level_refinement(int r, long m) {
    LevelRefinement L;
    L.base = SymLattice::make(r);
    L.m = m;
    L.index = refinement_index(r, m);
    return L;
}

std::string PullbackWitness::describe() const {
    std::ostringstream os;
    os << "r=" << r << " m=" << m << " <lambda,rho> base=" << pairing_base
       << " refined=" << pairing_refined;
    return os.str();
}

long boundary_pullback_multiplicity(long m, int r, PullbackWitness* witness) {
    if (m < 1)
        throw error("boundary_pullback_multiplicity: m >= 1 required");
    if (r < 1 || r > 3)
        throw error("boundary_pullback_multiplicity: witness lattice needs r <= 3");
    const int N = sym2_rank(r);
    // lambda = first basis character of S_r (the diagonal entry q_11 of the
    // symmetric pairing), rho = its dual ray; both primitive
    std::vector<mpz_class> lambda(N, mpz_class(0)), rho(N, mpz_class(0));
    lambda[0] = 1;
    rho[0] = 1;
    mpz_class base = 0;
    for (int i = 0; i < N; ++i)
        base += lambda[i] * rho[i];
    // written in the basis of (1/m) S_r, the coordinates of lambda scale
    // by m, so the ray valuation of the pulled-back character is m * base
    std::vector<mpz_class> lam_ref(N);
    mpz_class refined = 0;
    for (int i = 0; i < N; ++i) {
        lam_ref[i] = lambda[i] * m;
        refined += lam_ref[i] * rho[i];
    }
    if (refined != base * m)
        throw error("boundary_pullback_multiplicity: witness inconsistent");
    if (witness) {
        witness->r = r;
        witness->m = m;
        witness->character = lambda;
        witness->ray = rho;
        witness->pairing_base = base;
        witness->character_refined = lam_ref;
        witness->pairing_refined = refined;
    }
    return m;
}

} // namespace levelbound
