#ifndef LEVELBOUND_TORIC_HPP
#define LEVELBOUND_TORIC_HPP

#include <gmpxx.h>
#include <string>
#include <vector>

namespace levelbound {

// character lattice Sym^2 Z^r of the boundary torus
struct SymLattice {
    int r = 1;
    int rank = 1; // r(r+1)/2
    static SymLattice make(int r);
};

struct LevelRefinement {
    SymLattice base;
    long m = 1;
    mpz_class index; // [(1/m) S_r : S_r] = m^rank
};

int sym2_rank(int r);

// index of S_r inside (1/m) S_r
mpz_class refinement_index(int r, long m);

LevelRefinement level_refinement(int r, long m);

// witness data for the pullback multiplicity: a primitive character and a
// primitive dual ray, paired in the base lattice and in the refinement
struct PullbackWitness {
    int r = 1;
    long m = 1;
    std::vector<mpz_class> character;     // coordinates in the S_r basis
    std::vector<mpz_class> ray;           // coordinates in the dual basis
    mpz_class pairing_base;               // <lambda, rho> in S_r
    std::vector<mpz_class> character_refined; // same character in (1/m)S_r coords
    mpz_class pairing_refined;            // <lambda, rho> read in (1/m)S_r
    std::string describe() const;
};

// the multiplicity m in eta_m^* D = m D_m, with an explicit ray-valuation
// witness computed on the rank-r(r+1)/2 lattices (r <= 3)
long boundary_pullback_multiplicity(long m, int r, PullbackWitness* witness = nullptr);

} // namespace levelbound

#endif
