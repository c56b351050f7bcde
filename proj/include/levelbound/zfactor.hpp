#ifndef LEVELBOUND_ZFACTOR_HPP
#define LEVELBOUND_ZFACTOR_HPP

#include "levelbound/intpoly.hpp"

#include <map>
#include <utility>
#include <vector>

namespace levelbound {

// ---- integers ----
bool is_probable_prime(const mpz_class& n);
// |n| >= 1 -> prime -> exponent (sign dropped)
std::map<mpz_class, long> factor_integer(const mpz_class& n);

// ---- polynomials mod p (p an odd prime or 2) ----
namespace fp {
// dense, low degree first, coefficients in [0, p)
using Poly = std::vector<mpz_class>;

Poly reduce(const IntPoly& f, const mpz_class& p);
IntPoly lift_symmetric(const Poly& a, const mpz_class& p);
int degree(const Poly& a);
Poly mul(const Poly& a, const Poly& b, const mpz_class& p);
Poly rem(const Poly& a, const Poly& b, const mpz_class& p);
Poly gcd(Poly a, Poly b, const mpz_class& p); // monic
Poly make_monic(const Poly& a, const mpz_class& p);
Poly derivative(const Poly& a, const mpz_class& p);
bool is_squarefree(const Poly& a, const mpz_class& p);

// monic irreducible factors with multiplicity, deterministic order
std::vector<std::pair<Poly, int>> factor(const Poly& f, const mpz_class& p);
} // namespace fp

// f mod p factored into irreducibles; returned polys are the symmetric
// lifts of the monic factors mod p
std::vector<std::pair<IntPoly, int>> factor_mod_p(const IntPoly& f,
                                                  const mpz_class& p);

// full factorization over Z: content sign dropped; factors primitive with
// positive leading coefficient, sorted canonically, with multiplicities
std::vector<std::pair<IntPoly, int>> factor_over_z(const IntPoly& f);

bool is_irreducible_over_z(const IntPoly& f);

} // namespace levelbound

#endif
