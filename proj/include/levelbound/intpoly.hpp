#ifndef LEVELBOUND_INTPOLY_HPP
#define LEVELBOUND_INTPOLY_HPP

#include <gmpxx.h>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace levelbound {

// exact rational with canonical gcd(num,den)=1, den >= 1
using BigRational = mpq_class;

mpq_class make_rational(const mpz_class& num, const mpz_class& den);
long vp(const mpz_class& n, const mpz_class& p); // p-adic valuation; n != 0
long vp_q(const mpq_class& x, const mpz_class& p);

// Dense univariate polynomial over Z, coefficients low degree first.
// All arithmetic is exact.
class IntPoly {
    std::vector<mpz_class> c_;
    void trim();

public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(const mpz_class& a);
    static IntPoly monomial(const mpz_class& a, int deg);

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 if zero
    bool is_zero() const { return c_.empty(); }
    const mpz_class& lc() const;
    mpz_class coeff(int i) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_monic() const { return !c_.empty() && lc() == 1; }

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly&, const IntPoly&);
    friend IntPoly operator-(const IntPoly&, const IntPoly&);
    friend IntPoly operator*(const IntPoly&, const IntPoly&);
    IntPoly operator*(const mpz_class& a) const;
    bool operator==(const IntPoly&) const = default;

    IntPoly derivative() const;
    mpz_class content() const;           // >= 0; 0 only for zero poly
    IntPoly primitive_part() const;      // content removed, lc > 0
    mpz_class eval(const mpz_class& x) const;
    mpq_class eval_q(const mpq_class& x) const;
    mpz_class inf_norm() const;

    // lc(g)^(deg f - deg g + 1) * f = q*g + r with deg r < deg g
    static void pseudo_divrem(const IntPoly& f, const IntPoly& g,
                              IntPoly& q, IntPoly& r);
    // quotient if g | f over Z, else nullopt
    std::optional<IntPoly> exact_div(const IntPoly& g) const;
    bool divisible_by(const IntPoly& g) const { return exact_div(g).has_value(); }

    static IntPoly gcd(IntPoly a, IntPoly b);  // primitive, lc > 0
    static mpz_class resultant(const IntPoly& f, const IntPoly& g);
    // (-1)^(n(n-1)/2) Res(f, f') / lc(f)
    mpz_class poly_disc() const;

    // minimal polynomial of lc*alpha when alpha is a root: lc^(n-1) f(x/lc)
    IntPoly monicized() const;

    std::string str(const std::string& var = "x") const;
    std::string coeff_list() const;                       // "c0,c1,...,cn"
    static IntPoly parse_coeff_list(const std::string&);  // inverse of above
};

} // namespace levelbound

#endif
