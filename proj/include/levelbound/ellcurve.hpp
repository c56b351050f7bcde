#ifndef LEVELBOUND_ELLCURVE_HPP
#define LEVELBOUND_ELLCURVE_HPP

#include "levelbound/intpoly.hpp"
#include "levelbound/numberfield.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace levelbound {

enum class ReductionClass { good, multiplicative, additive };

std::string to_string(ReductionClass c);

struct KodairaSymbol {
    enum Kind { In, InStar, II, III, IV, IVStar, IIIStar, IIStar } kind = In;
    int n = 0; // for In / In*; I0 is In with n = 0
    std::string str() const;
    bool operator==(const KodairaSymbol&) const = default;
    // number of irreducible components of the special fiber
    int components() const;
};

struct WeierstrassCurve {
    std::array<mpq_class, 5> a; // a1, a2, a3, a4, a6

    static WeierstrassCurve from_ainvs(std::array<mpq_class, 5> ai) {
        return WeierstrassCurve{std::move(ai)};
    }
    bool is_integral() const;
    // isomorphic curve with integral coefficients ((x,y) -> (u^2 x, u^3 y))
    WeierstrassCurve integral_model() const;
    std::array<mpz_class, 5> integral_ainvs() const; // requires is_integral
    std::string str() const;
};

struct CurveInvariants {
    mpq_class b2, b4, b6, b8, c4, c6, disc, j;
    bool j_is_zero = false;
};

// throws SingularCurve when disc = 0; checks 1728 disc = c4^3 - c6^2
CurveInvariants curve_invariants(const WeierstrassCurve& E);

struct ReductionData {
    mpz_class q;
    long v_min_disc = 0;
    long v_c4 = 0;          // of the minimal model; meaningful if c4_nonzero
    bool c4_nonzero = true;
    long v_j = 0;           // of the j-invariant, may be negative
    bool j_nonzero = true;  // v_j meaningful only when true
    ReductionClass cls = ReductionClass::good;
    KodairaSymbol kodaira;
    long cond_exponent = 0;
    bool potentially_multiplicative = false; // v_j < 0
};

// Tate's algorithm at p over Q (finds the minimal model itself)
ReductionData tate_reduction(const WeierstrassCurve& E, const mpz_class& p);

// #E(F_p) including infinity; naive O(p) with quadratic-character lookup
long count_points_mod_p(const WeierstrassCurve& E, const mpz_class& p);

// x-only division polynomial: odd m -> psi_m; even m -> psi_m * psi_2,
// both polynomials in x alone; m in 2..13
IntPoly division_poly(const WeierstrassCurve& E, int m);

struct ECPoint {
    bool infinity = true;
    mpq_class x, y;
    static ECPoint at_infinity() { return {}; }
    static ECPoint affine(mpq_class px, mpq_class py) {
        return {false, std::move(px), std::move(py)};
    }
    bool operator==(const ECPoint&) const = default;
};

bool ec_on_curve(const WeierstrassCurve& E, const ECPoint& P);
ECPoint ec_neg(const WeierstrassCurve& E, const ECPoint& P);
ECPoint ec_add(const WeierstrassCurve& E, const ECPoint& P, const ECPoint& Q);
// exact order if <= cap, else 0
int ec_order(const WeierstrassCurve& E, const ECPoint& P, int cap = 16);

struct TorsionInfo {
    long order = 1;
    int inv_a = 1, inv_b = 1; // group = Z/a x Z/b with a | b
    long count_gcd_bound = 0; // gcd of #E(F_p) over the sampled good primes
    std::vector<ECPoint> points;     // the full torsion subgroup incl. O
    std::vector<ECPoint> generators; // one or two points
    std::string structure() const;
};

TorsionInfo rational_torsion(const WeierstrassCurve& E);

struct LevelStructureReport {
    int p = 0;
    bool has_rational_p_point = false;
    std::vector<IntPoly> stable_kernels; // primitive kernel polynomials
    bool full_level = false;
    std::string certificate;
    std::optional<ECPoint> generator;
};

// full level-p structure detection over Q, p prime <= 7
LevelStructureReport full_level_detect(const WeierstrassCurve& E, int p);

// ---- curves over quadratic fields: valuation-level analysis only ----
struct QuadCurve {
    const NumberField* base = nullptr;
    std::array<FieldElem, 5> a;
};

struct QuadReductionProfile {
    long v_j = 0;
    bool j_nonzero = true;
    bool potentially_multiplicative = false;
};

FieldElem quad_j_invariant(const QuadCurve& E); // throws SingularCurve
QuadReductionProfile quadratic_valuation_profile(const QuadCurve& E,
                                                 const PrimeIdealFactor& q);

} // namespace levelbound

#endif
