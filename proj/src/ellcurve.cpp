#include "levelbound/ellcurve.hpp"
#include "levelbound/errors.hpp"
#include "levelbound/zfactor.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace levelbound {

std::string to_string(ReductionClass c) {
    switch (c) {
    case ReductionClass::good: return "good";
    case ReductionClass::multiplicative: return "multiplicative";
    case ReductionClass::additive: return "additive";
    }
    return "?";
}

std::string KodairaSymbol::str() const {
    switch (kind) {
    case In: return "I" + std::to_string(n);
    case InStar: return "I" + std::to_string(n) + "*";
    case II: return "II";
    case III: return "III";
    case IV: return "IV";
    case IVStar: return "IV*";
    case IIIStar: return "III*";
    case IIStar: return "II*";
    }
    return "?";
}

int KodairaSymbol::components() const {
    switch (kind) {
    case In: return n == 0 ? 1 : n;
    case InStar: return 5 + n;
    case II: return 1;
    case III: return 2;
    case IV: return 3;
    case IVStar: return 7;
    case IIIStar: return 8;
    case IIStar: return 9;
    }
    return 0;
}

bool WeierstrassCurve::is_integral() const {
    for (auto& v : a)
        if (v.get_den() != 1)
            return false;
    return true;
}

WeierstrassCurve WeierstrassCurve::integral_model() const {
    mpz_class u = 1;
    for (auto& v : a)
        mpz_lcm(u.get_mpz_t(), u.get_mpz_t(), v.get_den().get_mpz_t());
    if (u == 1)
        return *this;
    // a_i -> u^i a_i
    WeierstrassCurve E;
    mpz_class u1 = u, u2 = u * u;
    E.a[0] = a[0] * u1;
    E.a[1] = a[1] * u2;
    E.a[2] = a[2] * u2 * u1;
    E.a[3] = a[3] * u2 * u2;
    E.a[4] = a[4] * u2 * u2 * u2;
    for (auto& v : E.a)
        v.canonicalize();
    return E;
}

std::array<mpz_class, 5> WeierstrassCurve::integral_ainvs() const {
    if (!is_integral())
        throw error("integral_ainvs: curve not integral");
    return {a[0].get_num(), a[1].get_num(), a[2].get_num(), a[3].get_num(),
            a[4].get_num()};
}

std::string WeierstrassCurve::str() const {
    std::ostringstream os;
    os << "[" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << ","
       << a[4] << "]";
    return os.str();
}

CurveInvariants curve_invariants(const WeierstrassCurve& E) {
    const mpq_class &a1 = E.a[0], &a2 = E.a[1], &a3 = E.a[2], &a4 = E.a[3],
                    &a6 = E.a[4];
    CurveInvariants I;
    I.b2 = a1 * a1 + 4 * a2;
    I.b4 = 2 * a4 + a1 * a3;
    I.b6 = a3 * a3 + 4 * a6;
    I.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    I.c4 = I.b2 * I.b2 - 24 * I.b4;
    I.c6 = -I.b2 * I.b2 * I.b2 + 36 * I.b2 * I.b4 - 216 * I.b6;
    I.disc = -I.b2 * I.b2 * I.b8 - 8 * I.b4 * I.b4 * I.b4 - 27 * I.b6 * I.b6 +
             9 * I.b2 * I.b4 * I.b6;
    if (I.disc == 0)
        throw SingularCurve("curve " + E.str() + " is singular");
    if (I.c4 * I.c4 * I.c4 - I.c6 * I.c6 != 1728 * I.disc)
        throw error("curve invariants inconsistent");
    I.j = I.c4 * I.c4 * I.c4 / I.disc;
    I.j_is_zero = (I.c4 == 0);
    return I;
}

// -------------------- Tate's algorithm --------------------

namespace {

using AInt = std::array<mpz_class, 5>;

AInt trans(const AInt& ai, const mpz_class& r, const mpz_class& s,
           const mpz_class& t) {
    const mpz_class &a1 = ai[0], &a2 = ai[1], &a3 = ai[2], &a4 = ai[3],
                    &a6 = ai[4];
    return {a1 + 2 * s,
            a2 - s * a1 + 3 * r - s * s,
            a3 + r * a1 + 2 * t,
            a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
            a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1};
}

struct BInv {
    mpz_class b2, b4, b6, b8, c4, disc;
};

BInv binv(const AInt& a) {
    BInv B;
    B.b2 = a[0] * a[0] + 4 * a[1];
    B.b4 = 2 * a[3] + a[0] * a[2];
    B.b6 = a[2] * a[2] + 4 * a[4];
    B.b8 = a[0] * a[0] * a[4] + 4 * a[1] * a[4] - a[0] * a[2] * a[3] +
           a[1] * a[2] * a[2] - a[3] * a[3];
    B.c4 = B.b2 * B.b2 - 24 * B.b4;
    B.disc = -B.b2 * B.b2 * B.b8 - 8 * B.b4 * B.b4 * B.b4 -
             27 * B.b6 * B.b6 + 9 * B.b2 * B.b4 * B.b6;
    return B;
}

mpz_class pw(const mpz_class& p, int k) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), k);
    return r;
}

long modl(const mpz_class& a, const mpz_class& p) {
    mpz_class r = a % p;
    if (r < 0)
        r += p;
    return r.get_si();
}

mpz_class mod_inv(const mpz_class& a, const mpz_class& p) {
    mpz_class am = ((a % p) + p) % p, r;
    if (!mpz_invert(r.get_mpz_t(), am.get_mpz_t(), p.get_mpz_t()))
        throw error("tate: non-invertible residue");
    return r;
}

// translate so the singular point is at (0,0): p | a3', a4', a6'
void singular_to_origin(AInt& ai, const mpz_class& p) {
    if (p <= 3) {
        for (long r = 0; r < p; ++r)
            for (long t = 0; t < p; ++t) {
                AInt b = trans(ai, r, 0, t);
                if (b[2] % p == 0 && b[3] % p == 0 && b[4] % p == 0) {
                    ai = b;
                    return;
                }
            }
        throw error("tate: singular point search failed");
    }
    // p >= 5: singular x0 is the multiple root of 4x^3+b2x^2+2b4x+b6 mod p
    BInv B = binv(ai);
    fp::Poly g = fp::reduce(IntPoly({B.b6, 2 * B.b4, B.b2, 4}), p);
    fp::Poly gp = fp::derivative(g, p);
    fp::Poly h = fp::gcd(g, gp, p);
    mpz_class x0;
    if (fp::degree(h) == 1) {
        x0 = (p - h[0]) % p; // monic x + h0
    } else if (fp::degree(h) == 2) {
        // (x - x0)^2: x0 = -h1/2
        x0 = (p - h[1]) % p * mod_inv(2, p) % p;
    } else {
        throw error("tate: no multiple root mod p");
    }
    mpz_class t = ((-(ai[0] * x0 + ai[2])) % p + p) % p * mod_inv(2, p) % p;
    AInt b = trans(ai, x0, 0, t % p);
    if (b[2] % p != 0 || b[3] % p != 0 || b[4] % p != 0)
        throw error("tate: direct singular translation failed");
    ai = b;
}

// translate so that p | a1, a2; p^2 | a3, a4; p^3 | a6
void step6_normalize(AInt& ai, const mpz_class& p) {
    if (p <= 3) {
        for (long s = 0; s < p; ++s)
            for (long tq = 0; tq < p; ++tq) {
                AInt b = trans(ai, 0, s, tq * p);
                if (b[0] % p == 0 && b[1] % p == 0 && b[2] % pw(p, 2) == 0 &&
                    b[3] % pw(p, 2) == 0 && b[4] % pw(p, 3) == 0) {
                    ai = b;
                    return;
                }
            }
        throw error("tate: step-6 normalization failed");
    }
    mpz_class inv2 = mod_inv(2, p);
    mpz_class s = ((-ai[0] % p) + p) % p * inv2 % p;
    AInt b = trans(ai, 0, s, 0);
    // now p | a1', a2' and p | a3'; lift a3' to 0 mod p^2
    mpz_class a3p = b[2] / p;
    mpz_class tq = ((-a3p % p) + p) % p * inv2 % p;
    b = trans(b, 0, 0, tq * p);
    if (b[0] % p != 0 || b[1] % p != 0 || b[2] % pw(p, 2) != 0 ||
        b[3] % pw(p, 2) != 0 || b[4] % pw(p, 3) != 0)
        throw error("tate: direct step-6 normalization failed");
    ai = b;
}

// multiple root of T^3 + A T^2 + B T + C mod p and its multiplicity;
// returns multiplicity 1 when the roots are distinct
std::pair<mpz_class, int> cubic_multiple_root(const mpz_class& A,
                                              const mpz_class& B_,
                                              const mpz_class& C,
                                              const mpz_class& p) {
    if (p <= 3) {
        long pp = p.get_si();
        for (long x = 0; x < pp; ++x) {
            long poly[4] = {modl(C, p), modl(B_, p), modl(A, p), 1};
            int len = 4, m = 0;
            for (;;) {
                long val = 0;
                for (int i = len - 1; i >= 0; --i)
                    val = (val * x + poly[i]) % pp;
                if (val % pp != 0 || len == 1)
                    break;
                long q[4] = {0, 0, 0, 0};
                long carry = 0;
                for (int i = len - 1; i > 0; --i) {
                    q[i - 1] = (poly[i] + carry) % pp;
                    carry = (q[i - 1] * x) % pp;
                }
                for (int i = 0; i < len - 1; ++i)
                    poly[i] = q[i];
                --len;
                ++m;
            }
            if (m >= 2)
                return {mpz_class(x), m};
        }
        return {0, 1};
    }
    fp::Poly P = fp::reduce(IntPoly({C, B_, A, 1}), p);
    fp::Poly Pd = fp::derivative(P, p);
    fp::Poly h = fp::gcd(P, Pd, p);
    if (fp::degree(h) < 1)
        return {0, 1};
    mpz_class x0;
    if (fp::degree(h) == 1)
        x0 = (p - h[0]) % p;
    else
        x0 = (p - h[1]) % p * mod_inv(2, p) % p;
    // multiplicity: triple iff P''(x0) = 6 x0 + 2A = 0 mod p
    mpz_class snd = (6 * x0 + 2 * A) % p;
    return {x0, snd == 0 ? 3 : 2};
}

} // namespace

ReductionData tate_reduction(const WeierstrassCurve& E_in, const mpz_class& p) {
    if (!is_probable_prime(p))
        throw error("tate_reduction: modulus not prime");
    WeierstrassCurve Em = E_in.integral_model();
    CurveInvariants glob = curve_invariants(Em);
    ReductionData R;
    R.q = p;
    R.j_nonzero = !glob.j_is_zero;
    if (R.j_nonzero && glob.j != 0) {
        R.v_j = vp_q(glob.j, p);
        R.potentially_multiplicative = R.v_j < 0;
    }
    AInt ai = Em.integral_ainvs();

    for (int restart = 0; restart < 64; ++restart) {
        BInv B = binv(ai);
        long n = (B.disc == 0) ? -1 : vp(B.disc, p);
        if (n < 0)
            throw SingularCurve("tate_reduction: singular");
        if (n == 0) {
            R.cls = ReductionClass::good;
            R.kodaira = {KodairaSymbol::In, 0};
            R.v_min_disc = 0;
            R.cond_exponent = 0;
            R.c4_nonzero = (B.c4 != 0);
            R.v_c4 = R.c4_nonzero ? vp(B.c4, p) : 0;
            return R;
        }
        if (B.c4 != 0 && vp(B.c4, p) == 0) {
            // v(c4) = 0 forces minimality: type I_n
            R.cls = ReductionClass::multiplicative;
            R.kodaira = {KodairaSymbol::In, static_cast<int>(n)};
            R.v_min_disc = n;
            R.cond_exponent = 1;
            R.c4_nonzero = true;
            R.v_c4 = 0;
            return R;
        }
        // move the singular point to (0, 0)
        singular_to_origin(ai, p);
        B = binv(ai);
        n = vp(B.disc, p);
        long vc4 = (B.c4 == 0) ? -1 : vp(B.c4, p); // -1 encodes infinity
        auto finish = [&](KodairaSymbol k, ReductionClass c, long f) {
            R.cls = c;
            R.kodaira = k;
            R.v_min_disc = n;
            R.cond_exponent = f;
            R.c4_nonzero = (B.c4 != 0);
            R.v_c4 = (vc4 < 0) ? 0 : vc4;
            return R;
        };
        if (ai[4] % pw(p, 2) != 0)
            return finish({KodairaSymbol::II, 0}, ReductionClass::additive, n);
        if (B.b8 % pw(p, 3) != 0)
            return finish({KodairaSymbol::III, 0}, ReductionClass::additive, n - 1);
        if (B.b6 % pw(p, 3) != 0)
            return finish({KodairaSymbol::IV, 0}, ReductionClass::additive, n - 2);
        // normalize: p | a1, a2; p^2 | a3, a4; p^3 | a6
        step6_normalize(ai, p);
        // P(T) = T^3 + A T^2 + B T + C mod p
        mpz_class A = ai[1] / p;
        mpz_class Bc = ai[3] / pw(p, 2);
        mpz_class C = ai[4] / pw(p, 3);
        auto [mr, mult] = cubic_multiple_root(A, Bc, C, p);
        mpz_class mult_root = mr;
        if (mult == 1)
            return finish({KodairaSymbol::InStar, 0}, ReductionClass::additive,
                          n - 4);
        if (mult == 2) {
            // type I_m*: sub-procedure with alternating quadratics
            ai = trans(ai, p * mult_root, 0, 0);
            int m = 1;
            mpz_class mx = p * p, my = p * p;
            for (;;) {
                if (m > 300)
                    throw error("tate_reduction: In* loop runaway");
                mpz_class a2t = ai[1] / p;
                if (ai[2] % my != 0 || ai[3] % (p * mx) != 0 ||
                    ai[4] % (mx * my) != 0)
                    throw error("tate_reduction: In* invariant failed");
                mpz_class a3t = ai[2] / my;
                mpz_class a4t = ai[3] / (p * mx);
                mpz_class a6t = ai[4] / (mx * my);
                if ((a3t * a3t + 4 * a6t) % p != 0) {
                    return finish({KodairaSymbol::InStar, m},
                                  ReductionClass::additive, n - 4 - m);
                }
                mpz_class y0;
                if (p == 2)
                    y0 = modl(a6t, p);
                else {
                    mpz_class inv2;
                    mpz_class two = 2;
                    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
                    y0 = modl(-a3t * inv2, p);
                }
                ai = trans(ai, 0, 0, my * y0);
                ++m;
                my *= p;
                a4t = ai[3] / (p * mx);
                if (ai[4] % (mx * my) != 0)
                    throw error("tate_reduction: In* invariant failed (even)");
                a6t = ai[4] / (mx * my);
                if ((a4t * a4t - 4 * a2t * a6t) % p != 0) {
                    return finish({KodairaSymbol::InStar, m},
                                  ReductionClass::additive, n - 4 - m);
                }
                mpz_class t0;
                if (p == 2)
                    t0 = modl(a6t * a2t, p);
                else {
                    mpz_class d = 2 * a2t, dinv;
                    mpz_class dm = ((d % p) + p) % p;
                    mpz_invert(dinv.get_mpz_t(), dm.get_mpz_t(), p.get_mpz_t());
                    t0 = modl(-a4t * dinv, p);
                }
                ai = trans(ai, mx * t0, 0, 0);
                ++m;
                mx *= p;
            }
        }
        // triple root: move to T = 0
        ai = trans(ai, p * mult_root, 0, 0);
        if (ai[1] % pw(p, 2) != 0 || ai[3] % pw(p, 3) != 0 ||
            ai[4] % pw(p, 4) != 0)
            throw error("tate_reduction: triple-root invariant failed");
        mpz_class a32 = ai[2] / pw(p, 2);
        mpz_class a64 = ai[4] / pw(p, 4);
        if ((a32 * a32 + 4 * a64) % p != 0)
            return finish({KodairaSymbol::IVStar, 0}, ReductionClass::additive,
                          n - 6);
        mpz_class y0;
        if (p == 2)
            y0 = modl(a64, p);
        else {
            mpz_class inv2, two = 2;
            mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
            y0 = modl(-a32 * inv2, p);
        }
        ai = trans(ai, 0, 0, y0 * pw(p, 2));
        if (ai[2] % pw(p, 3) != 0 || ai[4] % pw(p, 5) != 0)
            throw error("tate_reduction: step-8 invariant failed");
        if (ai[3] % pw(p, 4) != 0)
            return finish({KodairaSymbol::IIIStar, 0}, ReductionClass::additive,
                          n - 7);
        if (ai[4] % pw(p, 6) != 0)
            return finish({KodairaSymbol::IIStar, 0}, ReductionClass::additive,
                          n - 8);
        // non-minimal: rescale and restart
        if (ai[0] % p != 0)
            throw error("tate_reduction: rescale invariant failed");
        ai = {ai[0] / p, ai[1] / pw(p, 2), ai[2] / pw(p, 3), ai[3] / pw(p, 4),
              ai[4] / pw(p, 6)};
    }
    throw error("tate_reduction: did not terminate");
}

// -------------------- point counting --------------------

long count_points_mod_p(const WeierstrassCurve& E_in, const mpz_class& p) {
    if (p >= 1000000)
        throw PrimeTooLarge("count_points_mod_p: p >= 10^6");
    ReductionData R = tate_reduction(E_in, p);
    if (R.cls != ReductionClass::good)
        throw BadReduction("count_points_mod_p: bad reduction at " + p.get_str());
    WeierstrassCurve Em = E_in.integral_model();
    AInt ai = Em.integral_ainvs();
    long pp = p.get_si();
    if (pp == 2) {
        long cnt = 1;
        long a1 = modl(ai[0], p), a2 = modl(ai[1], p), a3 = modl(ai[2], p),
             a4 = modl(ai[3], p), a6 = modl(ai[4], p);
        for (long x = 0; x < 2; ++x)
            for (long y = 0; y < 2; ++y) {
                long lhs = (y * y + a1 * x * y + a3 * y) % 2;
                long rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
                if (lhs == rhs)
                    ++cnt;
            }
        return cnt;
    }
    // complete the square: #E = 1 + sum_x (1 + chi(d(x))), d = 4x^3+b2x^2+2b4x+b6
    BInv B = binv(ai);
    long b2 = modl(B.b2, p), b4 = modl(B.b4, p), b6 = modl(B.b6, p);
    std::vector<unsigned char> sq(pp, 0);
    for (long y = 0; y < pp; ++y)
        sq[(y * y) % pp] = 1;
    long total = 1 + pp;
    for (long x = 0; x < pp; ++x) {
        long x2 = (x * x) % pp;
        long d = (4 * ((x2 * x) % pp) + b2 * x2 + 2 * b4 * x + b6) % pp;
        if (d == 0)
            continue;
        total += sq[d] ? 1 : -1;
    }
    return total;
}

// -------------------- division polynomials --------------------

IntPoly division_poly(const WeierstrassCurve& E_in, int m) {
    if (m < 2 || m > 13)
        throw error("division_poly: m out of range 2..13");
    WeierstrassCurve Em = E_in.integral_model();
    AInt ai = Em.integral_ainvs();
    BInv B = binv(ai);
    const mpz_class &b2 = B.b2, &b4 = B.b4, &b6 = B.b6, &b8 = B.b8;
    IntPoly F({b6, 2 * b4, b2, 4}); // psi_2^2
    std::vector<IntPoly> e(m + 3);
    e[0] = IntPoly();
    e[1] = IntPoly{1};
    e[2] = IntPoly{1};
    if (m + 2 >= 3)
        e[3] = IntPoly({b8, 3 * b6, 3 * b4, b2, 3});
    if (m + 2 >= 4)
        e[4] = IntPoly({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6,
                        5 * b4, b2, 2});
    for (int k = 5; k <= m; ++k) {
        if (k % 2 == 1) {
            int mm = (k - 1) / 2;
            if (mm % 2 == 0)
                e[k] = e[mm + 2] * e[mm] * e[mm] * e[mm] * F * F -
                       e[mm - 1] * e[mm + 1] * e[mm + 1] * e[mm + 1];
            else
                e[k] = e[mm + 2] * e[mm] * e[mm] * e[mm] -
                       e[mm - 1] * e[mm + 1] * e[mm + 1] * e[mm + 1] * F * F;
        } else {
            int mm = k / 2;
            e[k] = e[mm] * (e[mm + 2] * e[mm - 1] * e[mm - 1] -
                            e[mm - 2] * e[mm + 1] * e[mm + 1]);
        }
    }
    return (m % 2 == 1) ? e[m] : e[m] * F;
}

// -------------------- group law --------------------

bool ec_on_curve(const WeierstrassCurve& E, const ECPoint& P) {
    if (P.infinity)
        return true;
    const mpq_class &a1 = E.a[0], &a2 = E.a[1], &a3 = E.a[2], &a4 = E.a[3],
                    &a6 = E.a[4];
    mpq_class lhs = P.y * P.y + a1 * P.x * P.y + a3 * P.y;
    mpq_class rhs = P.x * P.x * P.x + a2 * P.x * P.x + a4 * P.x + a6;
    return lhs == rhs;
}

ECPoint ec_neg(const WeierstrassCurve& E, const ECPoint& P) {
    if (P.infinity)
        return P;
    return ECPoint::affine(P.x, -P.y - E.a[0] * P.x - E.a[2]);
}

ECPoint ec_add(const WeierstrassCurve& E, const ECPoint& P, const ECPoint& Q) {
    if (P.infinity)
        return Q;
    if (Q.infinity)
        return P;
    const mpq_class &a1 = E.a[0], &a2 = E.a[1], &a3 = E.a[2], &a4 = E.a[3],
                    &a6 = E.a[4];
    mpq_class lambda, nu;
    if (P.x == Q.x) {
        if (Q.y == -P.y - a1 * P.x - a3)
            return ECPoint::at_infinity();
        mpq_class den = 2 * P.y + a1 * P.x + a3;
        lambda = (3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y) / den;
        nu = (-P.x * P.x * P.x + a4 * P.x + 2 * a6 - a3 * P.y) / den;
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
        nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
    }
    mpq_class x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
    mpq_class y3 = -(lambda + a1) * x3 - nu - a3;
    x3.canonicalize();
    y3.canonicalize();
    return ECPoint::affine(x3, y3);
}

int ec_order(const WeierstrassCurve& E, const ECPoint& P, int cap) {
    if (P.infinity)
        return 1;
    ECPoint Q = P;
    for (int k = 1; k <= cap; ++k) {
        if (Q.infinity)
            return k;
        Q = ec_add(E, Q, P);
    }
    return 0;
}

// -------------------- torsion --------------------

namespace {

// rational y for given rational x, if (x, y) lies on E
std::optional<mpq_class> y_on_curve(const WeierstrassCurve& E, const mpq_class& x) {
    const mpq_class &a1 = E.a[0], &a2 = E.a[1], &a3 = E.a[2], &a4 = E.a[3],
                    &a6 = E.a[4];
    mpq_class b = a1 * x + a3;
    mpq_class c = -(x * x * x + a2 * x * x + a4 * x + a6);
    mpq_class disc = b * b - 4 * c;
    if (disc < 0)
        return std::nullopt;
    mpq_class s;
    // rational square root: num and den must both be squares
    mpz_class sn, sd;
    if (mpz_perfect_square_p(disc.get_num().get_mpz_t()) == 0 ||
        mpz_perfect_square_p(disc.get_den().get_mpz_t()) == 0)
        return std::nullopt;
    mpz_sqrt(sn.get_mpz_t(), disc.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), disc.get_den().get_mpz_t());
    s = make_rational(sn, sd);
    mpq_class y = (-b + s) / 2;
    y.canonicalize();
    return y;
}

// rational roots of an integer polynomial from its linear factors
std::vector<mpq_class> rational_roots(const IntPoly& f) {
    std::vector<mpq_class> out;
    if (f.is_zero() || f.degree() < 1)
        return out;
    for (auto& [g, e] : factor_over_z(f)) {
        if (g.degree() == 1)
            out.push_back(make_rational(-g.coeff(0), g.coeff(1)));
    }
    return out;
}

} // namespace

std::string TorsionInfo::structure() const {
    if (inv_a == 1)
        return "Z/" + std::to_string(inv_b);
    return "Z/" + std::to_string(inv_a) + " x Z/" + std::to_string(inv_b);
}

TorsionInfo rational_torsion(const WeierstrassCurve& E_in) {
    WeierstrassCurve E = E_in.integral_model();
    CurveInvariants I = curve_invariants(E);
    TorsionInfo T;
    // gcd of #E(F_p) over >= 5 good primes p > 7 (avoids losing p-parts)
    mpz_class disc_num = I.disc.get_num();
    mpz_class bound = 0;
    int used = 0;
    for (mpz_class p = 11; used < 5; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
        if (disc_num % p == 0)
            continue;
        long N = count_points_mod_p(E, p);
        mpz_class Nz = N;
        mpz_gcd(bound.get_mpz_t(), bound.get_mpz_t(), Nz.get_mpz_t());
        ++used;
    }
    T.count_gcd_bound = bound.get_si();

    std::vector<ECPoint> pts;
    pts.push_back(ECPoint::at_infinity());
    auto record = [&](const ECPoint& P) {
        if (std::find(pts.begin(), pts.end(), P) == pts.end())
            pts.push_back(P);
    };
    // realize points: search x among rational roots of division polynomials
    // for orders dividing the gcd bound (Mazur caps order at 12, no 11)
    for (int m : {2, 3, 4, 5, 6, 7, 8, 9, 10, 12}) {
        if (bound % m != 0)
            continue;
        IntPoly psi = division_poly(E, m);
        for (auto& x : rational_roots(psi)) {
            auto y = y_on_curve(E, x);
            if (!y)
                continue;
            ECPoint P = ECPoint::affine(x, *y);
            int ord = ec_order(E, P, 14);
            if (ord == 0 || ord > 12)
                continue;
            // record the whole cyclic subgroup
            ECPoint Q = P;
            while (!Q.infinity) {
                record(Q);
                Q = ec_add(E, Q, P);
            }
        }
    }
    T.order = static_cast<long>(pts.size());
    T.points = pts;
    // structure: Z/a x Z/b with a = 2 iff full rational 2-torsion
    int two_torsion = 0;
    for (auto& P : pts)
        if (!P.infinity && ec_order(E, P, 4) == 2)
            ++two_torsion;
    if (two_torsion == 3) {
        T.inv_a = 2;
        T.inv_b = static_cast<int>(T.order / 2);
    } else {
        T.inv_a = 1;
        T.inv_b = static_cast<int>(T.order);
    }
    // generators
    ECPoint best = ECPoint::at_infinity();
    int best_ord = 1;
    for (auto& P : pts) {
        int o = ec_order(E, P, 14);
        if (o > best_ord) {
            best_ord = o;
            best = P;
        }
    }
    if (best_ord > 1)
        T.generators.push_back(best);
    if (T.inv_a == 2) {
        // a 2-torsion point outside <best>
        std::vector<ECPoint> cyc;
        ECPoint Q = best;
        cyc.push_back(ECPoint::at_infinity());
        while (!Q.infinity) {
            cyc.push_back(Q);
            Q = ec_add(E, Q, best);
        }
        for (auto& P : pts) {
            if (!P.infinity && ec_order(E, P, 4) == 2 &&
                std::find(cyc.begin(), cyc.end(), P) == cyc.end()) {
                T.generators.push_back(P);
                break;
            }
        }
    }
    if (T.order != static_cast<long>(T.inv_a) * T.inv_b)
        throw error("rational_torsion: inconsistent structure");
    return T;
}

// -------------------- full level structure --------------------

namespace {

// x(2P) = A(x)/B(x) on the x-line
void duplication_map(const WeierstrassCurve& E, IntPoly& A, IntPoly& B) {
    AInt ai = E.integral_ainvs();
    BInv b = binv(ai);
    A = IntPoly({-b.b8, -2 * b.b6, -b.b4, 0, 1});
    B = IntPoly({b.b6, 2 * b.b4, b.b2, 4});
}

// does the root set of g map into itself under doubling?
bool closed_under_doubling(const WeierstrassCurve& E, const IntPoly& g) {
    IntPoly A, B;
    duplication_map(E, A, B);
    int d = g.degree();
    // G(x) = B^d * g(A/B)
    IntPoly G;
    IntPoly Apow{1};
    std::vector<IntPoly> Bpow(d + 1);
    Bpow[0] = IntPoly{1};
    for (int i = 1; i <= d; ++i)
        Bpow[i] = Bpow[i - 1] * B;
    for (int i = 0; i <= d; ++i) {
        G = G + Apow * Bpow[d - i] * g.coeff(i);
        if (i < d)
            Apow = Apow * A;
    }
    IntPoly q, r;
    IntPoly::pseudo_divrem(G, g, q, r);
    return r.is_zero();
}

} // namespace

LevelStructureReport full_level_detect(const WeierstrassCurve& E_in, int p) {
    if (p > 7)
        throw UnsupportedPrime("full_level_detect: p > 7");
    if (p != 2 && p != 3 && p != 5 && p != 7)
        throw UnsupportedPrime("full_level_detect: p must be a prime <= 7");
    WeierstrassCurve E = E_in.integral_model();
    curve_invariants(E); // singularity check
    LevelStructureReport rep;
    rep.p = p;

    if (p == 2) {
        IntPoly F = division_poly(E, 2);
        auto roots = rational_roots(F);
        std::sort(roots.begin(), roots.end());
        for (auto& x : roots) {
            mpq_class y = (-(E.a[0] * x + E.a[2])) / 2;
            y.canonicalize();
            ECPoint P = ECPoint::affine(x, y);
            if (ec_on_curve(E, P) && !rep.generator)
                rep.generator = P;
            // kernel polynomial of the order-2 subgroup through x
            mpz_class den = x.get_den();
            rep.stable_kernels.push_back(IntPoly({-x.get_num(), den}));
        }
        rep.has_rational_p_point = rep.generator.has_value();
        rep.full_level = (roots.size() == 3);
        rep.certificate =
            rep.full_level
                ? "E[2] fully rational: three 2-isogeny kernels over Q"
                : "rational 2-torsion rank insufficient for full level";
        return rep;
    }

    IntPoly psi = division_poly(E, p);
    auto fac = factor_over_z(psi);
    std::vector<IntPoly> irr;
    for (auto& [g, e] : fac)
        for (int i = 0; i < e; ++i)
            irr.push_back(g);
    // rational point of exact order p (any affine root of psi_p works)
    for (auto& g : irr) {
        if (g.degree() != 1)
            continue;
        mpq_class x = make_rational(-g.coeff(0), g.coeff(1));
        auto y = y_on_curve(E, x);
        if (y) {
            rep.generator = ECPoint::affine(x, *y);
            rep.has_rational_p_point = true;
            break;
        }
    }
    // stable kernels: divisors of psi_p of degree (p-1)/2 closed under
    // doubling; doubling orbits have full length for p <= 7, so closure
    // certifies "x-coordinates of one subgroup"
    const int target = (p - 1) / 2;
    const int nf = static_cast<int>(irr.size());
    std::vector<int> pick;
    std::vector<IntPoly> kernels;
    auto consider = [&](const std::vector<int>& sel) {
        IntPoly g{1};
        for (int i : sel)
            g = g * irr[i];
        g = g.primitive_part();
        if (!closed_under_doubling(E, g))
            return;
        if (std::find(kernels.begin(), kernels.end(), g) == kernels.end())
            kernels.push_back(g);
    };
    std::function<void(int, int)> rec = [&](int start, int degrees_left) {
        if (degrees_left == 0) {
            consider(pick);
            return;
        }
        for (int i = start; i < nf; ++i) {
            if (irr[i].degree() > degrees_left)
                continue;
            pick.push_back(i);
            rec(i + 1, degrees_left - irr[i].degree());
            pick.pop_back();
        }
    };
    rec(0, target);
    std::sort(kernels.begin(), kernels.end(), [](const IntPoly& a, const IntPoly& b) {
        for (int i = std::max(a.degree(), b.degree()); i >= 0; --i)
            if (a.coeff(i) != b.coeff(i))
                return a.coeff(i) < b.coeff(i);
        return false;
    });
    rep.stable_kernels = kernels;
    rep.full_level = rep.has_rational_p_point && kernels.size() >= 2;
    if (rep.full_level) {
        rep.certificate =
            "E[" + std::to_string(p) + "] = <P> + C: rational point P of order " +
            std::to_string(p) +
            " and a second Galois-stable kernel; the Weil pairing forces C = mu_" +
            std::to_string(p);
    } else if (rep.has_rational_p_point) {
        rep.certificate = "rational " + std::to_string(p) +
                          "-torsion but no second stable isogeny kernel";
    } else {
        rep.certificate = "no rational point of order " + std::to_string(p);
    }
    return rep;
}

// -------------------- quadratic-field curves --------------------

namespace {

// arithmetic in K = Q[x]/(x^2 + bx + c)
struct QuadCtx {
    mpq_class b, c;
};

FieldElem qmul(const QuadCtx& K, const FieldElem& A, const FieldElem& B) {
    mpq_class u1 = A.empty() ? mpq_class(0) : A[0];
    mpq_class v1 = A.size() > 1 ? A[1] : mpq_class(0);
    mpq_class u2 = B.empty() ? mpq_class(0) : B[0];
    mpq_class v2 = B.size() > 1 ? B[1] : mpq_class(0);
    return {u1 * u2 - K.c * v1 * v2, u1 * v2 + u2 * v1 - K.b * v1 * v2};
}

FieldElem qadd(const FieldElem& A, const FieldElem& B) {
    FieldElem r(2, mpq_class(0));
    if (!A.empty())
        r[0] += A[0];
    if (A.size() > 1)
        r[1] += A[1];
    if (!B.empty())
        r[0] += B[0];
    if (B.size() > 1)
        r[1] += B[1];
    return r;
}

FieldElem qscale(const FieldElem& A, const mpq_class& s) {
    FieldElem r(2, mpq_class(0));
    if (!A.empty())
        r[0] = A[0] * s;
    if (A.size() > 1)
        r[1] = A[1] * s;
    return r;
}

bool qzero(const FieldElem& A) {
    for (auto& v : A)
        if (v != 0)
            return false;
    return true;
}

FieldElem qinv(const QuadCtx& K, const FieldElem& A) {
    // 1/(u+v theta) = (u - v b - v theta)/N, N = u^2 - b u v + c v^2
    mpq_class u = A.empty() ? mpq_class(0) : A[0];
    mpq_class v = A.size() > 1 ? A[1] : mpq_class(0);
    mpq_class N = u * u - K.b * u * v + K.c * v * v;
    if (N == 0)
        throw error("quad inverse of zero");
    return {(u - v * K.b) / N, -v / N};
}

} // namespace

FieldElem quad_j_invariant(const QuadCurve& E) {
    if (!E.base || E.base->degree != 2)
        throw UnsupportedDegree("quad_j_invariant: base must be quadratic");
    QuadCtx K{mpq_class(E.base->defining_poly.coeff(1)),
              mpq_class(E.base->defining_poly.coeff(0))};
    auto mul = [&](const FieldElem& a, const FieldElem& b) { return qmul(K, a, b); };
    const FieldElem &a1 = E.a[0], &a2 = E.a[1], &a3 = E.a[2], &a4 = E.a[3],
                    &a6 = E.a[4];
    FieldElem b2 = qadd(mul(a1, a1), qscale(a2, 4));
    FieldElem b4 = qadd(qscale(a4, 2), mul(a1, a3));
    FieldElem b6 = qadd(mul(a3, a3), qscale(a6, 4));
    FieldElem b8 = qadd(qadd(mul(mul(a1, a1), a6), qscale(mul(a2, a6), 4)),
                        qadd(qscale(mul(mul(a1, a3), a4), -1),
                             qadd(mul(a2, mul(a3, a3)),
                                  qscale(mul(a4, a4), -1))));
    FieldElem c4 = qadd(mul(b2, b2), qscale(b4, -24));
    FieldElem disc = qadd(qadd(qscale(mul(mul(b2, b2), b8), -1),
                               qscale(mul(mul(b4, b4), b4), -8)),
                          qadd(qscale(mul(b6, b6), -27),
                               qscale(mul(b2, mul(b4, b6)), 9)));
    if (qzero(disc))
        throw SingularCurve("quadratic-field curve is singular");
    return qmul(K, mul(mul(c4, c4), c4), qinv(K, disc));
}

QuadReductionProfile quadratic_valuation_profile(const QuadCurve& E,
                                                 const PrimeIdealFactor& q) {
    FieldElem j = quad_j_invariant(E);
    QuadReductionProfile prof;
    if (qzero(j)) {
        prof.j_nonzero = false;
        prof.v_j = 0;
        prof.potentially_multiplicative = false;
        return prof;
    }
    prof.v_j = element_valuation(*E.base, j, q);
    prof.potentially_multiplicative = prof.v_j < 0;
    return prof;
}

} // namespace levelbound
