#include "levelbound/zfactor.hpp"
#include "levelbound/errors.hpp"

#include <algorithm>
#include <random>

namespace levelbound {

bool is_probable_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) > 0;
}

namespace {

// Brent's variant of Pollard rho; deterministic parameter sweep
mpz_class rho_factor(const mpz_class& n) {
    if (n % 2 == 0)
        return 2;
    for (unsigned long c = 1; c < 64; ++c) {
        mpz_class y = 2, r = 1, q = 1, g = 1, x, ys;
        const unsigned long m = 128;
        while (g == 1) {
            x = y;
            for (mpz_class i = 0; i < r; ++i)
                y = (y * y + c) % n;
            mpz_class k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (mpz_class i = 0; i < std::min(mpz_class(m), mpz_class(r - k)); ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            do {
                ys = (ys * ys + c) % n;
                mpz_class d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
    throw error("rho failed on " + n.get_str());
}

void factor_rec(const mpz_class& n, std::map<mpz_class, long>& out) {
    if (n == 1)
        return;
    if (is_probable_prime(n)) {
        out[n]++;
        return;
    }
    mpz_class d = rho_factor(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

std::map<mpz_class, long> factor_integer(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    if (n == 0)
        throw error("factor_integer(0)");
    std::map<mpz_class, long> out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (n % p == 0) {
            out[p]++;
            n /= p;
        }
    }
    // trial division to 10^4, then rho
    for (mpz_class d = 41; d * d <= n && d < 10000; d += 2) {
        while (n % d == 0) {
            out[d]++;
            n /= d;
        }
    }
    if (n > 1)
        factor_rec(n, out);
    return out;
}

// ---------------- F_p[x] ----------------

namespace fp {

namespace {
void trim(Poly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}
mpz_class inv_mod(const mpz_class& a, const mpz_class& p) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()))
        throw error("not invertible mod p");
    return r;
}
} // namespace

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly reduce(const IntPoly& f, const mpz_class& p) {
    Poly a(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i) {
        mpz_class v = f.coeff(i) % p;
        if (v < 0)
            v += p;
        a[i] = v;
    }
    trim(a);
    return a;
}

IntPoly lift_symmetric(const Poly& a, const mpz_class& p) {
    std::vector<mpz_class> c(a.size());
    mpz_class half = p / 2;
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = (a[i] > half) ? mpz_class(a[i] - p) : a[i];
    return IntPoly(std::move(c));
}

Poly add(const Poly& a, const Poly& b, const mpz_class& p) {
    Poly c(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.size())
            c[i] += a[i];
        if (i < b.size())
            c[i] += b[i];
        c[i] %= p;
    }
    trim(c);
    return c;
}

Poly sub(const Poly& a, const Poly& b, const mpz_class& p) {
    Poly c(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.size())
            c[i] += a[i];
        if (i < b.size())
            c[i] -= b[i];
        c[i] = ((c[i] % p) + p) % p;
    }
    trim(c);
    return c;
}

Poly mul(const Poly& a, const Poly& b, const mpz_class& p) {
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    for (auto& v : c)
        v %= p;
    trim(c);
    return c;
}

Poly rem(const Poly& a_in, const Poly& b, const mpz_class& p) {
    if (b.empty())
        throw error("fp::rem by zero");
    Poly a = a_in;
    mpz_class binv = inv_mod(b.back(), p);
    while (degree(a) >= degree(b)) {
        mpz_class t = a.back() * binv % p;
        int k = degree(a) - degree(b);
        for (size_t i = 0; i < b.size(); ++i) {
            a[i + k] = ((a[i + k] - t * b[i]) % p + p) % p;
        }
        trim(a);
        if (a.empty())
            break;
        if (degree(a) >= degree(b) && a.back() == 0)
            trim(a);
    }
    return a;
}

Poly make_monic(const Poly& a, const mpz_class& p) {
    if (a.empty())
        return a;
    Poly c = a;
    mpz_class inv = inv_mod(c.back(), p);
    for (auto& v : c)
        v = v * inv % p;
    return c;
}

Poly gcd(Poly a, Poly b, const mpz_class& p) {
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : make_monic(a, p);
}

Poly derivative(const Poly& a, const mpz_class& p) {
    if (a.size() <= 1)
        return {};
    Poly c(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i)
        c[i - 1] = a[i] * static_cast<long>(i) % p;
    trim(c);
    return c;
}

bool is_squarefree(const Poly& a, const mpz_class& p) {
    Poly d = derivative(a, p);
    if (d.empty())
        return degree(a) <= 0;
    Poly g = gcd(a, d, p);
    return degree(g) == 0;
}

namespace {

Poly powmod(Poly base, mpz_class e, const Poly& mod, const mpz_class& p) {
    Poly r{mpz_class(1)};
    base = rem(base, mod, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = rem(mul(r, base, p), mod, p);
        base = rem(mul(base, base, p), mod, p);
        e /= 2;
    }
    return r;
}

// x^(p^k) mod f, iterated Frobenius
Poly xq_power(const Poly& f, const mpz_class& p, int k, Poly start = {}) {
    Poly x{mpz_class(0), mpz_class(1)};
    Poly r = start.empty() ? rem(x, f, p) : start;
    for (int i = 0; i < k; ++i)
        r = powmod(r, p, f, p);
    return r;
}

struct DDFPart {
    Poly poly; // product of irreducibles of degree d
    int d;
};

std::vector<DDFPart> ddf(Poly f, const mpz_class& p) {
    std::vector<DDFPart> parts;
    Poly x{mpz_class(0), mpz_class(1)};
    Poly h = rem(x, f, p);
    int d = 0;
    while (degree(f) >= 1 && 2 * (d + 1) <= degree(f)) {
        ++d;
        h = powmod(h, p, f, p); // h = x^(p^d) mod f
        Poly hx = sub(h, x, p);
        Poly g = gcd(f, hx, p);
        if (degree(g) >= 1) {
            parts.push_back({g, d});
            // divide f by g
            Poly q;
            {
                // exact division mod p: f = q*g
                Poly a = f;
                Poly res(degree(f) - degree(g) + 1, mpz_class(0));
                mpz_class ginv = inv_mod(g.back(), p);
                while (degree(a) >= degree(g)) {
                    mpz_class t = a.back() * ginv % p;
                    int k = degree(a) - degree(g);
                    res[k] = t;
                    for (size_t i = 0; i < g.size(); ++i)
                        a[i + k] = ((a[i + k] - t * g[i]) % p + p) % p;
                    trim(a);
                }
                if (!a.empty())
                    throw error("ddf internal: non-exact division");
                q = res;
                trim(q);
            }
            f = q;
            h = rem(h, f, p);
        }
    }
    if (degree(f) >= 1)
        parts.push_back({make_monic(f, p), degree(f)});
    return parts;
}

// Cantor-Zassenhaus equal-degree splitting, deterministic seeded rng
void edf(const Poly& f, int d, const mpz_class& p, std::mt19937_64& rng,
         std::vector<Poly>& out) {
    int n = degree(f);
    if (n == d) {
        out.push_back(make_monic(f, p));
        return;
    }
    Poly g;
    for (;;) {
        // random poly of degree < n
        Poly a(n);
        for (int i = 0; i < n; ++i) {
            mpz_class r = static_cast<unsigned long>(rng());
            a[i] = r % p;
        }
        trim(a);
        if (a.empty())
            continue;
        if (p == 2) {
            // trace map T(a) = a + a^2 + ... + a^(2^(d-1))
            Poly t = rem(a, f, p);
            Poly acc = t;
            for (int i = 1; i < d; ++i) {
                t = rem(mul(t, t, p), f, p);
                acc = add(acc, t, p);
            }
            g = gcd(f, acc, p);
        } else {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), d);
            e = (e - 1) / 2;
            Poly b = powmod(a, e, f, p);
            b = sub(b, Poly{mpz_class(1)}, p);
            g = gcd(f, b, p);
        }
        if (degree(g) >= 1 && degree(g) < n)
            break;
    }
    // split
    Poly q;
    {
        Poly a = f;
        Poly res(degree(f) - degree(g) + 1, mpz_class(0));
        mpz_class ginv = inv_mod(g.back(), p);
        while (degree(a) >= degree(g)) {
            mpz_class t = a.back() * ginv % p;
            int k = degree(a) - degree(g);
            res[k] = t;
            for (size_t i = 0; i < g.size(); ++i)
                a[i + k] = ((a[i + k] - t * g[i]) % p + p) % p;
            trim(a);
        }
        q = res;
        trim(q);
    }
    edf(g, d, p, rng, out);
    edf(q, d, p, rng, out);
}

} // namespace

namespace {

// quotient of a by b when b | a exactly in F_p[x]
Poly divexact(const Poly& a_in, const Poly& b, const mpz_class& p) {
    Poly a = a_in;
    Poly res(degree(a) - degree(b) + 1, mpz_class(0));
    mpz_class binv = inv_mod(b.back(), p);
    while (degree(a) >= degree(b)) {
        mpz_class t = a.back() * binv % p;
        int k = degree(a) - degree(b);
        res[k] = t;
        for (size_t i = 0; i < b.size(); ++i)
            a[i + k] = ((a[i + k] - t * b[i]) % p + p) % p;
        trim(a);
    }
    if (!a.empty())
        throw error("fp::divexact: division not exact");
    trim(res);
    return res;
}

void factor_rec_fp(const Poly& f, const mpz_class& p, std::mt19937_64& rng,
                   std::vector<std::pair<Poly, int>>& out) {
    if (degree(f) < 1)
        return;
    Poly d = derivative(f, p);
    if (d.empty()) {
        // f = g(x^p) = g(x)^p over F_p
        unsigned long pu = mpz_get_ui(p.get_mpz_t());
        Poly g(degree(f) / pu + 1, mpz_class(0));
        for (int i = 0; i <= degree(f); ++i) {
            if (f[i] != 0) {
                if (i % pu != 0)
                    throw error("fp::factor: inconsistent derivative");
                g[i / pu] = f[i];
            }
        }
        trim(g);
        std::vector<std::pair<Poly, int>> sub;
        factor_rec_fp(g, p, rng, sub);
        for (auto& [q, e] : sub)
            out.emplace_back(q, e * static_cast<int>(pu));
        return;
    }
    Poly rep = gcd(f, d, p);
    Poly sf = (degree(rep) == 0) ? f : divexact(f, rep, p);
    // sf squarefree and contains every irreducible factor of f whose
    // multiplicity is prime to p
    Poly remainder = f;
    for (auto& part : ddf(sf, p)) {
        std::vector<Poly> irr;
        if (degree(part.poly) == part.d)
            irr.push_back(make_monic(part.poly, p));
        else
            edf(part.poly, part.d, p, rng, irr);
        for (auto& q : irr) {
            int e = 0;
            for (;;) {
                Poly r = rem(remainder, q, p);
                if (!r.empty())
                    break;
                remainder = divexact(remainder, q, p);
                ++e;
            }
            out.emplace_back(q, e);
        }
    }
    // what is left has all multiplicities divisible by p
    factor_rec_fp(make_monic(remainder, p), p, rng, out);
}

} // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f_in, const mpz_class& p) {
    std::vector<std::pair<Poly, int>> out;
    Poly f = make_monic(f_in, p);
    if (degree(f) < 1)
        return out;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    seed ^= mpz_fdiv_ui(p.get_mpz_t(), 0x7fffffff);
    for (int i = 0; i <= degree(f); ++i)
        seed = seed * 1099511628211ULL + mpz_fdiv_ui(f[i].get_mpz_t(), 1000000007);
    std::mt19937_64 rng(seed);
    factor_rec_fp(f, p, rng, out);
    // merge duplicates, canonical order: degree, then coefficient lex
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (degree(a.first) != degree(b.first))
            return degree(a.first) < degree(b.first);
        for (int i = degree(a.first); i >= 0; --i)
            if (a.first[i] != b.first[i])
                return a.first[i] < b.first[i];
        return false;
    });
    std::vector<std::pair<Poly, int>> merged;
    for (auto& [q, e] : out) {
        if (!merged.empty() && merged.back().first == q)
            merged.back().second += e;
        else
            merged.emplace_back(q, e);
    }
    return merged;
}

} // namespace fp

std::vector<std::pair<IntPoly, int>> factor_mod_p(const IntPoly& f,
                                                  const mpz_class& p) {
    auto fac = fp::factor(fp::reduce(f, p), p);
    std::vector<std::pair<IntPoly, int>> out;
    out.reserve(fac.size());
    for (auto& [q, e] : fac)
        out.emplace_back(fp::lift_symmetric(q, p), e);
    return out;
}

// ---------------- factorization over Z ----------------

namespace {

using fp::Poly;

// two-factor quadratic Hensel step (von zur Gathen & Gerhard 15.10):
// given f = g*h (mod m), s*g + t*h = 1 (mod m), h monic,
// produce the same data mod m^2
struct HenselPair {
    Poly g, h, s, t;
};

Poly zmod(const Poly& a, const mpz_class& m) {
    Poly c = a;
    for (auto& v : c) {
        v %= m;
        if (v < 0)
            v += m;
    }
    while (!c.empty() && c.back() == 0)
        c.pop_back();
    return c;
}

Poly zmul(const Poly& a, const Poly& b, const mpz_class& m) {
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return zmod(c, m);
}

Poly zadd(const Poly& a, const Poly& b, const mpz_class& m) {
    Poly c(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.size())
            c[i] += a[i];
        if (i < b.size())
            c[i] += b[i];
    }
    return zmod(c, m);
}

Poly zsub(const Poly& a, const Poly& b, const mpz_class& m) {
    Poly c(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.size())
            c[i] += a[i];
        if (i < b.size())
            c[i] -= b[i];
    }
    return zmod(c, m);
}

// division by monic b over Z/m
void zdivrem_monic(const Poly& a_in, const Poly& b, const mpz_class& m,
                   Poly& q, Poly& r) {
    Poly a = zmod(a_in, m);
    if (b.empty() || b.back() != 1)
        throw error("zdivrem_monic: divisor not monic");
    int db = fp::degree(b);
    q.clear();
    if (fp::degree(a) >= db)
        q.assign(fp::degree(a) - db + 1, mpz_class(0));
    while (fp::degree(a) >= db) {
        mpz_class t = a.back();
        int k = fp::degree(a) - db;
        q[k] = t;
        for (int i = 0; i <= db; ++i) {
            a[i + k] -= t * b[i];
        }
        a = zmod(a, m);
    }
    r = a;
}

HenselPair hensel_step(const Poly& f, const HenselPair& in, const mpz_class& m) {
    const mpz_class m2 = m * m;
    Poly e = zsub(zmod(f, m2), zmul(in.g, in.h, m2), m2);
    Poly q, r;
    zdivrem_monic(zmul(in.s, e, m2), in.h, m2, q, r);
    Poly g2 = zadd(zadd(in.g, zmul(in.t, e, m2), m2), zmul(q, in.g, m2), m2);
    Poly h2 = zadd(in.h, r, m2);
    Poly b = zsub(zadd(zmul(in.s, g2, m2), zmul(in.t, h2, m2), m2),
                  Poly{mpz_class(1)}, m2);
    Poly c, d;
    zdivrem_monic(zmul(in.s, b, m2), h2, m2, c, d);
    Poly s2 = zsub(in.s, d, m2);
    Poly t2 = zsub(zsub(in.t, zmul(in.t, b, m2), m2), zmul(c, g2, m2), m2);
    return {g2, h2, s2, t2};
}

// multifactor Hensel lifting via a factor tree (vzG 15.17)
// f = lc(f) * prod(mods[i]) (mod p), all mods monic mod p.
// returns the factors lifted mod p^(2^ceil(log2(k_steps))) >= target.
struct HenselTree {
    std::vector<Poly> leaves;
};

void hensel_tree(const Poly& f, const std::vector<Poly>& mods, const mpz_class& p,
                 const mpz_class& target, std::vector<Poly>& out) {
    if (mods.size() == 1) {
        // only factor: the monic one; f = lc * g: lift g = monic(f) mod target
        // (happens only at recursion leaves)
        out.push_back(mods[0]);
        return;
    }
    size_t half = mods.size() / 2;
    Poly g{mpz_class(1)}, h{mpz_class(1)};
    for (size_t i = 0; i < half; ++i)
        g = zmul(g, mods[i], p);
    for (size_t i = half; i < mods.size(); ++i)
        h = zmul(h, mods[i], p);
    // fold lc(f) into g
    mpz_class lc = f.empty() ? mpz_class(0) : f.back();
    Poly gl = g;
    for (auto& v : gl)
        v = v * lc % p;
    // Bezout s*gl + t*h = 1 mod p via extended Euclid in F_p[x]
    // compute with fp:: arithmetic
    {
        // extended gcd
        Poly r0 = zmod(gl, p), r1 = zmod(h, p);
        Poly s0{mpz_class(1)}, s1{};
        Poly t0{}, t1{mpz_class(1)};
        while (!r1.empty()) {
            // q, r = divrem(r0, r1) over F_p
            Poly q;
            Poly a = r0;
            mpz_class inv;
            if (!mpz_invert(inv.get_mpz_t(), r1.back().get_mpz_t(), p.get_mpz_t()))
                throw error("hensel: lc not invertible");
            if (fp::degree(a) >= fp::degree(r1))
                q.assign(fp::degree(a) - fp::degree(r1) + 1, mpz_class(0));
            while (fp::degree(a) >= fp::degree(r1)) {
                mpz_class t = a.back() * inv % p;
                int k = fp::degree(a) - fp::degree(r1);
                q[k] = t;
                for (size_t i = 0; i < r1.size(); ++i)
                    a[i + k] = ((a[i + k] - t * r1[i]) % p + p) % p;
                while (!a.empty() && a.back() == 0)
                    a.pop_back();
            }
            Poly r2 = a;
            Poly s2 = zsub(s0, zmul(q, s1, p), p);
            Poly t2 = zsub(t0, zmul(q, t1, p), p);
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
            t0 = t1; t1 = t2;
        }
        if (fp::degree(r0) != 0)
            throw error("hensel: factors not coprime mod p");
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), r0[0].get_mpz_t(), p.get_mpz_t());
        for (auto& v : s0)
            v = v * inv % p;
        for (auto& v : t0)
            v = v * inv % p;
        HenselPair hp{zmod(gl, p), zmod(h, p), s0, t0};
        mpz_class m = p;
        while (m < target) {
            hp = hensel_step(f, hp, m);
            m = m * m;
        }
        // recurse into both halves with the lifted g (lc still folded) and h
        std::vector<Poly> left(mods.begin(), mods.begin() + half);
        std::vector<Poly> right(mods.begin() + half, mods.end());
        if (left.size() == 1) {
            out.push_back(hp.g); // carries lc; caller handles
        } else {
            hensel_tree(hp.g, left, p, target, out);
        }
        if (right.size() == 1) {
            out.push_back(hp.h);
        } else {
            hensel_tree(hp.h, right, p, target, out);
        }
    }
}

mpz_class mignotte_bound(const IntPoly& f) {
    // |coeff of any factor (lc folded)| <= 2^n * sqrt(n+1) * |f|_inf * |lc|
    int n = f.degree();
    mpz_class b = f.inf_norm() * abs(f.lc());
    mpz_class sq;
    mpz_class np1 = n + 1;
    mpz_sqrt(sq.get_mpz_t(), np1.get_mpz_t());
    b *= (sq + 1);
    mpz_class two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, n);
    return b * two_n;
}

std::vector<IntPoly> factor_squarefree_primitive(IntPoly f) {
    std::vector<IntPoly> out;
    if (f.degree() <= 0)
        return out;
    if (f.degree() == 1) {
        out.push_back(f);
        return out;
    }
    // choose a prime: f mod p squarefree, p nmid lc; minimize factor count
    mpz_class best_p = 0;
    std::vector<std::pair<fp::Poly, int>> best_fac;
    int tried = 0;
    for (mpz_class p = 3; tried < 6; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
        if (f.lc() % p == 0)
            continue;
        fp::Poly fm = fp::reduce(f, p);
        if (!fp::is_squarefree(fm, p))
            continue;
        ++tried;
        auto fac = fp::factor(fm, p);
        if (best_p == 0 || fac.size() < best_fac.size()) {
            best_p = p;
            best_fac = fac;
        }
        if (best_fac.size() == 1)
            break;
    }
    if (best_p == 0)
        throw error("no usable prime for factorization");
    if (best_fac.size() == 1) {
        out.push_back(f);
        return out;
    }
    const mpz_class p = best_p;
    mpz_class bound = 2 * mignotte_bound(f) + 1;
    // lift factorization to p^k >= bound
    std::vector<Poly> mods;
    mods.reserve(best_fac.size());
    for (auto& [q, e] : best_fac)
        mods.push_back(q); // e == 1, squarefree
    mpz_class target = p;
    while (target < bound)
        target *= target;
    std::vector<Poly> lifted;
    if (mods.size() == 1) {
        lifted = mods;
    } else {
        hensel_tree(fp::reduce(f, target), mods, p, target, lifted);
    }
    // make all lifted factors monic mod target (strip folded lc)
    for (auto& g : lifted) {
        if (g.empty())
            throw error("hensel: empty factor");
        if (g.back() != 1) {
            mpz_class inv;
            if (!mpz_invert(inv.get_mpz_t(), g.back().get_mpz_t(), target.get_mpz_t()))
                throw error("hensel: factor lc not invertible");
            for (auto& v : g)
                v = v * inv % target;
        }
    }
    // Zassenhaus recombination
    std::vector<int> live(lifted.size());
    for (size_t i = 0; i < live.size(); ++i)
        live[i] = static_cast<int>(i);
    IntPoly rest = f;
    size_t s = 1;
    while (2 * s <= live.size()) {
        // iterate over s-subsets of live
        std::vector<size_t> idx(s);
        for (size_t i = 0; i < s; ++i)
            idx[i] = i;
        bool advanced = true;
        while (advanced) {
            // try current subset
            Poly prod{mpz_class(rest.lc() % target)};
            if (prod[0] < 0)
                prod[0] += target;
            for (size_t i = 0; i < s; ++i)
                prod = zmul(prod, lifted[live[idx[i]]], target);
            IntPoly cand = fp::lift_symmetric(prod, target).primitive_part();
            auto quot = cand.degree() >= 1 ? rest.exact_div(cand) : std::nullopt;
            if (quot) {
                out.push_back(cand);
                rest = *quot;
                // remove used modular factors
                std::vector<int> nl;
                for (size_t i = 0, j = 0; i < live.size(); ++i) {
                    if (j < s && idx[j] == i)
                        ++j;
                    else
                        nl.push_back(live[i]);
                }
                live = nl;
                if (2 * s > live.size())
                    break;
                for (size_t i = 0; i < s; ++i)
                    idx[i] = i;
                continue;
            }
            // next combination
            advanced = false;
            for (int i = static_cast<int>(s) - 1; i >= 0; --i) {
                if (idx[i] + (s - i) < live.size()) {
                    ++idx[i];
                    for (size_t j = i + 1; j < s; ++j)
                        idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
        }
        ++s;
    }
    if (rest.degree() >= 1)
        out.push_back(rest.primitive_part());
    return out;
}

} // namespace

std::vector<std::pair<IntPoly, int>> factor_over_z(const IntPoly& f_in) {
    if (f_in.is_zero())
        throw error("factor_over_z(0)");
    std::vector<std::pair<IntPoly, int>> out;
    IntPoly f = f_in.primitive_part();
    if (f.degree() < 1)
        return out;
    // Yun's squarefree decomposition
    IntPoly fp_ = f.derivative();
    IntPoly a = IntPoly::gcd(f, fp_);
    IntPoly b = *f.exact_div(a);
    IntPoly c = *fp_.exact_div(a);
    IntPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() >= 1) {
        IntPoly g = IntPoly::gcd(b, d);
        if (g.degree() >= 1) {
            for (auto& q : factor_squarefree_primitive(g))
                out.emplace_back(q.primitive_part(), i);
        }
        b = *b.exact_div(g);
        c = *d.exact_div(g);
        d = c - b.derivative();
        ++i;
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree())
            return x.first.degree() < y.first.degree();
        for (int k = x.first.degree(); k >= 0; --k)
            if (x.first.coeff(k) != y.first.coeff(k))
                return x.first.coeff(k) < y.first.coeff(k);
        return x.second < y.second;
    });
    return out;
}

bool is_irreducible_over_z(const IntPoly& f) {
    if (f.degree() < 1)
        return false;
    auto fac = factor_over_z(f);
    return fac.size() == 1 && fac[0].second == 1 &&
           fac[0].first.degree() == f.degree();
}

} // namespace levelbound
