#pragma once

#include <array>
#include <string>

#include "orbsp/error.hpp"

namespace orbsp {

using Elem = std::array<long long, 4>;   // c0 + c1 v + c2 v^2 + c3 v^3

// GF(p) inside GF(p^4) = GF(p)[v]/(v^4 - z), with F = GF(p), L = F(u), u = v^2, E = F(v).
// rho is the Frobenius x -> x^p; it sends v to zeta*v with zeta = z^q, q = (p-1)/4.
class FieldTower {
public:
    long long p = 0, z = 0, q = 0, zeta = 0;

    long long md(long long a) const { return ((a % p) + p) % p; }
    long long mul(long long a, long long b) const { return md(a) * md(b) % p; }
    long long pw(long long a, long long e) const {
        if (e < 0) return pw(inv(a), -e);
        long long r = 1;
        a = md(a);
        for (; e; e >>= 1, a = a * a % p)
            if (e & 1) r = r * a % p;
        return r;
    }
    long long inv(long long a) const {
        if (md(a) == 0) throw Error(Errc::Malformed, "inverse of zero");
        return pw(a, p - 2);
    }
    long long zeta_pow(long long e) const { return pw(zeta, ((e % 4) + 4) % 4); }

    // Scalar of v^e written as z^floor(e/4) v^(e mod 4).
    long long z_part(long long e) const { return pw(z, e >= 0 ? e / 4 : -((-e + 3) / 4)); }

    Elem one() const { return {1, 0, 0, 0}; }
    Elem v_pow(long long e) const {
        Elem x{0, 0, 0, 0};
        x[((e % 4) + 4) % 4] = z_part(e);
        return x;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r;
        for (int i = 0; i < 4; ++i) r[i] = md(a[i] + b[i]);
        return r;
    }
    Elem scale(long long s, const Elem& a) const {
        Elem r;
        for (int i = 0; i < 4; ++i) r[i] = mul(s, a[i]);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        Elem r{0, 0, 0, 0};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                long long c = mul(a[i], b[j]);
                if (i + j >= 4) c = mul(c, z);
                r[(i + j) % 4] = md(r[(i + j) % 4] + c);
            }
        return r;
    }
    Elem pw(Elem a, long long e) const {
        Elem r = one();
        for (; e; e >>= 1, a = mul(a, a))
            if (e & 1) r = mul(r, a);
        return r;
    }
    bool is_zero(const Elem& a) const { return a == Elem{0, 0, 0, 0}; }
    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw Error(Errc::Malformed, "inverse of zero");
        const long long order = p * p * p * p - 1;
        return pw(a, order - 1);
    }
    // rho^j
    Elem rho(const Elem& a, int j) const {
        Elem r;
        for (int i = 0; i < 4; ++i) r[i] = mul(a[i], zeta_pow(static_cast<long long>(i) * j));
        return r;
    }
    // Membership in the subfield of degree d over F, as the fixed field of rho^d.
    bool in_subfield(const Elem& a, int d) const { return rho(a, d) == a; }
};

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Checks that x^4 - z has no root and no factorization into two monic quadratics.
inline bool quartic_irreducible(long long p, long long z) {
    auto md = [p](long long a) { return ((a % p) + p) % p; };
    for (long long x = 0; x < p; ++x)
        if (md(x * x % p * x % p * x - z) == 0) return false;
    // (x^2 + a x + b)(x^2 - a x + c) = x^4 + (c + b - a^2) x^2 + a(c - b) x + bc
    for (long long a = 0; a < p; ++a)
        for (long long b = 0; b < p; ++b)
            for (long long c = 0; c < p; ++c)
                if (md(c + b - a * a) == 0 && md(a * (c - b)) == 0 && md(b * c + z) == 0) return false;
    return true;
}

// z = 0 picks the smallest quadratic non-residue.
inline FieldTower build_tower(long long p, long long z = 0) {
    if (!is_prime(p) || p % 4 != 1)
        throw Error(Errc::BadPrime, std::to_string(p) + " is not a prime congruent to 1 mod 4");
    FieldTower T;
    T.p = p;
    T.q = (p - 1) / 4;
    if (z != 0) {
        if (T.md(z) == 0 || T.pw(z, (p - 1) / 2) != p - 1)
            throw Error(Errc::BadPrime, std::to_string(z) + " is not a quadratic non-residue mod " + std::to_string(p));
        T.z = T.md(z);
    }
    for (long long c = 2; c < p && T.z == 0; ++c)
        if (T.pw(c, (p - 1) / 2) == p - 1) T.z = c;
    T.zeta = T.pw(T.z, T.q);
    if (T.mul(T.zeta, T.zeta) != p - 1) throw Error(Errc::BadPrime, "z^q is not a primitive 4th root of unity");
    if (!quartic_irreducible(p, T.z)) throw Error(Errc::BadPrime, "x^4 - z is reducible");
    const Elem v = T.v_pow(1);
    if (T.pw(v, p) != T.rho(v, 1)) throw Error(Errc::BadPrime, "Frobenius does not act as v -> zeta v");
    return T;
}

} // namespace orbsp
