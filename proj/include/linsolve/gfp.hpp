#pragma once

#include <cstdint>

#include "linsolve/errors.hpp"

// Scalar arithmetic in the prime field GF(p).  Values are always kept in
// [0, p); p must fit in a machine word.

namespace linsolve::gfp {

using Scalar = std::uint64_t;
using Wide = unsigned __int128;

inline Scalar add(Scalar a, Scalar b, Scalar p) {
    Scalar s = a + b;
    return s >= p ? s - p : s;
}

inline Scalar sub(Scalar a, Scalar b, Scalar p) {
    return a >= b ? a - b : a + p - b;
}

inline Scalar neg(Scalar a, Scalar p) {
    return a == 0 ? 0 : p - a;
}

inline Scalar mul(Scalar a, Scalar b, Scalar p) {
    return static_cast<Scalar>(static_cast<Wide>(a) * b % p);
}

inline Scalar pow(Scalar a, std::uint64_t e, Scalar p) {
    Scalar r = 1 % p;
    Scalar base = a % p;
    while (e) {
        if (e & 1) r = mul(r, base, p);
        base = mul(base, base, p);
        e >>= 1;
    }
    return r;
}

// Inverse by extended Euclid; p must be prime and a nonzero mod p.
inline Scalar inv(Scalar a, Scalar p) {
    a %= p;
    if (a == 0) throw division_by_zero("gfp::inv: zero has no inverse");
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw division_by_zero("gfp::inv: modulus is not prime");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<Scalar>(t);
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto powmod = [n](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        a %= n;
        while (e) {
            if (e & 1) r = static_cast<std::uint64_t>(static_cast<Wide>(r) * a % n);
            a = static_cast<std::uint64_t>(static_cast<Wide>(a) * a % n);
            e >>= 1;
        }
        return r;
    };
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = static_cast<std::uint64_t>(static_cast<Wide>(x) * x % n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace linsolve::gfp
