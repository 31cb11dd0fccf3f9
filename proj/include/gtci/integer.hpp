// Exact arithmetic base layer: arbitrary-precision integers and rationals
// (GMP-backed), gcd/lcm helpers and small number-theory utilities used by
// the lattice and enumeration code. No floating point anywhere.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtci {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd64(a, b) * b;
}

// g = gcd(a,b) together with x,y such that a*x + b*y = g.
inline std::int64_t egcd64(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return (a < 0) ? -a : a;
    }
    std::int64_t x1, y1;
    std::int64_t g = egcd64(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline std::int64_t mod64(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("divisors: need n > 0");
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

inline std::map<std::int64_t, int> factorize(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("factorize: need n > 0");
    std::map<std::int64_t, int> f;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    }
    if (n > 1) ++f[n];
    return f;
}

inline std::int64_t to_i64(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
    return static_cast<std::int64_t>(v.get_si());
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rat& v) {
    Rat c = v;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace gtci
