#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "kkcalc/errors.hpp"

namespace kkcalc {

/// Arbitrary-precision integer. All group arithmetic is exact; intermediate
/// coefficient growth (the classic normal-form failure mode) is a non-issue.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline int sign_int(const Int& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

inline Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(abs_int(a), abs_int(b));
}

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

/// a mod m reduced into [0, m); requires m > 0.
inline Int floor_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Nearest-integer quotient: |a - q*b| <= |b|/2. Requires b != 0.
inline Int round_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (2 * abs_int(r) > abs_int(b)) q += (sign_int(r) == sign_int(b)) ? 1 : -1;
    return q;
}

namespace detail {

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned r) {
    Int x = boost::multiprecision::powm(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;  // composite witness found
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned r = 0;
    while (d % 2 == 0) { d /= 2; ++r; }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (miller_rabin_witness(n, Int(a), d, r)) return false;
    return true;
}

/// Pollard's rho (Brent variant); n must be composite, odd, > 1.
inline Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd_int(x - y, n);
        }
        if (d != n) return d;
    }
}

inline void factor_into(Int n, std::map<Int, unsigned>& out) {
    if (n <= 1) return;
    for (int p : {2, 3, 5}) {
        while (n % p == 0) { ++out[p]; n /= p; }
    }
    // wheel over 6k +- 1 for small factors
    for (Int p = 7; p * p <= n && p < 100000; p += 6) {
        while (n % p == 0) { ++out[p]; n /= p; }
        Int q = p + 4;
        while (n % q == 0) { ++out[q]; n /= q; }
    }
    if (n == 1) return;
    if (is_prime(n)) { ++out[n]; return; }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of n >= 1 as prime -> exponent.
inline std::map<Int, unsigned> factorize(const Int& n) {
    if (n < 1) throw ValidationError("factorize: argument must be positive");
    std::map<Int, unsigned> out;
    detail::factor_into(n, out);
    return out;
}

/// All positive divisors of n >= 1, ascending.
inline std::vector<Int> divisors(const Int& n) {
    std::vector<Int> divs{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = divs.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace kkcalc
