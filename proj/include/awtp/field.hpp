#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace awtp {

/// Element of F_q, stored as its canonical representative in [0, q).
using fe = std::uint64_t;

using Vec = std::vector<fe>;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the witness set below is exact for all 64-bit n.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
    if ((n & 1) == 0) return 2;
    std::uint64_t seed = 0xdeadbeefULL ^ n;
    while (true) {
        const std::uint64_t c = splitmix64(seed) % (n - 1) + 1;
        std::uint64_t x = splitmix64(seed) % n, y = x, d = 1;
        auto step = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            const std::uint64_t diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

}  // namespace detail

/// Distinct prime factors, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    // small trial division first, Pollard rho for what remains
    for (std::uint64_t p = 17; p * p <= n && p < 100000; p += 2) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    std::vector<std::uint64_t> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        const std::uint64_t m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime(m)) {
            out.push_back(m);
            continue;
        }
        const std::uint64_t d = detail::pollard_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// The prime field F_q. Primality is checked at construction and the smallest
/// generator of F_q^* is computed eagerly, so instances are immutable and can
/// be shared freely across threads.
class PrimeField {
   public:
    explicit PrimeField(fe q) : q_(q) {
        if (!is_prime(q)) throw ParamError("field modulus " + std::to_string(q) + " is not prime");
        gen_ = find_generator();
    }

    fe q() const { return q_; }

    fe add(fe a, fe b) const {
        const fe s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    fe sub(fe a, fe b) const { return a >= b ? a - b : a + q_ - b; }
    fe neg(fe a) const { return a == 0 ? 0 : q_ - a; }
    fe mul(fe a, fe b) const { return detail::mulmod_u64(a, b, q_); }
    fe pow(fe a, std::uint64_t e) const { return detail::powmod_u64(a, e, q_); }

    fe inv(fe a) const {
        if (a == 0) throw ZeroInverse("inverse of zero in F_" + std::to_string(q_));
        return pow(a, q_ - 2);
    }

    /// Smallest g whose multiplicative order is q-1.
    fe generator() const { return gen_; }

    fe uniform(Rng& rng) const { return rng.below(q_); }

    bool operator==(const PrimeField& o) const { return q_ == o.q_; }
    bool operator!=(const PrimeField& o) const { return q_ != o.q_; }

   private:
    fe find_generator() const {
        if (q_ == 2) return 1;
        const auto factors = prime_factors(q_ - 1);
        for (fe g = 2; g < q_; ++g) {
            bool primitive = true;
            for (const auto p : factors) {
                if (pow(g, (q_ - 1) / p) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) return g;
        }
        throw InternalError("no generator found for F_" + std::to_string(q_));
    }

    fe q_;
    fe gen_;
};

/// Modular inverse for an arbitrary (not necessarily prime) modulus, used for
/// inverting encoding degrees mod q-1. Requires gcd(a, m) = 1.
inline std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, t1 = 1;
    std::int64_t r = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a % m);
    while (r1 != 0) {
        const std::int64_t qt = r / r1;
        std::int64_t tmp = t - qt * t1;
        t = t1;
        t1 = tmp;
        tmp = r - qt * r1;
        r = r1;
        r1 = tmp;
    }
    if (r != 1) throw ParamError("invmod: arguments not coprime");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

}  // namespace awtp
