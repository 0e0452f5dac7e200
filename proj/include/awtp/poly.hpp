#pragma once

#include <cstddef>
#include <vector>

#include "field.hpp"

namespace awtp::poly {

/// Dense polynomial over F_q; index i holds the coefficient of X^i.
/// The zero polynomial is the empty vector (after trim).
using Poly = std::vector<fe>;

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool is_zero(const Poly& p) {
    for (const fe c : p)
        if (c != 0) return false;
    return true;
}

// degree of the zero polynomial is -1
inline long long degree(const Poly& p) {
    for (std::size_t i = p.size(); i > 0; --i)
        if (p[i - 1] != 0) return static_cast<long long>(i - 1);
    return -1;
}

inline Poly add(const PrimeField& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const fe x = i < a.size() ? a[i] : 0;
        const fe y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    trim(r);
    return r;
}

inline Poly sub(const PrimeField& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const fe x = i < a.size() ? a[i] : 0;
        const fe y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    trim(r);
    return r;
}

inline Poly scale(const PrimeField& F, const Poly& a, fe c) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    trim(r);
    return r;
}

inline Poly mul(const PrimeField& F, const Poly& a, const Poly& b) {
    if (is_zero(a) || is_zero(b)) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

/// Remainder of a modulo monic divisor m (in place on a copy).
inline Poly mod(const PrimeField& F, Poly a, const Poly& m) {
    const long long dm = degree(m);
    if (dm < 0) throw ParamError("poly mod by zero");
    trim(a);
    while (degree(a) >= dm) {
        const std::size_t shift = static_cast<std::size_t>(degree(a) - dm);
        const fe lead = a.back();  // m monic
        for (std::size_t i = 0; i <= static_cast<std::size_t>(dm); ++i)
            a[shift + i] = F.sub(a[shift + i], F.mul(lead, m[i]));
        trim(a);
    }
    return a;
}

inline Poly mulmod(const PrimeField& F, const Poly& a, const Poly& b, const Poly& m) {
    return mod(F, mul(F, a, b), m);
}

inline fe eval(const PrimeField& F, const Poly& p, fe x) {
    fe acc = 0;
    for (std::size_t i = p.size(); i > 0; --i) acc = F.add(F.mul(acc, x), p[i - 1]);
    return acc;
}

/// p(cX): coefficient i gets multiplied by c^i.
inline Poly scale_arg(const PrimeField& F, const Poly& p, fe c) {
    Poly r(p.size());
    fe ci = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i] = F.mul(p[i], ci);
        ci = F.mul(ci, c);
    }
    trim(r);
    return r;
}

inline Poly gcd(const PrimeField& F, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(F, a, scale(F, b, F.inv(b.back())));
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) a = scale(F, a, F.inv(a.back()));
    return a;
}

/// g(h) mod m by Horner.
inline Poly compose_mod(const PrimeField& F, const Poly& g, const Poly& h, const Poly& m) {
    Poly acc;
    for (std::size_t i = g.size(); i > 0; --i) {
        acc = mulmod(F, acc, h, m);
        if (g[i - 1] != 0) {
            if (acc.empty()) acc.resize(1, 0);
            acc[0] = F.add(acc[0], g[i - 1]);
        }
        trim(acc);
    }
    return acc;
}

inline Poly x_pow_mod(const PrimeField& F, std::uint64_t e, const Poly& m) {
    Poly base{0, 1};
    Poly acc{1};
    base = mod(F, base, m);
    while (e > 0) {
        if (e & 1) acc = mulmod(F, acc, base, m);
        base = mulmod(F, base, base, m);
        e >>= 1;
    }
    return acc;
}

/// Rabin's criterion: monic f of degree m is irreducible over F_q iff
/// X^(q^m) = X (mod f) and gcd(X^(q^(m/p)) - X, f) = 1 for every prime p | m.
inline bool is_irreducible(const PrimeField& F, const Poly& f) {
    const long long m = degree(f);
    if (m < 1) return false;
    if (f.back() != 1) throw ParamError("irreducibility test requires a monic polynomial");
    if (m == 1) return true;

    const Poly xq = x_pow_mod(F, F.q(), f);  // X^q mod f
    // frob[j] = X^(q^j) mod f, built by composing with X^q
    Poly frob = xq;
    std::vector<Poly> frob_at(static_cast<std::size_t>(m) + 1);
    frob_at[1] = xq;
    for (long long j = 2; j <= m; ++j) {
        frob = compose_mod(F, frob, xq, f);
        frob_at[static_cast<std::size_t>(j)] = frob;
    }
    const Poly x{0, 1};
    if (sub(F, frob_at[static_cast<std::size_t>(m)], x) != Poly{}) return false;
    for (const auto p : prime_factors(static_cast<std::uint64_t>(m))) {
        const Poly h = sub(F, frob_at[static_cast<std::size_t>(m / static_cast<long long>(p))], x);
        const Poly g = gcd(F, f, h);
        if (degree(g) != 0) return false;
    }
    return true;
}

/// Lexicographically smallest monic irreducible polynomial of degree m:
/// candidates X^m + a_{m-1}X^{m-1} + ... + a_0 are scanned in increasing
/// order of the number whose base-q digits are (a_{m-1}, ..., a_0). The
/// choice is deterministic so that derived encodings are reproducible.
inline Poly find_irreducible(const PrimeField& F, std::size_t m) {
    if (m == 0) throw ParamError("extension degree must be >= 1");
    const fe q = F.q();
    Poly f(m + 1, 0);
    f[m] = 1;
    while (true) {
        if (is_irreducible(F, f)) return f;
        // increment the (a_{m-1}, ..., a_0) counter
        std::size_t i = 0;
        while (i < m) {
            if (++f[i] < q) break;
            f[i] = 0;
            ++i;
        }
        if (i == m) throw InternalError("exhausted monic polynomials without finding an irreducible");
    }
}

}  // namespace awtp::poly
