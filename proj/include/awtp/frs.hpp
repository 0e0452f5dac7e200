#pragma once

#include <optional>
#include <span>
#include <vector>

#include "linalg.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace awtp {

/// One codeword symbol: a u-tuple over F_q.
using FrsSymbol = std::vector<fe>;
using FrsCodeword = std::vector<FrsSymbol>;

/// u-folded Reed-Solomon code of block length N over F_q^u, q > Nu. The
/// message is a polynomial f of degree < k; symbol j is
/// (f(gamma^{ju}), ..., f(gamma^{ju+u-1})) with gamma the smallest generator
/// of F_q^*. v is the interpolation parameter of the list decoder,
/// 1 <= v <= u.
struct FrsParams {
    PrimeField F;
    std::size_t u, N, k, v;
    fe gamma;
    Vec points;  // gamma^0 .. gamma^{uN-1}

    FrsParams(PrimeField field, std::size_t u_, std::size_t N_, std::size_t k_, std::size_t v_)
        : F(std::move(field)), u(u_), N(N_), k(k_), v(v_) {
        if (u < 1 || N < 1) throw ParamError("frs: u and N must be positive");
        if (F.q() <= static_cast<fe>(N) * static_cast<fe>(u)) throw ParamError("frs: q must exceed N*u");
        if (k < 1 || k > u * N) throw ParamError("frs: k must satisfy 1 <= k <= u*N");
        if (v < 1 || v > u) throw ParamError("frs: v must satisfy 1 <= v <= u");
        gamma = F.generator();
        points.resize(u * N);
        fe p = 1;
        for (auto& x : points) {
            x = p;
            p = F.mul(p, gamma);
        }
    }
};

inline FrsCodeword frs_encode(const FrsParams& P, std::span<const fe> f) {
    if (f.size() != P.k) throw LengthMismatch("frs_encode: coefficient vector must have length k");
    FrsCodeword c(P.N, FrsSymbol(P.u));
    for (std::size_t j = 0; j < P.N; ++j)
        for (std::size_t t = 0; t < P.u; ++t) {
            const fe x = P.points[j * P.u + t];
            fe acc = 0;
            for (std::size_t i = f.size(); i > 0; --i) acc = P.F.add(P.F.mul(acc, x), f[i - 1]);
            c[j][t] = acc;
        }
    return c;
}

/// Degree budget for the interpolation polynomial: the smallest D >= 0 that
/// makes the number of unknowns (v+1)D + v + k exceed the n0 = N(u-v+1)
/// interpolation constraints, guaranteeing a nonzero solution by counting.
/// Closed form floor((n0 - k + 1)/(v+1)); negative means the message length
/// leaves no decoding slack at all.
inline std::size_t frs_choose_D(std::size_t N, std::size_t u, std::size_t v, std::size_t k) {
    const long long n0 = static_cast<long long>(N) * static_cast<long long>(u - v + 1);
    const long long num = n0 - static_cast<long long>(k) + 1;
    const long long vp1 = static_cast<long long>(v) + 1;
    const long long D = num >= 0 ? num / vp1 : -((-num + vp1 - 1) / vp1);
    if (D < 0) throw InfeasibleError("frs_choose_D: k too large for this (N, u, v)");
    // cross-check against the defining minimality
    const auto unknowns = [&](long long d) { return vp1 * d + static_cast<long long>(v + k); };
    if (!(unknowns(D) > n0) || (D > 0 && unknowns(D - 1) > n0))
        throw InternalError("frs_choose_D: closed form disagrees with minimality");
    return static_cast<std::size_t>(D);
}

inline std::size_t frs_choose_D(const FrsParams& P) { return frs_choose_D(P.N, P.u, P.v, P.k); }

/// Q(X, Y_1..Y_v) = A[0](X) + sum_i A[i](X) Y_i with deg A[0] <= D+k-1 and
/// deg A[i] <= D, vanishing on all n0 interpolation points.
struct InterpolationPoly {
    std::vector<poly::Poly> A;  // size v+1
    std::size_t D = 0;
};

/// Interpolation step: one constraint per (symbol j, window offset t) pair,
/// t in [0, u-v], at X = gamma^{ju+t} with Y-values y[j][t..t+v-1]. The
/// returned Q is the first vector of the reduced nullspace basis, which
/// exists by the counting argument behind frs_choose_D.
inline InterpolationPoly frs_interpolate(const FrsParams& P, const FrsCodeword& y, std::size_t D) {
    if (y.size() != P.N) throw LengthMismatch("frs_interpolate: received word has wrong block count");
    for (const auto& s : y)
        if (s.size() != P.u) throw LengthMismatch("frs_interpolate: received symbol has wrong width");

    const std::size_t a0_len = D + P.k;
    const std::size_t ai_len = D + 1;
    const std::size_t cols = a0_len + P.v * ai_len;
    const std::size_t rows = P.N * (P.u - P.v + 1);

    Matrix M(rows, cols);
    std::size_t r = 0;
    for (std::size_t j = 0; j < P.N; ++j) {
        for (std::size_t t = 0; t + P.v <= P.u; ++t, ++r) {
            const fe x = P.points[j * P.u + t];
            fe xp = 1;
            for (std::size_t cidx = 0; cidx < a0_len; ++cidx) {
                M.at(r, cidx) = xp;
                xp = P.F.mul(xp, x);
            }
            for (std::size_t i = 0; i < P.v; ++i) {
                fe yp = y[j][t + i];  // Y_i * X^cidx
                for (std::size_t cidx = 0; cidx < ai_len; ++cidx) {
                    M.at(r, a0_len + i * ai_len + cidx) = yp;
                    yp = P.F.mul(yp, x);
                }
            }
        }
    }

    const Vec sol = first_nullspace_vector(P.F, std::move(M));
    if (sol.empty()) throw InternalError("frs_interpolate: trivial nullspace contradicts the counting bound");

    InterpolationPoly Q;
    Q.D = D;
    Q.A.resize(P.v + 1);
    Q.A[0].assign(sol.begin(), sol.begin() + static_cast<long>(a0_len));
    poly::trim(Q.A[0]);
    for (std::size_t i = 0; i < P.v; ++i) {
        Q.A[i + 1].assign(sol.begin() + static_cast<long>(a0_len + i * ai_len),
                          sol.begin() + static_cast<long>(a0_len + (i + 1) * ai_len));
        poly::trim(Q.A[i + 1]);
    }
    return Q;
}

namespace detail {

// affine expression c0 + sum coef[p] * param_p, grown on demand
struct AffExpr {
    fe c0 = 0;
    Vec coef;

    void add_scaled(const PrimeField& F, const AffExpr& o, fe s) {
        if (s == 0) return;
        if (o.coef.size() > coef.size()) coef.resize(o.coef.size(), 0);
        c0 = F.add(c0, F.mul(o.c0, s));
        for (std::size_t p = 0; p < o.coef.size(); ++p) coef[p] = F.add(coef[p], F.mul(o.coef[p], s));
    }
    bool param_free() const {
        for (const fe c : coef)
            if (c != 0) return false;
        return true;
    }
};

}  // namespace detail

/// Message-finding step: the vanishing of the X^0..X^{k-1} coefficients of
/// A[0](X) + sum_i A[i](X) f(gamma^{i-1} X) is a lower-triangular linear
/// system for f_0..f_{k-1} with diagonal B_0(gamma^c), where
/// B_j(X) = sum_{i=1..v} a_{i,j} X^{i-1}. Forward substitution carries
/// symbolic affine expressions; rows with zero diagonal free the new
/// coefficient and constrain the previous parameters instead. B_0 has at
/// most v-1 roots among the distinct gamma^c, so the result is an affine
/// space of dimension at most v-1 (or nullopt when a constraint row is
/// unsatisfiable). A vanishing B_0 is repaired by stripping the common
/// power of X from all A_i, which preserves the vanishing identity because
/// no interpolation point is at X = 0.
inline std::optional<AffineSpace> frs_solve_message_space(const FrsParams& P, InterpolationPoly Q) {
    const PrimeField& F = P.F;
    auto& A = Q.A;
    if (A.size() != P.v + 1) throw ParamError("frs_solve_message_space: malformed interpolation polynomial");

    while (true) {
        bool b0_zero = true;
        for (std::size_t i = 1; i <= P.v; ++i)
            if (!A[i].empty() && A[i][0] != 0) {
                b0_zero = false;
                break;
            }
        if (!b0_zero) break;
        bool any_y_side = false;
        for (std::size_t i = 1; i <= P.v; ++i)
            if (!poly::is_zero(A[i])) any_y_side = true;
        if (!any_y_side) throw DegenerateError("frs_solve_message_space: every Y-side polynomial is zero");
        if (!A[0].empty() && A[0][0] != 0) return std::nullopt;  // 0 * f_0 = nonzero
        for (auto& a : A)
            if (!a.empty()) a.erase(a.begin());
    }

    // gamma^c for c < k
    Vec gpow(P.k);
    fe g = 1;
    for (auto& x : gpow) {
        x = g;
        g = F.mul(g, P.gamma);
    }
    const auto coeff_a = [&](std::size_t i, std::size_t j) -> fe { return j < A[i].size() ? A[i][j] : 0; };
    const auto B_eval = [&](std::size_t m, fe x) {
        fe acc = 0;
        for (std::size_t i = P.v; i >= 1; --i) acc = F.add(F.mul(acc, x), coeff_a(i, m));
        return acc;
    };

    std::vector<detail::AffExpr> fs(P.k);
    std::vector<bool> alive;
    std::size_t nparams = 0;

    for (std::size_t c = 0; c < P.k; ++c) {
        detail::AffExpr rhs;
        rhs.c0 = F.neg(coeff_a(0, c));
        for (std::size_t j = 0; j < c; ++j) {
            const fe bc = B_eval(c - j, gpow[j]);
            if (bc != 0) rhs.add_scaled(F, fs[j], F.neg(bc));
        }
        const fe diag = B_eval(0, gpow[c]);
        if (diag != 0) {
            const fe dinv = F.inv(diag);
            fs[c].add_scaled(F, rhs, dinv);
            continue;
        }
        // constraint row: rhs must vanish
        if (!rhs.param_free()) {
            std::size_t p = rhs.coef.size();
            while (p > 0 && rhs.coef[p - 1] == 0) --p;
            --p;
            const fe pinv = F.inv(rhs.coef[p]);
            detail::AffExpr sol;  // param_p = -(rhs - coef_p * param_p) / coef_p
            sol.c0 = F.neg(F.mul(rhs.c0, pinv));
            sol.coef.assign(rhs.coef.size(), 0);
            for (std::size_t pp = 0; pp < rhs.coef.size(); ++pp)
                if (pp != p) sol.coef[pp] = F.neg(F.mul(rhs.coef[pp], pinv));
            for (auto& e : fs) {
                if (p < e.coef.size() && e.coef[p] != 0) {
                    const fe s = e.coef[p];
                    e.coef[p] = 0;
                    e.add_scaled(F, sol, s);
                }
            }
            alive[p] = false;
        } else if (rhs.c0 != 0) {
            return std::nullopt;
        }
        // the new coefficient is a fresh free parameter
        fs[c].coef.assign(nparams + 1, 0);
        fs[c].coef[nparams] = 1;
        alive.push_back(true);
        ++nparams;
    }

    std::vector<std::size_t> live;
    for (std::size_t p = 0; p < nparams; ++p)
        if (alive[p]) live.push_back(p);
    if (live.size() > P.v - 1)
        throw InternalError("frs_solve_message_space: solution dimension exceeds v-1");

    AffineSpace S;
    S.offset.resize(P.k);
    S.basis = Matrix(P.k, live.size());
    for (std::size_t c = 0; c < P.k; ++c) {
        S.offset[c] = fs[c].c0;
        for (std::size_t idx = 0; idx < live.size(); ++idx)
            S.basis.at(c, idx) = live[idx] < fs[c].coef.size() ? fs[c].coef[live[idx]] : 0;
    }
    return S;
}

/// choose D, interpolate, solve. Every message polynomial whose encoding
/// agrees with y in more than frs_agreement_threshold positions lies in the
/// returned space.
inline std::optional<AffineSpace> frs_list_decode(const FrsParams& P, const FrsCodeword& y) {
    const std::size_t D = frs_choose_D(P);
    InterpolationPoly Q = frs_interpolate(P, y, D);
    return frs_solve_message_space(P, std::move(Q));
}

/// N(1/(v+1) + (v/(v+1)) * (k/N)/(u-v+1)) as an exact rational: a codeword
/// agreeing with the received word in strictly more positions than this is
/// guaranteed to appear in the decoded space.
inline Rational frs_agreement_threshold(std::size_t N, std::size_t u, std::size_t v, std::size_t k) {
    const Rational first(static_cast<long long>(N), static_cast<long long>(v) + 1);
    const Rational second(static_cast<long long>(v) * static_cast<long long>(k),
                          (static_cast<long long>(v) + 1) * static_cast<long long>(u - v + 1));
    return first + second;
}

inline Rational frs_agreement_threshold(const FrsParams& P) {
    return frs_agreement_threshold(P.N, P.u, P.v, P.k);
}

}  // namespace awtp
