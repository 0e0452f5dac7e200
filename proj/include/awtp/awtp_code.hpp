#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amd.hpp"
#include "frs.hpp"
#include "subspace_evasive.hpp"

namespace awtp {

/// How the write budget rho_w is validated at parameter derivation time.
/// strict uses the closed-form rate condition (which is loose: at small
/// desk-scale u it can reject budgets the decoder handles fine); permissive
/// checks the sharper list-decoding threshold with the actual dimension k.
enum class RateCheck { strict, permissive };

/// Exact right-hand side of the reliability condition
///   rho_w < v/(v+1) - (v/(v+1)) * ((v/(v-1))(uR+3) + u*rho_r)/(u-v+1).
/// A negative value signals an infeasible (u, v, R, rho_r) combination.
inline Rational awtp_rate_condition(std::size_t u, std::size_t v, const Rational& R, const Rational& rho_r) {
    if (v < 2 || u <= v) throw ParamError("rate condition requires u > v >= 2");
    const Rational head(static_cast<long long>(v), static_cast<long long>(v) + 1);
    const Rational uR = R * Rational(static_cast<long long>(u));
    const Rational inner = Rational(static_cast<long long>(v), static_cast<long long>(v) - 1) * (uR + Rational(3)) +
                           rho_r * Rational(static_cast<long long>(u));
    return head - head * (inner / Rational(static_cast<long long>(u - v + 1)));
}

/// Secrecy capacity upper bound 1 - rho_r - rho_w + 2*eps*rho_r*N*log_S(1 + 1/eps)
/// over the alphabet S with log2|S| = alphabet_bits, as an exact rational.
/// For eps > 0 this is exact only when 1 + 1/eps is a power of two; other
/// epsilons go through awtp_capacity_bound_approx.
inline Rational awtp_capacity_bound(const Rational& rho_r, const Rational& rho_w, const Rational& eps,
                                    std::size_t N, std::size_t alphabet_bits) {
    if (eps < Rational(0)) throw ParamError("capacity bound: eps must be >= 0");
    const Rational base = Rational(1) - rho_r - rho_w;
    if (eps == Rational(0)) return base;
    if (alphabet_bits == 0) throw ParamError("capacity bound: alphabet_bits must be positive");
    const Rational arg = Rational(1) + Rational(1) / eps;
    Rational pw(1);
    long long j = 0;
    while (pw < arg) {
        pw = pw * Rational(2);
        ++j;
    }
    if (pw != arg) throw ParamError("capacity bound: log term is not rational at this eps");
    const Rational logterm(j, static_cast<long long>(alphabet_bits));
    return base + Rational(2) * eps * rho_r * Rational(static_cast<long long>(N)) * logterm;
}

inline double awtp_capacity_bound_approx(double rho_r, double rho_w, double eps, double N, double alphabet_bits) {
    if (eps <= 0.0) return 1.0 - rho_r - rho_w;
    return 1.0 - rho_r - rho_w + 2.0 * eps * rho_r * N * (std::log2(1.0 + 1.0 / eps) / alphabet_bits);
}

/// Asymptotic parameter schedule check: with v = 1/xi1, u = 1/xi1^2 and
/// R = 1 - rho_r - rho_w - 12*xi1, the simplified admission inequality
/// rho_w < 1 - R - rho_r - 12*xi1 must imply the rate condition, i.e.
/// 1 - R - rho_r - 12*xi1 <= rate_condition_rhs at those u, v. Everything
/// is evaluated in exact rationals.
struct ScheduleCheck {
    std::size_t v = 0, u = 0;
    Rational R;
    Rational display_lhs;  // 1 - R - rho_r - 12*xi1 (= rho_w by construction)
    Rational lemma_rhs;    // rate-condition right-hand side at (u, v, R, rho_r)
    bool feasible = false;
    bool holds = false;
};

inline ScheduleCheck awtp_schedule_check(const Rational& xi1, const Rational& rho_r, const Rational& rho_w) {
    if (!(xi1 > Rational(0)) || xi1.num() != 1) throw ParamError("schedule check: xi1 must be 1/v for an integer v");
    ScheduleCheck out;
    out.v = static_cast<std::size_t>(xi1.den());
    out.u = out.v * out.v;
    out.R = Rational(1) - rho_r - rho_w - Rational(12) * xi1;
    out.feasible = out.R > Rational(0);
    if (!out.feasible) return out;
    out.display_lhs = Rational(1) - out.R - rho_r - Rational(12) * xi1;
    out.lemma_rhs = awtp_rate_condition(out.u, out.v, out.R, rho_r);
    out.holds = out.display_lhs <= out.lemma_rhs;
    return out;
}

/// Full parameter set of the composed code. Derived quantities:
///   ell = ceil(uR)           message blocks of the tamper-detection layer
///   w = v^2, b = ceil((ell*N + 2N)/(w-v)), n1 = (w-v)b, n = wb
///   k = n + u*rho_r*N        polynomial degree bound of the FRS layer
/// with q > Nu prime, k <= uN, ell+2 not divisible by q, and integral
/// uRN, rho_r*N, rho_w*N.
struct AwtpParams {
    PrimeField F;
    std::size_t u, v, N;
    Rational R, rho_r, rho_w;
    RateCheck mode;
    std::size_t ell, w, b, n1, n, k;
    std::size_t msg_len;     // uRN
    std::size_t reads_max;   // rho_r N
    std::size_t writes_max;  // rho_w N
    std::size_t coin_len;    // u rho_r N
    AmdParams amd;
    SesParams ses;
    FrsParams frs;
};

/// Arithmetic part of parameter derivation: every size and every validity
/// constraint, without constructing fields or sub-codes. Cheap enough for
/// feasibility sweeps.
struct AwtpShape {
    std::size_t ell, w, b, n1, n, k, msg_len, reads_max, writes_max, coin_len;
};

inline AwtpShape awtp_shape(fe q, std::size_t u, std::size_t v, std::size_t N, const Rational& R,
                            const Rational& rho_r, const Rational& rho_w, RateCheck mode = RateCheck::permissive) {
    if (!is_prime(q)) throw ParamError("awtp: q must be prime");
    if (v < 2) throw ParamError("awtp: v must be >= 2");
    if (u < v) throw ParamError("awtp: u must be >= v");
    if (N < 1) throw ParamError("awtp: N must be >= 1");
    if (q <= static_cast<fe>(N) * static_cast<fe>(u)) throw ParamError("awtp: q must exceed N*u");

    const auto integral = [](const Rational& r, const std::string& what) -> long long {
        if (!r.is_integer() || r.num() < 0)
            throw ParamError("awtp: " + what + " = " + r.str() + " must be a nonnegative integer");
        return r.num();
    };
    const long long msg_len = integral(R * Rational(static_cast<long long>(u) * static_cast<long long>(N)), "uRN");
    if (msg_len < 1) throw ParamError("awtp: message length uRN must be >= 1");
    const long long reads_max = integral(rho_r * Rational(static_cast<long long>(N)), "rho_r*N");
    const long long writes_max = integral(rho_w * Rational(static_cast<long long>(N)), "rho_w*N");
    if (reads_max > static_cast<long long>(N) || writes_max > static_cast<long long>(N))
        throw ParamError("awtp: read/write budgets cannot exceed N");

    const long long ell = (R * Rational(static_cast<long long>(u))).ceil();
    if (ell < 1) throw InternalError("awtp: ell < 1 with positive message length");
    if ((static_cast<std::uint64_t>(ell) + 2) % q == 0) throw ParamError("awtp: ell + 2 is divisible by q");

    const std::size_t w = v * v;
    const std::size_t amd_len = static_cast<std::size_t>(ell) * N + 2 * N;
    const std::size_t b = (amd_len + (w - v) - 1) / (w - v);
    const std::size_t n1 = (w - v) * b;
    const std::size_t n = w * b;
    const std::size_t coin_len = u * static_cast<std::size_t>(reads_max);
    const std::size_t k = n + coin_len;
    if (k > u * N) throw ParamError("awtp: k = " + std::to_string(k) + " exceeds uN = " + std::to_string(u * N));

    if (mode == RateCheck::strict) {
        const Rational rhs = awtp_rate_condition(u, v, R, rho_r);
        if (!(rho_w < rhs))
            throw ParamError("awtp: rho_w = " + rho_w.str() + " violates the rate condition bound " + rhs.str());
    }
    const Rational threshold = frs_agreement_threshold(N, u, v, k);
    if (!(Rational(static_cast<long long>(N) - writes_max) > threshold))
        throw ParamError("awtp: rho_w = " + rho_w.str() + " leaves agreement N - rho_w*N = " +
                         std::to_string(N - static_cast<std::size_t>(writes_max)) +
                         " not above the list-decoding threshold " + threshold.str());

    return AwtpShape{static_cast<std::size_t>(ell),
                     w,
                     b,
                     n1,
                     n,
                     k,
                     static_cast<std::size_t>(msg_len),
                     static_cast<std::size_t>(reads_max),
                     static_cast<std::size_t>(writes_max),
                     coin_len};
}

inline AwtpParams awtp_derive_params(fe q, std::size_t u, std::size_t v, std::size_t N, const Rational& R,
                                     const Rational& rho_r, const Rational& rho_w,
                                     RateCheck mode = RateCheck::permissive) {
    const AwtpShape s = awtp_shape(q, u, v, N, R, rho_r, rho_w, mode);
    PrimeField F(q);
    return AwtpParams{F,
                      u,
                      v,
                      N,
                      R,
                      rho_r,
                      rho_w,
                      mode,
                      s.ell,
                      s.w,
                      s.b,
                      s.n1,
                      s.n,
                      s.k,
                      s.msg_len,
                      s.reads_max,
                      s.writes_max,
                      s.coin_len,
                      AmdParams(ExtField(F, N), static_cast<std::uint64_t>(s.ell)),
                      ses_setup(F, v, s.n1),
                      FrsParams(F, u, N, s.k, v)};
}

/// Sender randomness: the tamper-detection nonce and the padding vector
/// appended to the evasive-set element before polynomial encoding.
struct EncodingCoins {
    Vec r_amd;  // length N
    Vec a;      // length u*rho_r*N
};

inline EncodingCoins awtp_random_coins(const AwtpParams& P, Rng& rng) {
    EncodingCoins c;
    c.r_amd.resize(P.N);
    for (auto& x : c.r_amd) x = P.F.uniform(rng);
    c.a.resize(P.coin_len);
    for (auto& x : c.a) x = P.F.uniform(rng);
    return c;
}

/// The degree-k coefficient vector handed to the polynomial layer:
/// msg -> zero-pad to ell*N -> tag -> zero-pad to n1 -> evasive-set encode
/// -> append coins. Deterministic given coins.
inline Vec awtp_encode_coefficients(const AwtpParams& P, std::span<const fe> msg, const EncodingCoins& coins) {
    if (msg.size() != P.msg_len) throw LengthMismatch("awtp_encode: message must have length uRN");
    if (coins.r_amd.size() != P.N || coins.a.size() != P.coin_len)
        throw LengthMismatch("awtp_encode: coin lengths do not match the parameters");

    Vec x(P.ell * P.N, 0);
    std::copy(msg.begin(), msg.end(), x.begin());

    const ExtField& E = P.amd.ext;
    std::vector<ExtField::Element> xe;
    xe.reserve(P.ell);
    for (std::size_t i = 0; i < P.ell; ++i)
        xe.push_back(E.phi(std::span<const fe>(x).subspan(i * P.N, P.N)));
    const auto r = E.phi(coins.r_amd);
    const auto t = amd_tag(P.amd, xe, r);

    Vec serialized;
    serialized.reserve(P.n1);
    serialized.insert(serialized.end(), x.begin(), x.end());
    serialized.insert(serialized.end(), coins.r_amd.begin(), coins.r_amd.end());
    const Vec tv = E.phi_inv(t);
    serialized.insert(serialized.end(), tv.begin(), tv.end());
    serialized.resize(P.n1, 0);

    Vec f = ses_encode(P.ses, serialized);
    f.insert(f.end(), coins.a.begin(), coins.a.end());
    return f;
}

inline FrsCodeword awtp_encode(const AwtpParams& P, std::span<const fe> msg, const EncodingCoins& coins) {
    return frs_encode(P.frs, awtp_encode_coefficients(P, msg, coins));
}

/// Intermediate decoding artifacts, for experiment assertions and tests.
struct DecodeTrace {
    std::optional<AffineSpace> message_space;  // FRS list, ambient k
    std::optional<AffineSpace> pruned;         // first n coordinates, reduced
    std::vector<Vec> candidates;               // evasive-set intersection
    std::size_t amd_accepted = 0;              // distinct codewords that verified
    std::string failure;
};

/// Verification of the pruned candidate list: each candidate is inverted,
/// split into (x, r, t), and tag-checked; the message is released only when
/// exactly one distinct codeword verifies. A candidate list with zero or
/// several valid codewords yields bottom, never a guess.
inline std::optional<Vec> awtp_adjudicate(const AwtpParams& P, const std::vector<Vec>& candidates,
                                          DecodeTrace* trace = nullptr) {
    const ExtField& E = P.amd.ext;
    std::vector<Vec> accepted;  // distinct serialized (x, r, t)
    for (const auto& cand : candidates) {
        const Vec ser = ses_inverse(P.ses, cand);
        const std::span<const fe> s(ser);
        std::vector<ExtField::Element> xe;
        xe.reserve(P.ell);
        for (std::size_t i = 0; i < P.ell; ++i) xe.push_back(E.phi(s.subspan(i * P.N, P.N)));
        AmdCodeword cw{std::move(xe), E.phi(s.subspan(P.ell * P.N, P.N)), E.phi(s.subspan(P.ell * P.N + P.N, P.N))};
        if (amd_verify(P.amd, cw)) {
            Vec triple(ser.begin(), ser.begin() + static_cast<long>(P.ell * P.N + 2 * P.N));
            if (std::find(accepted.begin(), accepted.end(), triple) == accepted.end())
                accepted.push_back(std::move(triple));
        }
    }
    if (trace) trace->amd_accepted = accepted.size();
    if (accepted.size() != 1) {
        if (trace)
            trace->failure = accepted.empty() ? "no candidate passed tag verification"
                                              : "ambiguous: several distinct codewords verified";
        return std::nullopt;
    }
    return Vec(accepted[0].begin(), accepted[0].begin() + static_cast<long>(P.msg_len));
}

/// FRS list decode -> restrict the space to the first n coordinates and
/// re-reduce -> evasive-set intersection -> tag adjudication. All internal
/// failures map to bottom (nullopt); an incorrect message is never returned
/// by construction of the adjudication rule.
inline std::optional<Vec> awtp_decode(const AwtpParams& P, const FrsCodeword& y, DecodeTrace* trace = nullptr) {
    try {
        if (y.size() != P.N) throw LengthMismatch("awtp_decode: received word has wrong block count");
        for (const auto& sym : y)
            if (sym.size() != P.u) throw LengthMismatch("awtp_decode: received symbol has wrong width");

        auto space = frs_list_decode(P.frs, y);
        if (trace) trace->message_space = space;
        if (!space) {
            if (trace) trace->failure = "empty list-decoding space";
            return std::nullopt;
        }

        Matrix Mn(P.n, space->dim());
        Vec zn(P.n);
        for (std::size_t i = 0; i < P.n; ++i) {
            for (std::size_t j = 0; j < space->dim(); ++j) Mn.at(i, j) = space->basis.at(i, j);
            zn[i] = space->offset[i];
        }
        const AffineSpace H = affine_column_reduce(P.F, Mn, std::move(zn));
        if (trace) trace->pruned = H;

        const auto candidates = ses_intersect(P.ses, H);
        if (trace) trace->candidates = candidates;
        return awtp_adjudicate(P, candidates, trace);
    } catch (const Error& e) {
        if (trace) trace->failure = e.what();
        return std::nullopt;
    }
}

}  // namespace awtp
