#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ext_field.hpp"

namespace awtp {

/// Systematic algebraic manipulation detection code over F_{q^m}. A message
/// of ell field elements is protected by a random element r and the tag
///
///     t = r^(ell+2) + sum_{i=1..ell} x_i * r^i.
///
/// An additive offset on (x, r, t) chosen without knowledge of the codeword
/// passes verification with probability at most (ell+1)/q^m over r: for a
/// fixed nonzero offset the pass condition is a nonzero polynomial in r of
/// degree at most ell+1. The construction requires ell+2 not divisible by q,
/// otherwise the leading term of that polynomial can cancel.
struct AmdParams {
    ExtField ext;
    std::uint64_t ell;

    AmdParams(ExtField e, std::uint64_t l) : ext(std::move(e)), ell(l) {
        if (ell < 1) throw ParamError("amd: ell must be >= 1");
        if ((ell + 2) % ext.base().q() == 0)
            throw ParamError("amd: ell + 2 must not be divisible by q");
    }

    /// Serialized codeword length over F_q.
    std::size_t serialized_len() const { return (static_cast<std::size_t>(ell) + 2) * ext.deg(); }
};

struct AmdCodeword {
    std::vector<ExtField::Element> x;
    ExtField::Element r;
    ExtField::Element t;
};

inline ExtField::Element amd_tag(const AmdParams& P, std::span<const ExtField::Element> x,
                                 const ExtField::Element& r) {
    if (x.size() != P.ell) throw LengthMismatch("amd_tag: expected ell message blocks");
    const ExtField& E = P.ext;
    auto acc = E.zero();
    auto rp = r;  // r^i
    for (std::uint64_t i = 1; i <= P.ell; ++i) {
        acc = E.add(acc, E.mul(x[i - 1], rp));
        rp = E.mul(rp, r);
    }
    rp = E.mul(rp, r);  // r^(ell+2)
    return E.add(acc, rp);
}

/// Encode with r drawn uniformly from the supplied source; deterministic
/// given the source state.
inline AmdCodeword amd_encode(const AmdParams& P, std::span<const ExtField::Element> x, Rng& rng) {
    const auto r = P.ext.uniform(rng);
    auto t = amd_tag(P, x, r);
    return AmdCodeword{std::vector<ExtField::Element>(x.begin(), x.end()), r, std::move(t)};
}

/// accept(x) iff t = f(x, r); reject otherwise.
inline std::optional<std::vector<ExtField::Element>> amd_verify(const AmdParams& P, const AmdCodeword& c) {
    if (c.x.size() != P.ell) return std::nullopt;
    if (amd_tag(P, c.x, c.r) != c.t) return std::nullopt;
    return c.x;
}

}  // namespace awtp
