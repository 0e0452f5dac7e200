#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace awtp {

/// Subspace-evasive subset S of F_q^n, built per block of width w = v^2 as
/// the solution set of v diagonal equations
///
///     f_i(x_1..x_w) = sum_j A[i][j] * x_j^{d_j} = 0,       i = 1..v,
///
/// with strictly descending degrees d_1 > ... > d_w >= 2 of which at least v
/// (the J-indexed ones) are coprime to q-1, and A[i][j] = gamma^{j*i} a
/// strongly regular v x w matrix over F_q. S is the blocks-fold cartesian
/// power of the block variety; it meets every affine subspace of dimension
/// at most v in at most (d_1)^v points, and input vectors of length w-v per
/// block embed bijectively into it.
struct SesParams {
    explicit SesParams(PrimeField field) : F(std::move(field)) {}

    PrimeField F;
    std::size_t v = 0;
    std::size_t w = 0;
    std::size_t blocks = 0;
    std::size_t n1 = 0;
    std::size_t n = 0;
    std::vector<std::uint64_t> degrees;   // size w, descending
    std::vector<std::size_t> J;           // v indices into degrees, ascending
    std::vector<std::size_t> coJ;         // the other w-v indices, ascending
    Matrix A;                             // v x w
    Matrix Aj_inv;                        // inverse of A restricted to columns J
    std::vector<std::uint64_t> root_exp;  // root_exp[i] = degrees[J[i]]^{-1} mod q-1
    std::uint64_t d1 = 0;

    // x^{d_j} lookup, filled for small q
    std::vector<Vec> pow_tab;

    std::uint64_t list_bound() const {  // (d_1)^v
        std::uint64_t b = 1;
        for (std::size_t i = 0; i < v; ++i) b *= d1;
        return b;
    }

    fe block_pow(std::size_t j, fe x) const {
        return pow_tab.empty() ? F.pow(x, degrees[j]) : pow_tab[j][x];
    }

    /// All v equations vanish on one block of width w.
    bool block_on_variety(std::span<const fe> x) const {
        for (std::size_t i = 0; i < v; ++i) {
            fe acc = 0;
            for (std::size_t j = 0; j < w; ++j) acc = F.add(acc, F.mul(A.at(i, j), block_pow(j, x[j])));
            if (acc != 0) return false;
        }
        return true;
    }
};

namespace detail {

inline bool minor_nonsingular(const PrimeField& F, const Matrix& A, std::span<const std::size_t> rows,
                              std::span<const std::size_t> cols) {
    const std::size_t r = rows.size();
    Matrix M(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) M.at(i, j) = A.at(rows[i], cols[j]);
    return rref(F, M).size() == r;
}

inline void for_each_combination(std::size_t n, std::size_t r,
                                 const std::function<void(std::span<const std::size_t>)>& fn) {
    std::vector<std::size_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// Choose degrees, the coordinate split J, and the coefficient matrix for a
/// given field and input length n1 ((w-v) | n1). Degrees are the smallest
/// distinct integers >= 2 whose set contains v values coprime to q-1,
/// scanned upward and assigned in descending order; the scan aborts past
/// 4w + v^v. A is gamma-power generated and its strong regularity is
/// verified minor by minor.
inline SesParams ses_setup(const PrimeField& F, std::size_t v, std::size_t n1) {
    if (v < 2) throw ParamError("ses: v must be >= 2");
    const std::size_t w = v * v;
    if (F.q() <= w) throw ParamError("ses: need q > w distinct nonzero coefficients");
    if (n1 == 0 || n1 % (w - v) != 0) throw ParamError("ses: input length must be a positive multiple of w-v");

    SesParams P{F};
    P.v = v;
    P.w = w;
    P.n1 = n1;
    P.blocks = n1 / (w - v);
    P.n = w * P.blocks;

    // degree scan
    std::uint64_t scan_cap = 4 * static_cast<std::uint64_t>(w);
    {
        std::uint64_t vv = 1;
        for (std::size_t i = 0; i < v; ++i) vv *= v;
        scan_cap += vv;
    }
    std::vector<std::uint64_t> coprime;
    for (std::uint64_t d = 2; coprime.size() < v; ++d) {
        if (d > scan_cap) throw ParamError("ses: no admissible degree set below the scan cap");
        if (std::gcd(d, static_cast<std::uint64_t>(F.q() - 1)) == 1) coprime.push_back(d);
    }
    std::vector<std::uint64_t> chosen = coprime;
    for (std::uint64_t d = 2; chosen.size() < w; ++d) {
        if (std::find(chosen.begin(), chosen.end(), d) == chosen.end()) chosen.push_back(d);
    }
    std::sort(chosen.begin(), chosen.end(), std::greater<>());
    P.degrees = std::move(chosen);
    P.d1 = P.degrees.front();

    for (std::size_t j = 0; j < w && P.J.size() < v; ++j)
        if (std::gcd(P.degrees[j], static_cast<std::uint64_t>(F.q() - 1)) == 1) P.J.push_back(j);
    if (P.J.size() < v) throw InternalError("ses: degree selection lost its coprime values");
    for (std::size_t j = 0; j < w; ++j)
        if (std::find(P.J.begin(), P.J.end(), j) == P.J.end()) P.coJ.push_back(j);

    // A[i][j] = (gamma^{j+1})^{i+1}; strong regularity checked exhaustively
    const fe gamma = F.generator();
    P.A = Matrix(v, w);
    for (std::size_t j = 0; j < w; ++j) {
        const fe gj = F.pow(gamma, static_cast<std::uint64_t>(j) + 1);
        for (std::size_t i = 0; i < v; ++i) P.A.at(i, j) = F.pow(gj, static_cast<std::uint64_t>(i) + 1);
    }
    for (std::size_t r = 1; r <= v; ++r) {
        detail::for_each_combination(v, r, [&](std::span<const std::size_t> rows) {
            detail::for_each_combination(w, r, [&](std::span<const std::size_t> cols) {
                if (!detail::minor_nonsingular(F, P.A, rows, cols))
                    throw ParamError("ses: coefficient matrix is not strongly regular");
            });
        });
    }

    // invert A restricted to columns J
    Matrix aug(v, 2 * v);
    for (std::size_t i = 0; i < v; ++i) {
        for (std::size_t j = 0; j < v; ++j) aug.at(i, j) = P.A.at(i, P.J[j]);
        aug.at(i, v + i) = 1;
    }
    if (rref(F, aug).size() != v) throw InternalError("ses: J-minor singular despite strong regularity");
    P.Aj_inv = Matrix(v, v);
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j) P.Aj_inv.at(i, j) = aug.at(i, v + j);

    for (std::size_t i = 0; i < v; ++i)
        P.root_exp.push_back(invmod_u64(P.degrees[P.J[i]], static_cast<std::uint64_t>(F.q() - 1)));

    if (F.q() <= 1 << 16) {
        P.pow_tab.resize(w);
        for (std::size_t j = 0; j < w; ++j) {
            P.pow_tab[j].resize(F.q());
            for (fe x = 0; x < F.q(); ++x) P.pow_tab[j][x] = F.pow(x, P.degrees[j]);
        }
    }
    return P;
}

/// Blockwise bijection F_q^{n1} -> S. Per block: the w-v inputs sit on the
/// coJ coordinates unchanged, and the J coordinates are solved from
/// A' y = b with b_i = -sum_{j not in J} A[i][j] x_j^{d_j}, then
/// x_{J[i]} = y_i^{1/d} using the inverse exponent mod q-1.
inline Vec ses_encode(const SesParams& P, std::span<const fe> vec) {
    if (vec.size() != P.n1) throw ParamError("ses_encode: input length must be n1");
    const PrimeField& F = P.F;
    Vec out(P.n, 0);
    for (std::size_t blk = 0; blk < P.blocks; ++blk) {
        const fe* in = vec.data() + blk * (P.w - P.v);
        fe* x = out.data() + blk * P.w;
        for (std::size_t t = 0; t < P.w - P.v; ++t) x[P.coJ[t]] = in[t];
        Vec b(P.v, 0);
        for (std::size_t i = 0; i < P.v; ++i) {
            fe acc = 0;
            for (std::size_t t = 0; t < P.w - P.v; ++t) {
                const std::size_t j = P.coJ[t];
                acc = F.add(acc, F.mul(P.A.at(i, j), P.block_pow(j, in[t])));
            }
            b[i] = F.neg(acc);
        }
        const Vec y = mat_vec(F, P.Aj_inv, b);
        for (std::size_t i = 0; i < P.v; ++i) x[P.J[i]] = F.pow(y[i], P.root_exp[i]);
    }
    return out;
}

/// Projection of each block onto the coJ coordinates; inverse of ses_encode
/// on S. Membership is not re-verified.
inline Vec ses_inverse(const SesParams& P, std::span<const fe> point) {
    if (point.size() != P.n) throw ParamError("ses_inverse: input length must be n");
    Vec out(P.n1);
    for (std::size_t blk = 0; blk < P.blocks; ++blk) {
        const fe* x = point.data() + blk * P.w;
        fe* o = out.data() + blk * (P.w - P.v);
        for (std::size_t t = 0; t < P.w - P.v; ++t) o[t] = x[P.coJ[t]];
    }
    return out;
}

inline bool ses_contains(const SesParams& P, std::span<const fe> x) {
    if (x.size() != P.n) return false;
    for (std::size_t blk = 0; blk < P.blocks; ++blk)
        if (!P.block_on_variety(x.subspan(blk * P.w, P.w))) return false;
    return true;
}

namespace detail {

struct SesIntersector {
    const SesParams& P;
    const AffineSpace& H;
    std::vector<Vec> found;

    // parameter space of H: b = Pmap * s + poff with s free
    void run() {
        Matrix Pmap = Matrix::identity(H.dim());
        Vec poff(H.dim(), 0);
        recurse(0, Pmap, poff);
    }

    void recurse(std::size_t blk, const Matrix& Pmap, const Vec& poff) {
        const PrimeField& F = P.F;
        if (blk == P.blocks) {
            if (Pmap.cols != 0) throw InternalError("ses_intersect: free parameters survived all blocks");
            found.push_back(affine_point(F, H, poff));
            return;
        }

        // restriction of the current parametrization to this block
        Matrix Mt(P.w, H.dim());
        Vec ct(P.w);
        for (std::size_t i = 0; i < P.w; ++i) {
            for (std::size_t j = 0; j < H.dim(); ++j) Mt.at(i, j) = H.basis.at(blk * P.w + i, j);
            ct[i] = H.offset[blk * P.w + i];
        }
        Matrix B = mat_mul(F, Mt, Pmap);  // w x f
        Vec c = mat_vec(F, Mt, poff);
        for (std::size_t i = 0; i < P.w; ++i) c[i] = F.add(c[i], ct[i]);

        Matrix Bcopy = B;
        const auto pivots = rref(F, Bcopy);
        const std::size_t r = pivots.size();
        const Matrix K = nullspace(F, B);

        if (r == 0) {
            if (P.block_on_variety(c)) recurse(blk + 1, Pmap, poff);
            return;
        }

        std::uint64_t budget = 1;  // Bezout bound (d_1)^r for this block
        for (std::size_t i = 0; i < r; ++i) budget *= P.d1;
        std::uint64_t space = 1;
        for (std::size_t i = 0; i < r; ++i) {
            if (space > (200000000ULL / F.q()) + 1) throw ScaleError("ses_intersect: enumeration too large");
            space *= F.q();
        }

        const Matrix PK = mat_mul(F, Pmap, K);
        std::uint64_t sols = 0;
        Vec sp(r, 0);
        Vec x = c;
        while (true) {
            if (P.block_on_variety(x)) {
                if (++sols > budget) throw InternalError("ses_intersect: block solutions exceed (d_1)^r");
                Vec poff2 = poff;
                for (std::size_t i = 0; i < r; ++i) {
                    if (sp[i] == 0) continue;
                    for (std::size_t row = 0; row < Pmap.rows; ++row)
                        poff2[row] = F.add(poff2[row], F.mul(Pmap.at(row, pivots[i]), sp[i]));
                }
                recurse(blk + 1, PK, poff2);
            }
            // odometer over the pivot coordinates; adding column pivots[i]
            // once per increment also realizes the wrap, since q * col = 0
            std::size_t i = 0;
            while (i < r) {
                ++sp[i];
                for (std::size_t row = 0; row < P.w; ++row) x[row] = F.add(x[row], B.at(row, pivots[i]));
                if (sp[i] < F.q()) break;
                sp[i] = 0;
                ++i;
            }
            if (i == r) break;
        }
    }
};

}  // namespace detail

/// Exactly S intersected with the affine subspace H (dim(H) <= v), without
/// duplicates, in ascending lexicographic order. Block induction: solve the
/// variety equations on the parameters visible to block 1, fix each
/// solution, contract the parameter space, continue with the next block.
/// Per block only the rank-many pivot parameters are enumerated.
inline std::vector<Vec> ses_intersect(const SesParams& P, const AffineSpace& H) {
    if (H.ambient() != P.n) throw DimensionError("ses_intersect: subspace must live in F_q^n");
    if (H.dim() > P.v) throw DimensionError("ses_intersect: subspace dimension exceeds v");
    detail::SesIntersector it{P, H, {}};
    it.run();
    std::sort(it.found.begin(), it.found.end());
    it.found.erase(std::unique(it.found.begin(), it.found.end()), it.found.end());
    return it.found;
}

}  // namespace awtp
