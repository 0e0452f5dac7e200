#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "field.hpp"

namespace awtp {

/// Row-major dense matrix over F_q. The field context is passed to the
/// operations rather than stored here.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<fe> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    fe& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    fe at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline Vec mat_vec(const PrimeField& F, const Matrix& M, std::span<const fe> x) {
    if (x.size() != M.cols) throw DimensionError("mat_vec: dimension mismatch");
    Vec y(M.rows, 0);
    for (std::size_t i = 0; i < M.rows; ++i) {
        fe acc = 0;
        for (std::size_t j = 0; j < M.cols; ++j) acc = F.add(acc, F.mul(M.at(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

inline Matrix mat_mul(const PrimeField& F, const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw DimensionError("mat_mul: dimension mismatch");
    Matrix C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            const fe v = A.at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j) C.at(i, j) = F.add(C.at(i, j), F.mul(v, B.at(k, j)));
        }
    return C;
}

/// In-place reduced row echelon form. Returns the pivot columns in order.
inline std::vector<std::size_t> rref(const PrimeField& F, Matrix& M) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < M.cols && rank < M.rows; ++col) {
        std::size_t pr = rank;
        while (pr < M.rows && M.at(pr, col) == 0) ++pr;
        if (pr == M.rows) continue;
        if (pr != rank)
            for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.at(pr, j), M.at(rank, j));
        const fe pinv = F.inv(M.at(rank, col));
        for (std::size_t j = col; j < M.cols; ++j) M.at(rank, j) = F.mul(M.at(rank, j), pinv);
        for (std::size_t i = 0; i < M.rows; ++i) {
            if (i == rank) continue;
            const fe f = M.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < M.cols; ++j) M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(rank, j)));
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

/// Basis of {x : Ax = 0} as matrix columns, one per free column of A,
/// ordered by ascending free column (the standard RREF basis).
inline Matrix nullspace(const PrimeField& F, Matrix A) {
    const std::size_t n = A.cols;
    const auto pivots = rref(F, A);
    std::vector<bool> is_pivot(n, false);
    for (const auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    Matrix K(n, free_cols.size());
    for (std::size_t fidx = 0; fidx < free_cols.size(); ++fidx) {
        const std::size_t fcol = free_cols[fidx];
        K.at(fcol, fidx) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) K.at(pivots[r], fidx) = F.neg(A.at(r, fcol));
    }
    return K;
}

/// First vector of the RREF nullspace basis, computed with forward
/// elimination and a single back substitution. Equal to column 0 of
/// nullspace() but roughly half the work; this is the decoder's hot path.
/// Returns an empty vector when the nullspace is trivial.
inline Vec first_nullspace_vector(const PrimeField& F, Matrix M) {
    const std::size_t n = M.cols;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < M.rows; ++col) {
        std::size_t pr = rank;
        while (pr < M.rows && M.at(pr, col) == 0) ++pr;
        if (pr == M.rows) continue;
        if (pr != rank)
            for (std::size_t j = col; j < n; ++j) std::swap(M.at(pr, j), M.at(rank, j));
        const fe pinv = F.inv(M.at(rank, col));
        for (std::size_t j = col; j < n; ++j) M.at(rank, j) = F.mul(M.at(rank, j), pinv);
        for (std::size_t i = rank + 1; i < M.rows; ++i) {
            const fe f = M.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < n; ++j) M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(rank, j)));
        }
        pivots.push_back(col);
        ++rank;
    }
    if (rank == n) return {};

    std::vector<bool> is_pivot(n, false);
    for (const auto c : pivots) is_pivot[c] = true;
    std::size_t first_free = 0;
    while (is_pivot[first_free]) ++first_free;

    Vec x(n, 0);
    x[first_free] = 1;
    for (std::size_t r = pivots.size(); r > 0; --r) {
        const std::size_t pc = pivots[r - 1];
        fe acc = 0;
        for (std::size_t j = pc + 1; j < n; ++j)
            if (x[j] != 0) acc = F.add(acc, F.mul(M.at(r - 1, j), x[j]));
        x[pc] = F.neg(acc);
    }
    return x;
}

/// Affine subspace {basis * b + offset : b in F_q^dim} of F_q^ambient,
/// kept with linearly independent basis columns.
struct AffineSpace {
    Matrix basis;  // ambient x dim
    Vec offset;    // ambient

    std::size_t ambient() const { return offset.size(); }
    std::size_t dim() const { return basis.cols; }
};

/// Solution set of Ax = b as an AffineSpace (particular solution with free
/// variables zeroed, nullspace basis as directions), or nullopt when the
/// system is inconsistent.
inline std::optional<AffineSpace> solve_affine(const PrimeField& F, const Matrix& A, std::span<const fe> b) {
    if (b.size() != A.rows) throw DimensionError("solve_affine: rhs length mismatch");
    const std::size_t n = A.cols;
    Matrix aug(A.rows, n + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n) = b[i];
    }
    const auto pivots = rref(F, aug);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;

    AffineSpace S;
    S.offset.assign(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) S.offset[pivots[r]] = aug.at(r, n);

    std::vector<bool> is_pivot(n, false);
    for (const auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    S.basis = Matrix(n, free_cols.size());
    for (std::size_t fidx = 0; fidx < free_cols.size(); ++fidx) {
        const std::size_t fcol = free_cols[fidx];
        S.basis.at(fcol, fidx) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) S.basis.at(pivots[r], fidx) = F.neg(aug.at(r, fcol));
    }
    return S;
}

inline Vec affine_point(const PrimeField& F, const AffineSpace& S, std::span<const fe> params) {
    Vec p = mat_vec(F, S.basis, params);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = F.add(p[i], S.offset[i]);
    return p;
}

inline bool affine_contains(const PrimeField& F, const AffineSpace& S, std::span<const fe> x) {
    if (x.size() != S.ambient()) throw DimensionError("affine_contains: point dimension mismatch");
    Vec rhs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) rhs[i] = F.sub(x[i], S.offset[i]);
    return solve_affine(F, S.basis, rhs).has_value();
}

/// Rebuild (M, z) with an independent column basis: the pivot columns of
/// rref(M) name a maximal independent subset of M's columns, and the affine
/// set z + col(M) is unchanged by dropping the dependent ones. Used after
/// projecting a space onto a coordinate prefix, which can introduce
/// dependent columns.
inline AffineSpace affine_column_reduce(const PrimeField& F, const Matrix& M, Vec z) {
    Matrix copy = M;
    const auto pivots = rref(F, copy);
    Matrix basis(M.rows, pivots.size());
    for (std::size_t idx = 0; idx < pivots.size(); ++idx)
        for (std::size_t i = 0; i < M.rows; ++i) basis.at(i, idx) = M.at(i, pivots[idx]);
    return AffineSpace{std::move(basis), std::move(z)};
}

/// Enumerate every point of S (q^dim of them), calling fn on each.
inline void for_each_point(const PrimeField& F, const AffineSpace& S, const std::function<void(const Vec&)>& fn) {
    const std::size_t d = S.dim();
    Vec params(d, 0);
    while (true) {
        fn(affine_point(F, S, params));
        std::size_t i = 0;
        while (i < d) {
            if (++params[i] < F.q()) break;
            params[i] = 0;
            ++i;
        }
        if (i == d) break;
    }
}

}  // namespace awtp
