#include <doctest.h>

#include <algorithm>
#include <awtp/linalg.hpp>
#include <awtp/rng.hpp>
#include <set>

using namespace awtp;

namespace {

Matrix random_matrix(const PrimeField& F, std::size_t r, std::size_t c, Rng& rng) {
    Matrix M(r, c);
    for (auto& x : M.a) x = F.uniform(rng);
    return M;
}

// all x in F_q^n with Ax = b, by full enumeration
std::set<Vec> solution_oracle(const PrimeField& F, const Matrix& A, const Vec& b) {
    std::set<Vec> out;
    Vec x(A.cols, 0);
    while (true) {
        if (mat_vec(F, A, x) == b) out.insert(x);
        std::size_t i = 0;
        while (i < A.cols && ++x[i] == F.q()) x[i++] = 0;
        if (i == A.cols) break;
    }
    return out;
}

std::set<Vec> collect_points(const PrimeField& F, const AffineSpace& S) {
    std::set<Vec> out;
    for_each_point(F, S, [&](const Vec& p) { out.insert(p); });
    return out;
}

}  // namespace

TEST_CASE("solve_affine on simple systems") {
    PrimeField F(7);
    SUBCASE("identity system has a unique point") {
        const Matrix I = Matrix::identity(3);
        const Vec b{1, 2, 3};
        const auto S = solve_affine(F, I, b);
        REQUIRE(S.has_value());
        CHECK(S->dim() == 0);
        CHECK(S->offset == b);
    }
    SUBCASE("zero system is the whole space") {
        const Matrix Z(1, 2);
        const Vec b{0};
        const auto S = solve_affine(F, Z, b);
        REQUIRE(S.has_value());
        CHECK(S->dim() == 2);
        CHECK(collect_points(F, *S).size() == 49);
    }
    SUBCASE("inconsistent system") {
        const Matrix Z(1, 2);
        const Vec b{3};
        CHECK_FALSE(solve_affine(F, Z, b).has_value());
    }
}

TEST_CASE("solve_affine equals exhaustive enumeration on random 3x5 systems") {
    PrimeField F(7);
    Rng rng(99);
    int full_rank_seen = 0;
    for (int it = 0; it < 10; ++it) {
        const Matrix A = random_matrix(F, 3, 5, rng);
        Vec x0(5);
        for (auto& c : x0) c = F.uniform(rng);
        const Vec b = mat_vec(F, A, x0);  // guaranteed consistent
        const auto S = solve_affine(F, A, b);
        REQUIRE(S.has_value());
        const auto expected = solution_oracle(F, A, b);
        CHECK(collect_points(F, *S) == expected);
        for_each_point(F, *S, [&](const Vec& p) { CHECK(mat_vec(F, A, p) == b); });
        Matrix cp = A;
        if (rref(F, cp).size() == 3) {
            ++full_rank_seen;
            CHECK(S->dim() == 2);
        }
    }
    CHECK(full_rank_seen > 0);
}

TEST_CASE("nullspace basis") {
    PrimeField F(7);
    Rng rng(5);
    for (int it = 0; it < 20; ++it) {
        const Matrix A = random_matrix(F, 4, 6, rng);
        const Matrix K = nullspace(F, A);
        // every basis column solves Ax = 0
        for (std::size_t j = 0; j < K.cols; ++j) {
            Vec col(K.rows);
            for (std::size_t i = 0; i < K.rows; ++i) col[i] = K.at(i, j);
            CHECK(mat_vec(F, A, col) == Vec(A.rows, 0));
        }
        // dimension count: rank + nullity = cols
        Matrix cp = A;
        CHECK(rref(F, cp).size() + K.cols == A.cols);
        // fast path agrees with column 0 of the full basis
        const Vec v = first_nullspace_vector(F, A);
        if (K.cols == 0) {
            CHECK(v.empty());
        } else {
            Vec col0(K.rows);
            for (std::size_t i = 0; i < K.rows; ++i) col0[i] = K.at(i, 0);
            CHECK(v == col0);
        }
    }
}

TEST_CASE("affine membership and column reduction") {
    PrimeField F(5);
    Rng rng(17);
    // build a space with deliberately dependent columns
    Matrix M(4, 3);
    for (std::size_t i = 0; i < 4; ++i) {
        M.at(i, 0) = F.uniform(rng);
        M.at(i, 1) = F.uniform(rng);
        M.at(i, 2) = F.add(M.at(i, 0), M.at(i, 1));  // col2 = col0 + col1
    }
    const Vec z{1, 2, 3, 4};
    const AffineSpace reduced = affine_column_reduce(F, M, z);
    CHECK(reduced.dim() <= 2);
    const auto pts = collect_points(F, reduced);
    const auto raw_pts = collect_points(F, AffineSpace{M, z});
    CHECK(pts == raw_pts);
    for (const auto& p : pts) CHECK(affine_contains(F, reduced, p));
    Vec outside = z;
    outside[0] = F.add(outside[0], 1);
    if (!pts.count(outside)) CHECK_FALSE(affine_contains(F, reduced, outside));
}
