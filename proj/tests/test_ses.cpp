#include <doctest.h>

#include <algorithm>
#include <awtp/rng.hpp>
#include <awtp/subspace_evasive.hpp>
#include <numeric>
#include <set>

using namespace awtp;

namespace {

// Variety points of a single block by raw enumeration of all q^w tuples,
// checking the defining equations directly. Independent of ses_encode and
// ses_intersect.
std::vector<Vec> block_variety_oracle(const SesParams& P) {
    std::vector<Vec> pts;
    Vec x(P.w, 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < P.v && ok; ++i) {
            fe acc = 0;
            for (std::size_t j = 0; j < P.w; ++j)
                acc = P.F.add(acc, P.F.mul(P.A.at(i, j), P.F.pow(x[j], P.degrees[j])));
            ok = acc == 0;
        }
        if (ok) pts.push_back(x);
        std::size_t i = 0;
        while (i < P.w && ++x[i] == P.F.q()) x[i++] = 0;
        if (i == P.w) break;
    }
    return pts;
}

// S cap H by filtering the enumerated variety against affine membership.
std::vector<Vec> intersect_oracle(const SesParams& P, const std::vector<Vec>& variety, const AffineSpace& H) {
    std::vector<Vec> out;
    std::vector<std::size_t> idx(P.blocks, 0);
    while (true) {
        Vec point;
        point.reserve(P.n);
        for (std::size_t b = 0; b < P.blocks; ++b)
            point.insert(point.end(), variety[idx[b]].begin(), variety[idx[b]].end());
        if (affine_contains(P.F, H, point)) out.push_back(point);
        std::size_t b = 0;
        while (b < P.blocks && ++idx[b] == variety.size()) idx[b++] = 0;
        if (b == P.blocks) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

AffineSpace random_affine(const PrimeField& F, std::size_t ambient, std::size_t dim, Rng& rng) {
    Matrix M(ambient, dim);
    for (auto& x : M.a) x = F.uniform(rng);
    Vec z(ambient);
    for (auto& x : z) x = F.uniform(rng);
    return affine_column_reduce(F, M, std::move(z));
}

}  // namespace

TEST_CASE("setup at q=11, v=2") {
    PrimeField F(11);
    const auto P = ses_setup(F, 2, 2);
    CHECK(P.w == 4);
    CHECK(P.blocks == 1);
    CHECK(P.n == 4);

    // degrees distinct, descending, >= 2, with >= v of them coprime to q-1
    for (std::size_t j = 0; j + 1 < P.w; ++j) CHECK(P.degrees[j] > P.degrees[j + 1]);
    CHECK(P.degrees.back() >= 2);
    std::size_t coprime = 0;
    for (const auto d : P.degrees)
        if (std::gcd(d, static_cast<std::uint64_t>(10)) == 1) ++coprime;
    CHECK(coprime >= 2);
    CHECK(P.J.size() == 2);
    for (const auto j : P.J) CHECK(std::gcd(P.degrees[j], static_cast<std::uint64_t>(10)) == 1);

    SUBCASE("strong regularity confirmed by direct minor enumeration") {
        // 1x1 minors
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(P.A.at(i, j) != 0);
        // 2x2 minors
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a + 1; b < 4; ++b) {
                const fe det = F.sub(F.mul(P.A.at(0, a), P.A.at(1, b)), F.mul(P.A.at(0, b), P.A.at(1, a)));
                CHECK(det != 0);
            }
    }

    SUBCASE("parameter errors") {
        CHECK_THROWS_AS(ses_setup(F, 2, 3), ParamError);           // (w-v) does not divide n1
        CHECK_THROWS_AS(ses_setup(PrimeField(3), 2, 2), ParamError);  // q <= w
        CHECK_THROWS_AS(ses_setup(F, 1, 2), ParamError);
    }
}

TEST_CASE("encode is a bijection onto the block variety (exhaustive at q=11, v=2)") {
    PrimeField F(11);
    const auto P = ses_setup(F, 2, 2);
    const auto variety = block_variety_oracle(P);
    CHECK(variety.size() == 121);  // q^{w-v}, the moreover clause

    std::set<Vec> images;
    Vec in(2);
    for (fe a = 0; a < 11; ++a)
        for (fe b = 0; b < 11; ++b) {
            in[0] = a;
            in[1] = b;
            const Vec s = ses_encode(P, in);
            CHECK(ses_contains(P, s));
            CHECK(ses_inverse(P, s) == in);
            images.insert(s);
        }
    CHECK(images.size() == 121);
    // image set equals the enumerated variety
    std::set<Vec> vset(variety.begin(), variety.end());
    CHECK(images == vset);
}

TEST_CASE("encode places inputs on the coJ coordinates unchanged") {
    PrimeField F(11);
    const auto P = ses_setup(F, 2, 4);  // two blocks
    Rng rng(4);
    for (int it = 0; it < 50; ++it) {
        Vec in(4);
        for (auto& x : in) x = F.uniform(rng);
        const Vec s = ses_encode(P, in);
        for (std::size_t blk = 0; blk < 2; ++blk)
            for (std::size_t t = 0; t < 2; ++t) CHECK(s[blk * 4 + P.coJ[t]] == in[blk * 2 + t]);
        CHECK(ses_inverse(P, s) == in);
    }
    CHECK(ses_encode(P, Vec(4, 0)) == Vec(8, 0));  // zero maps to zero
    CHECK(ses_inverse(P, Vec(8, 0)) == Vec(4, 0));
    CHECK_THROWS_AS(ses_encode(P, Vec(3, 0)), ParamError);
}

TEST_CASE("membership oracle") {
    PrimeField F(11);
    const auto P = ses_setup(F, 2, 2);
    Rng rng(8);
    CHECK(ses_contains(P, Vec(4, 0)));
    for (int it = 0; it < 100; ++it) {
        Vec in{F.uniform(rng), F.uniform(rng)};
        Vec s = ses_encode(P, in);
        CHECK(ses_contains(P, s));
        // single-coordinate perturbation: recheck against the raw equations
        const std::size_t pos = rng.below(4);
        s[pos] = F.add(s[pos], 1);
        CHECK(ses_contains(P, s) == P.block_on_variety(s));
    }
}

TEST_CASE("intersection equals the exhaustive oracle") {
    PrimeField F(11);
    const auto P = ses_setup(F, 2, 2);
    const auto variety = block_variety_oracle(P);
    Rng rng(21);

    SUBCASE("point spaces") {
        const Vec member = ses_encode(P, Vec{3, 7});
        AffineSpace pt{Matrix(4, 0), member};
        const auto got = ses_intersect(P, pt);
        REQUIRE(got.size() == 1);
        CHECK(got[0] == member);

        Vec outsider = member;
        outsider[0] = F.add(outsider[0], 1);
        if (!ses_contains(P, outsider)) {
            AffineSpace pt2{Matrix(4, 0), outsider};
            CHECK(ses_intersect(P, pt2).empty());
        }
    }

    SUBCASE("random subspaces of each dimension") {
        for (std::size_t dim = 0; dim <= 2; ++dim) {
            for (int it = 0; it < 40; ++it) {
                const auto H = random_affine(F, 4, dim, rng);
                const auto got = ses_intersect(P, H);
                const auto expected = intersect_oracle(P, variety, H);
                CHECK(got == expected);
                CHECK(got.size() <= P.list_bound());
            }
        }
    }

    SUBCASE("dimension above v is rejected") {
        const auto H = random_affine(F, 4, 3, rng);
        if (H.dim() > 2) CHECK_THROWS_AS(ses_intersect(P, H), DimensionError);
    }
}

TEST_CASE("multi-block intersection equals the oracle") {
    PrimeField F(11);
    const auto P = ses_setup(F, 2, 4);  // blocks = 2, n = 8
    const auto variety = block_variety_oracle(P);
    Rng rng(33);
    for (std::size_t dim = 0; dim <= 2; ++dim) {
        for (int it = 0; it < 15; ++it) {
            const auto H = random_affine(F, 8, dim, rng);
            CHECK(ses_intersect(P, H) == intersect_oracle(P, variety, H));
        }
    }
    // subspaces passing through a known member exercise nonempty results
    for (int it = 0; it < 15; ++it) {
        Vec in(4);
        for (auto& x : in) x = F.uniform(rng);
        const Vec member = ses_encode(P, in);
        Matrix M(8, 2);
        for (auto& x : M.a) x = F.uniform(rng);
        Vec z = member;
        // offset adjusted so that member = M*(1,1) + z
        for (std::size_t i = 0; i < 8; ++i) z[i] = F.sub(z[i], F.add(M.at(i, 0), M.at(i, 1)));
        const auto H = affine_column_reduce(F, M, std::move(z));
        const auto got = ses_intersect(P, H);
        CHECK(std::find(got.begin(), got.end(), member) != got.end());
        CHECK(got == intersect_oracle(P, variety, H));
    }
}
