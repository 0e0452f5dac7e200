#include <doctest.h>

#include <awtp/amd.hpp>
#include <awtp/rng.hpp>

using namespace awtp;

namespace {

// F_q with m=1: the extension modulus is X, elements are single coefficients
AmdParams prime_amd(fe q, std::uint64_t ell) { return AmdParams(ExtField(PrimeField(q), 1), ell); }

ExtField::Element el(const AmdParams& P, fe v) { return P.ext.phi(Vec{v}); }

}  // namespace

TEST_CASE("tag formula on hand-computed values") {
    SUBCASE("q=5, ell=1: f(2, 1) = 1^3 + 2*1 = 3") {
        const auto P = prime_amd(5, 1);
        const std::vector<ExtField::Element> x{el(P, 2)};
        CHECK(amd_tag(P, x, el(P, 1)) == el(P, 3));
    }
    SUBCASE("all-zero input gives zero tag") {
        const auto P = prime_amd(7, 2);
        const std::vector<ExtField::Element> x{el(P, 0), el(P, 0)};
        CHECK(amd_tag(P, x, el(P, 0)) == el(P, 0));
    }
    SUBCASE("q=5, ell=2: f((1,1), 2) = 2^4 + 2 + 4 = 22 = 2 mod 5") {
        const auto P = prime_amd(5, 2);
        const std::vector<ExtField::Element> x{el(P, 1), el(P, 1)};
        CHECK(amd_tag(P, x, el(P, 2)) == el(P, 2));
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(prime_amd(5, 3), ParamError);  // ell+2 = 5 divisible by q
    CHECK_THROWS_AS(prime_amd(7, 0), ParamError);
    CHECK_NOTHROW(prime_amd(5, 2));
    CHECK(prime_amd(5, 2).serialized_len() == 4);
    CHECK(AmdParams(ExtField(PrimeField(5), 2), 1).serialized_len() == 6);
}

TEST_CASE("verify accepts exactly the tagged codewords") {
    const auto P = prime_amd(5, 1);
    const AmdCodeword good{{el(P, 2)}, el(P, 1), el(P, 3)};
    const auto got = amd_verify(P, good);
    REQUIRE(got.has_value());
    CHECK((*got)[0] == el(P, 2));

    const AmdCodeword bad{{el(P, 3)}, el(P, 1), el(P, 3)};  // tag should be 1+3 = 4
    CHECK_FALSE(amd_verify(P, bad).has_value());
}

TEST_CASE("encode/verify round trip, deterministic given coins") {
    const AmdParams P(ExtField(PrimeField(7), 2), 3);
    Rng rng(123);
    for (int it = 0; it < 50; ++it) {
        std::vector<ExtField::Element> x;
        for (int i = 0; i < 3; ++i) x.push_back(P.ext.uniform(rng));
        const auto c = amd_encode(P, x, rng);
        const auto back = amd_verify(P, c);
        REQUIRE(back.has_value());
        CHECK(*back == x);
    }

    std::vector<ExtField::Element> x{P.ext.phi(Vec{3, 4}), P.ext.phi(Vec{0, 1}), P.ext.phi(Vec{6, 6})};
    Rng r1(9), r2(9);
    const auto c1 = amd_encode(P, x, r1);
    const auto c2 = amd_encode(P, x, r2);
    CHECK(c1.r == c2.r);
    CHECK(c1.t == c2.t);
}

// Exhaustive security check at q=5, m=1, ell=1: for every message x and
// every nonzero offset (dx, dr, dt), the number of r values for which
// (x+dx, r+dr, t+dt) verifies is at most ell+1 = 2, i.e. probability 2/5.
// Applying the offset never needs the codeword contents, only the tag table.
TEST_CASE("offset attacks pass with probability at most (ell+1)/q^m") {
    const auto P = prime_amd(5, 1);
    const PrimeField& F = P.ext.base();
    const fe q = 5;

    fe tag[5][5];
    for (fe x = 0; x < q; ++x)
        for (fe r = 0; r < q; ++r) {
            const std::vector<ExtField::Element> xs{el(P, x)};
            tag[x][r] = P.ext.phi_inv(amd_tag(P, xs, el(P, r)))[0];
        }

    std::uint64_t worst = 0;
    for (fe x = 0; x < q; ++x)
        for (fe dx = 0; dx < q; ++dx)
            for (fe dr = 0; dr < q; ++dr)
                for (fe dt = 0; dt < q; ++dt) {
                    if (dx == 0 && dr == 0 && dt == 0) continue;
                    std::uint64_t pass = 0;
                    for (fe r = 0; r < q; ++r)
                        if (tag[F.add(x, dx)][F.add(r, dr)] == F.add(tag[x][r], dt)) ++pass;
                    worst = std::max(worst, pass);
                }
    CHECK(worst <= 2);
}
