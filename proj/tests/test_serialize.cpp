#include <doctest.h>

#include <awtp/rng.hpp>
#include <awtp/serialize.hpp>

using namespace awtp;

TEST_CASE("vectors and codewords as decimal-string JSON") {
    const Vec v{0, 7, 240};
    CHECK(vec_to_json(v).dump() == R"(["0","7","240"])");
    CHECK(vec_from_json(vec_to_json(v)) == v);

    const FrsCodeword c{{1, 3}, {2, 6}, {4, 5}};
    const Json j = codeword_to_json(c);
    CHECK(j.dump() == R"([["1","3"],["2","6"],["4","5"]])");
    CHECK(codeword_from_json(j, 3, 2) == c);
    CHECK_THROWS_AS(codeword_from_json(j, 4, 2), ConfigError);
    CHECK_THROWS_AS(codeword_from_json(j, 3, 3), ConfigError);
}

TEST_CASE("binary codeword format: little-endian words, row-major") {
    Rng rng(6);
    PrimeField F(241);
    FrsCodeword c(4, FrsSymbol(3));
    for (auto& sym : c)
        for (auto& x : sym) x = F.uniform(rng);
    const std::string bytes = codeword_to_binary(c);
    CHECK(bytes.size() == 4 * 3 * 8);
    CHECK(codeword_from_binary(bytes, 4, 3) == c);
    // explicit little-endian check on a known word
    FrsCodeword one{{0x0102030405060708ULL}};
    const std::string b = codeword_to_binary(one);
    CHECK(static_cast<unsigned char>(b[0]) == 0x08);
    CHECK(static_cast<unsigned char>(b[7]) == 0x01);
    CHECK_THROWS_AS(codeword_from_binary(bytes.substr(1), 4, 3), ConfigError);
}

TEST_CASE("parameter sets round trip through JSON") {
    const auto P = awtp_derive_params(241, 30, 3, 8, Rational(1, 30), Rational(1, 8), Rational(1, 2));
    const Json j = params_to_json(P);
    CHECK(j.at("q") == "241");
    CHECK(j.at("R") == "1/30");
    CHECK(j.at("derived").at("k") == "66");
    CHECK(j.at("derived").at("agreement_threshold") == "211/56");

    const auto P2 = params_from_json(j);
    CHECK(P2.k == P.k);
    CHECK(P2.msg_len == P.msg_len);
    CHECK(P2.amd.ext.modulus() == P.amd.ext.modulus());

    Json bad = j;
    bad.erase("q");
    CHECK_THROWS_AS(params_from_json(bad), ConfigError);
}

TEST_CASE("coins and transcripts") {
    const auto P = awtp_derive_params(67, 16, 2, 4, Rational(1, 64), Rational(0), Rational(1, 4));
    Rng rng(11);
    const auto coins = awtp_random_coins(P, rng);
    const auto back = coins_from_json(coins_to_json(coins));
    CHECK(back.r_amd == coins.r_amd);
    CHECK(back.a == coins.a);

    ChannelTranscript tr;
    tr.actions.push_back(TranscriptEntry{true, 2, Vec{1, 2}});
    tr.actions.push_back(TranscriptEntry{false, 5, Vec{0, 3}});
    tr.read_set = {2};
    tr.write_set = {5};
    const Json j = transcript_to_json(tr);
    CHECK(j.at("actions").size() == 2);
    CHECK(j.at("actions")[0].at("type") == "read");
    CHECK(j.at("actions")[1].at("delta") == Json::array({"0", "3"}));
    CHECK(j.at("fault") == "none");
}
