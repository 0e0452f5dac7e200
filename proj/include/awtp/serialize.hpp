#pragma once

#include <fstream>
#include <json.hpp>
#include <string>

#include "awtp_code.hpp"
#include "channel.hpp"

namespace awtp {

using Json = nlohmann::json;

// All field values are serialized as decimal strings; rationals as "p" or
// "p/q". No numeric JSON types on the wire.

inline Json vec_to_json(const Vec& v) {
    Json a = Json::array();
    for (const fe x : v) a.push_back(std::to_string(x));
    return a;
}

inline Vec vec_from_json(const Json& a) {
    if (!a.is_array()) throw ConfigError("expected a JSON array of decimal strings");
    Vec v;
    v.reserve(a.size());
    for (const auto& e : a) {
        if (e.is_string())
            v.push_back(std::stoull(e.get<std::string>()));
        else if (e.is_number_unsigned())
            v.push_back(e.get<std::uint64_t>());
        else
            throw ConfigError("expected a decimal string entry");
    }
    return v;
}

inline Json codeword_to_json(const FrsCodeword& c) {
    Json a = Json::array();
    for (const auto& sym : c) a.push_back(vec_to_json(sym));
    return a;
}

inline FrsCodeword codeword_from_json(const Json& a, std::size_t N, std::size_t u) {
    if (!a.is_array() || a.size() != N) throw ConfigError("codeword must be an array of N symbols");
    FrsCodeword c;
    c.reserve(N);
    for (const auto& e : a) {
        Vec sym = vec_from_json(e);
        if (sym.size() != u) throw ConfigError("codeword symbol must have u entries");
        c.push_back(std::move(sym));
    }
    return c;
}

/// Binary codeword format: N*u little-endian 8-byte words, row-major.
inline std::string codeword_to_binary(const FrsCodeword& c) {
    std::string out;
    out.reserve(c.size() * (c.empty() ? 0 : c[0].size()) * 8);
    for (const auto& sym : c)
        for (const fe x : sym)
            for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((x >> (8 * b)) & 0xff));
    return out;
}

inline FrsCodeword codeword_from_binary(const std::string& bytes, std::size_t N, std::size_t u) {
    if (bytes.size() != N * u * 8) throw ConfigError("binary codeword has wrong size");
    FrsCodeword c(N, FrsSymbol(u));
    std::size_t off = 0;
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t t = 0; t < u; ++t) {
            fe x = 0;
            for (int b = 0; b < 8; ++b) x |= static_cast<fe>(static_cast<unsigned char>(bytes[off++])) << (8 * b);
            c[j][t] = x;
        }
    return c;
}

/// The seven base parameters, as given.
inline Json params_base_to_json(const AwtpParams& P) {
    Json j;
    j["q"] = std::to_string(P.F.q());
    j["u"] = std::to_string(P.u);
    j["v"] = std::to_string(P.v);
    j["N"] = std::to_string(P.N);
    j["R"] = P.R.str();
    j["rho_r"] = P.rho_r.str();
    j["rho_w"] = P.rho_w.str();
    j["validation"] = P.mode == RateCheck::strict ? "strict" : "permissive";
    return j;
}

/// Base parameters plus everything derived from them, for audit trails.
inline Json params_to_json(const AwtpParams& P) {
    Json j = params_base_to_json(P);
    j["derived"]["ell"] = std::to_string(P.ell);
    j["derived"]["w"] = std::to_string(P.w);
    j["derived"]["b"] = std::to_string(P.b);
    j["derived"]["n1"] = std::to_string(P.n1);
    j["derived"]["n"] = std::to_string(P.n);
    j["derived"]["k"] = std::to_string(P.k);
    j["derived"]["message_len"] = std::to_string(P.msg_len);
    j["derived"]["reads_max"] = std::to_string(P.reads_max);
    j["derived"]["writes_max"] = std::to_string(P.writes_max);
    j["derived"]["coin_len"] = std::to_string(P.coin_len);
    j["derived"]["gamma"] = std::to_string(P.frs.gamma);
    j["derived"]["agreement_threshold"] = frs_agreement_threshold(P.frs).str();
    j["derived"]["ext_modulus"] = vec_to_json(P.amd.ext.modulus());
    {
        Json d = Json::array();
        for (const auto deg : P.ses.degrees) d.push_back(std::to_string(deg));
        j["derived"]["ses_degrees"] = d;
        Json jj = Json::array();
        for (const auto idx : P.ses.J) jj.push_back(std::to_string(idx));
        j["derived"]["ses_J"] = jj;
        j["derived"]["ses_d1"] = std::to_string(P.ses.d1);
        j["derived"]["ses_list_bound"] = std::to_string(P.ses.list_bound());
    }
    return j;
}

inline AwtpParams params_from_json(const Json& j) {
    const auto get = [&](const char* key) -> std::string {
        if (!j.contains(key)) throw ConfigError(std::string("missing parameter field: ") + key);
        const auto& v = j.at(key);
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        throw ConfigError(std::string("parameter field must be a decimal string: ") + key);
    };
    RateCheck mode = RateCheck::permissive;
    if (j.contains("validation")) {
        const std::string m = j.at("validation").get<std::string>();
        if (m == "strict")
            mode = RateCheck::strict;
        else if (m != "permissive")
            throw ConfigError("validation must be strict or permissive");
    }
    try {
        return awtp_derive_params(std::stoull(get("q")), std::stoull(get("u")), std::stoull(get("v")),
                                  std::stoull(get("N")), Rational::parse(get("R")), Rational::parse(get("rho_r")),
                                  Rational::parse(get("rho_w")), mode);
    } catch (const std::invalid_argument&) {
        throw ConfigError("malformed numeric parameter field");
    }
}

inline Json coins_to_json(const EncodingCoins& c) {
    Json j;
    j["r_amd"] = vec_to_json(c.r_amd);
    j["a"] = vec_to_json(c.a);
    return j;
}

inline EncodingCoins coins_from_json(const Json& j) {
    EncodingCoins c;
    c.r_amd = vec_from_json(j.at("r_amd"));
    c.a = vec_from_json(j.at("a"));
    return c;
}

inline Json transcript_to_json(const ChannelTranscript& tr) {
    Json j;
    j["actions"] = Json::array();
    for (const auto& e : tr.actions) {
        Json a;
        a["type"] = e.is_read ? "read" : "write";
        a["pos"] = e.pos;
        a[e.is_read ? "symbol" : "delta"] = vec_to_json(e.data);
        j["actions"].push_back(a);
    }
    j["S_r"] = Json::array();
    for (const auto p : tr.read_set) j["S_r"].push_back(p);
    j["S_w"] = Json::array();
    for (const auto p : tr.write_set) j["S_w"].push_back(p);
    j["fault"] = fault_name(tr.fault);
    if (tr.fault != ChannelFault::none) j["fault_detail"] = tr.fault_detail;
    return j;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("cannot parse JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << text;
}

}  // namespace awtp
