// Command-line front end: parameter derivation, file-based encode/corrupt/
// decode, and the experiment suites. Exit code 0 when all assertions pass,
// 1 on an assertion failure (or a decode that returns bottom), 2 on a
// configuration error.

#include <CLI11.hpp>
#include <awtp/experiments.hpp>
#include <iostream>

using namespace awtp;

namespace {

struct ParamCli {
    std::string config;
    std::string q, u, v, N, R, rho_r, rho_w;
    bool strict = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config, "parameter JSON file");
        cmd->add_option("--q", q, "field modulus (prime, > N*u)");
        cmd->add_option("--u", u, "folding parameter");
        cmd->add_option("--v", v, "interpolation parameter");
        cmd->add_option("--N", N, "block length");
        cmd->add_option("--R", R, "rate, e.g. 1/30");
        cmd->add_option("--rho-r", rho_r, "read fraction, e.g. 1/8");
        cmd->add_option("--rho-w", rho_w, "write fraction, e.g. 1/2");
        cmd->add_flag("--strict", strict, "validate rho_w against the closed-form rate condition");
    }

    AwtpParams load() const {
        Json j;
        if (!config.empty()) j = load_json_file(config);
        if (!q.empty()) j["q"] = q;
        if (!u.empty()) j["u"] = u;
        if (!v.empty()) j["v"] = v;
        if (!N.empty()) j["N"] = N;
        if (!R.empty()) j["R"] = R;
        if (!rho_r.empty()) j["rho_r"] = rho_r;
        if (!rho_w.empty()) j["rho_w"] = rho_w;
        if (strict) j["validation"] = "strict";
        return params_from_json(j);
    }
};

void print_assertions(const Report& rep) {
    for (const auto& a : rep.assertions)
        std::cout << (a.pass ? "[PASS] " : "[FAIL] ") << a.name << (a.detail.empty() ? "" : " (" + a.detail + ")")
                  << "\n";
}

void write_report(const Report& rep, const std::string& out) {
    if (out.empty()) return;
    if (out.size() >= 4 && out.substr(out.size() - 4) == ".csv")
        save_text_file(out, rep.to_csv());
    else
        save_text_file(out, rep.to_json().dump(2) + "\n");
}

Rational parse_field(const Json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("experiment config: missing ") + key);
    const auto& v = j.at(key);
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw ConfigError(std::string("experiment config: bad value for ") + key);
}

std::uint64_t parse_u64(const Json& j, const char* key, std::optional<std::uint64_t> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(std::string("experiment config: missing ") + key);
    }
    const auto& v = j.at(key);
    if (v.is_string()) return std::stoull(v.get<std::string>());
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
    throw ConfigError(std::string("experiment config: bad value for ") + key);
}

int run_experiment(const std::string& mode, const std::string& config_path, std::optional<std::uint64_t> seed_cli,
                   std::optional<std::uint64_t> trials_cli, std::size_t threads, const std::string& out) {
    const Json cfg = load_json_file(config_path);
    const std::uint64_t seed = seed_cli ? *seed_cli : parse_u64(cfg, "seed", 1);
    const std::uint64_t trials = trials_cli ? *trials_cli : parse_u64(cfg, "trials", 100);

    Report rep;
    if (mode == "roundtrip" || mode == "reliability") {
        if (!cfg.contains("params")) throw ConfigError("experiment config: missing params");
        const AwtpParams P = params_from_json(cfg.at("params"));
        const bool keep = cfg.value("keep_trials", true);
        if (mode == "reliability") {
            rep = run_reliability(P, seed, trials, threads, keep);
        } else {
            StrategySpec spec;
            if (cfg.contains("strategy")) {
                spec.name = cfg.at("strategy").value("name", "random");
                spec.burst_start = cfg.at("strategy").value("burst_start", 0);
            }
            rep = run_roundtrip(P, {spec}, seed, trials, threads, keep);
        }
    } else if (mode == "secrecy") {
        SecrecyConfig sc;
        sc.q = parse_u64(cfg, "q");
        sc.u = parse_u64(cfg, "u");
        sc.N = parse_u64(cfg, "N");
        sc.read_set.clear();
        for (const auto& p : cfg.at("read_set")) sc.read_set.push_back(p.get<std::size_t>());
        sc.s1 = vec_from_json(cfg.at("message1"));
        sc.s2 = vec_from_json(cfg.at("message2"));
        if (cfg.contains("enum_cap")) sc.enum_cap = parse_u64(cfg, "enum_cap");
        rep = run_secrecy_exact(sc);
    } else if (mode == "amd") {
        rep = run_amd_exhaustive(parse_u64(cfg, "q"), parse_u64(cfg, "m"), parse_u64(cfg, "ell"));
    } else if (mode == "ses") {
        rep = run_ses_check(parse_u64(cfg, "q"), parse_u64(cfg, "v"), parse_u64(cfg, "n1"),
                            parse_u64(cfg, "subspaces", 100), seed);
    } else if (mode == "bounds") {
        BoundsConfig bc;
        if (cfg.contains("base")) {
            bc.q = parse_u64(cfg.at("base"), "q");
            bc.u = parse_u64(cfg.at("base"), "u");
            bc.v = parse_u64(cfg.at("base"), "v");
            bc.N = parse_u64(cfg.at("base"), "N");
        }
        if (!cfg.contains("grid")) throw ConfigError("bounds config: missing grid");
        for (const auto& row : cfg.at("grid"))
            bc.grid.emplace_back(parse_field(row, "rho_r"), parse_field(row, "rho_w"));
        if (cfg.contains("xi1")) {
            bc.xi1.clear();
            for (const auto& x : cfg.at("xi1")) bc.xi1.push_back(Rational::parse(x.get<std::string>()));
        }
        rep = run_bounds(bc);
    } else {
        throw ConfigError("unknown experiment mode: " + mode);
    }

    print_assertions(rep);
    std::cout << "aggregates: " << rep.aggregates.dump() << "\n";
    std::cout << "wall_clock_ms: " << rep.wall_ms << "\n";
    write_report(rep, out);
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adversarial-wiretap code toolkit"};
    app.require_subcommand(1);

    // --- params check | derive ---
    auto* params_cmd = app.add_subcommand("params", "validate or derive parameter sets");
    params_cmd->require_subcommand(1);
    ParamCli pc_check, pc_derive;
    auto* check_cmd = params_cmd->add_subcommand("check", "validate a parameter set");
    pc_check.attach(check_cmd);
    auto* derive_cmd = params_cmd->add_subcommand("derive", "derive and print the full parameter set");
    pc_derive.attach(derive_cmd);
    std::string derive_out;
    derive_cmd->add_option("--out", derive_out, "write the derived JSON here");

    // --- encode ---
    auto* encode_cmd = app.add_subcommand("encode", "encode a message file to a codeword file");
    ParamCli pc_encode;
    pc_encode.attach(encode_cmd);
    std::string enc_message, enc_coins, enc_out, enc_emit_coins, enc_format = "json";
    std::uint64_t enc_seed = 1;
    encode_cmd->add_option("--message", enc_message, "message JSON file (array of decimal strings)")->required();
    encode_cmd->add_option("--coins", enc_coins, "coins JSON file; omitted = draw from --seed");
    encode_cmd->add_option("--seed", enc_seed, "seed for coin generation");
    encode_cmd->add_option("--out", enc_out, "codeword output file")->required();
    encode_cmd->add_option("--format", enc_format, "json or bin")->check(CLI::IsMember({"json", "bin"}));
    encode_cmd->add_option("--emit-coins", enc_emit_coins, "write the coins used to this file");

    // --- corrupt ---
    auto* corrupt_cmd = app.add_subcommand("corrupt", "run a codeword through the adversarial channel");
    ParamCli pc_corrupt;
    pc_corrupt.attach(corrupt_cmd);
    std::string cor_in, cor_out, cor_transcript, cor_strategy = "random", cor_format = "json";
    std::uint64_t cor_seed = 1, cor_burst_start = 0;
    corrupt_cmd->add_option("--in", cor_in, "codeword input file")->required();
    corrupt_cmd->add_option("--out", cor_out, "corrupted codeword output file")->required();
    corrupt_cmd->add_option("--strategy", cor_strategy, "random | burst | informed | noop");
    corrupt_cmd->add_option("--burst-start", cor_burst_start, "first position of the burst window");
    corrupt_cmd->add_option("--seed", cor_seed, "adversary randomness seed");
    corrupt_cmd->add_option("--transcript", cor_transcript, "write the channel transcript here");
    corrupt_cmd->add_option("--format", cor_format, "json or bin")->check(CLI::IsMember({"json", "bin"}));

    // --- decode ---
    auto* decode_cmd = app.add_subcommand("decode", "decode a received word");
    ParamCli pc_decode;
    pc_decode.attach(decode_cmd);
    std::string dec_in, dec_out, dec_format = "json";
    decode_cmd->add_option("--in", dec_in, "received word input file")->required();
    decode_cmd->add_option("--out", dec_out, "write the decode result JSON here");
    decode_cmd->add_option("--format", dec_format, "json or bin")->check(CLI::IsMember({"json", "bin"}));

    // --- experiment ---
    auto* exp_cmd = app.add_subcommand("experiment", "run an experiment suite");
    std::string exp_mode, exp_config, exp_out;
    std::uint64_t exp_seed = 0, exp_trials = 0, exp_threads = 0;
    bool exp_seed_set = false, exp_trials_set = false;
    exp_cmd->add_option("mode", exp_mode, "roundtrip | reliability | secrecy | amd | ses | bounds")->required();
    exp_cmd->add_option("--config", exp_config, "experiment config JSON")->required();
    exp_cmd->add_option("--seed", exp_seed, "master seed (overrides config)")->each([&](const std::string&) {
        exp_seed_set = true;
    });
    exp_cmd->add_option("--trials", exp_trials, "trial count (overrides config)")->each([&](const std::string&) {
        exp_trials_set = true;
    });
    exp_cmd->add_option("--threads", exp_threads, "worker threads (0 = hardware)");
    exp_cmd->add_option("--out", exp_out, "report output file (.json or .csv)");

    try {
        app.parse(argc, argv);

        if (check_cmd->parsed()) {
            const AwtpParams P = pc_check.load();
            std::cout << params_to_json(P).dump(2) << "\n";
            return 0;
        }
        if (derive_cmd->parsed()) {
            const AwtpParams P = pc_derive.load();
            const Json j = params_to_json(P);
            if (!derive_out.empty()) save_text_file(derive_out, j.dump(2) + "\n");
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (encode_cmd->parsed()) {
            const AwtpParams P = pc_encode.load();
            const Vec msg = vec_from_json(load_json_file(enc_message));
            EncodingCoins coins;
            if (!enc_coins.empty()) {
                coins = coins_from_json(load_json_file(enc_coins));
            } else {
                Rng rng(enc_seed ^ kCoinStream);
                coins = awtp_random_coins(P, rng);
            }
            const FrsCodeword c = awtp_encode(P, msg, coins);
            if (enc_format == "bin")
                save_text_file(enc_out, codeword_to_binary(c));
            else
                save_text_file(enc_out, codeword_to_json(c).dump() + "\n");
            if (!enc_emit_coins.empty()) save_text_file(enc_emit_coins, coins_to_json(coins).dump() + "\n");
            std::cout << "encoded " << msg.size() << " symbols into " << P.N << " blocks\n";
            return 0;
        }
        if (corrupt_cmd->parsed()) {
            const AwtpParams P = pc_corrupt.load();
            std::ifstream in(cor_in, std::ios::binary);
            if (!in) throw ConfigError("cannot open file: " + cor_in);
            FrsCodeword c;
            if (cor_format == "bin") {
                std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
                c = codeword_from_binary(bytes, P.N, P.u);
            } else {
                Json j;
                in >> j;
                c = codeword_from_json(j, P.N, P.u);
            }
            const CodewordShape shape{P.N, P.u, P.F.q()};
            const ChannelBudget budget{P.reads_max, P.writes_max};
            StrategySpec spec{cor_strategy, static_cast<std::size_t>(cor_burst_start)};
            auto strat = make_strategy(spec, shape, budget);
            Rng rng(cor_seed ^ kAdvStream);
            const ChannelResult res = channel_run(P.F, c, *strat, budget, rng);
            if (cor_format == "bin")
                save_text_file(cor_out, codeword_to_binary(res.y));
            else
                save_text_file(cor_out, codeword_to_json(res.y).dump() + "\n");
            if (!cor_transcript.empty())
                save_text_file(cor_transcript, transcript_to_json(res.transcript).dump(2) + "\n");
            std::cout << "corrupted " << res.transcript.write_set.size() << " of " << P.N << " blocks, read "
                      << res.transcript.read_set.size() << "\n";
            return res.transcript.fault == ChannelFault::none ? 0 : 1;
        }
        if (decode_cmd->parsed()) {
            const AwtpParams P = pc_decode.load();
            std::ifstream in(dec_in, std::ios::binary);
            if (!in) throw ConfigError("cannot open file: " + dec_in);
            FrsCodeword y;
            if (dec_format == "bin") {
                std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
                y = codeword_from_binary(bytes, P.N, P.u);
            } else {
                Json j;
                in >> j;
                y = codeword_from_json(j, P.N, P.u);
            }
            DecodeTrace trace;
            const auto got = awtp_decode(P, y, &trace);
            Json out;
            out["result"] = got ? "message" : "bottom";
            if (got) out["message"] = vec_to_json(*got);
            if (!got && !trace.failure.empty()) out["reason"] = trace.failure;
            out["candidates"] = trace.candidates.size();
            if (!dec_out.empty()) save_text_file(dec_out, out.dump(2) + "\n");
            std::cout << out.dump(2) << "\n";
            return got ? 0 : 1;
        }
        if (exp_cmd->parsed()) {
            return run_experiment(exp_mode, exp_config,
                                  exp_seed_set ? std::optional<std::uint64_t>(exp_seed) : std::nullopt,
                                  exp_trials_set ? std::optional<std::uint64_t>(exp_trials) : std::nullopt,
                                  exp_threads, exp_out);
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParamError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
