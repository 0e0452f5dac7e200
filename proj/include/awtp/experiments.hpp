#pragma once

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include "serialize.hpp"
#include "strategies.hpp"

namespace awtp {

// Stream tags xored into the per-trial seed so the sender's coins and the
// adversary's randomness are independent streams. Reports echo the scheme.
inline constexpr std::uint64_t kCoinStream = 0x434f494e53ULL;  // "COINS"
inline constexpr std::uint64_t kAdvStream = 0x41445653ULL;     // "ADVS"
inline constexpr const char* kSeedScheme =
    "trial_seed = splitmix64(splitmix64(master) ^ (trial+1)); coins = Rng(trial_seed ^ 0x434f494e53); "
    "adversary = Rng(trial_seed ^ 0x41445653)";

struct Assertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string mode;
    Json resolved;  // full parameter echo: every report carries its audit trail
    Json aggregates;
    Json trials = Json::array();
    std::vector<Assertion> assertions;
    double wall_ms = 0;

    bool all_pass() const {
        for (const auto& a : assertions)
            if (!a.pass) return false;
        return true;
    }

    void require(const std::string& name, bool pass, const std::string& detail = "") {
        assertions.push_back(Assertion{name, pass, detail});
    }

    Json to_json() const {
        Json j;
        j["mode"] = mode;
        j["resolved"] = resolved;
        j["aggregates"] = aggregates;
        j["assertions"] = Json::array();
        for (const auto& a : assertions) {
            Json ja;
            ja["name"] = a.name;
            ja["pass"] = a.pass;
            if (!a.detail.empty()) ja["detail"] = a.detail;
            j["assertions"].push_back(ja);
        }
        j["trials"] = trials;
        j["wall_clock_ms"] = wall_ms;
        j["all_pass"] = all_pass();
        return j;
    }

    /// One CSV row per trial; columns are the union of the per-trial keys.
    std::string to_csv() const {
        std::vector<std::string> cols;
        for (const auto& t : trials)
            for (auto it = t.begin(); it != t.end(); ++it)
                if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
        std::string out;
        for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
        out += "\n";
        for (const auto& t : trials) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (i) out += ",";
                if (t.contains(cols[i])) {
                    const auto& v = t.at(cols[i]);
                    out += v.is_string() ? v.get<std::string>() : v.dump();
                }
            }
            out += "\n";
        }
        return out;
    }
};

class Stopwatch {
   public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_;
};

/// Order-independent trial execution across a small thread pool; results go
/// into per-index slots so reports stay deterministic.
inline void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        std::size_t i;
        while (!failed.load(std::memory_order_relaxed) && (i = next.fetch_add(1)) < n) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// roundtrip / reliability
// ---------------------------------------------------------------------------

/// encode -> adversarial channel -> decode, one strategy spec per trial
/// (cycled). Checks per trial, with access to the ground truth: the decoder
/// output, that the true polynomial lies in the list space, and that the
/// true evasive-set element survives the pruning.
inline Report run_roundtrip(const AwtpParams& P, const std::vector<StrategySpec>& specs, std::uint64_t seed,
                            std::size_t trials, std::size_t threads = 0, bool keep_trials = true) {
    Report rep;
    rep.mode = specs.size() == 1 ? "roundtrip" : "reliability";
    rep.resolved["params"] = params_to_json(P);
    rep.resolved["seed"] = seed;
    rep.resolved["trials"] = trials;
    rep.resolved["seed_scheme"] = kSeedScheme;
    {
        Json s = Json::array();
        for (const auto& sp : specs) s.push_back(sp.name);
        rep.resolved["strategies"] = s;
    }

    struct Trial {
        std::string strategy;
        std::string outcome;  // ok | bottom | incorrect | fault
        std::string fault;
        std::size_t reads = 0, writes = 0;
        bool truth_in_space = false;
        bool truth_in_candidates = false;
    };
    std::vector<Trial> results(trials);

    const CodewordShape shape{P.N, P.u, P.F.q()};
    const ChannelBudget budget{P.reads_max, P.writes_max};
    Stopwatch sw;

    parallel_for(trials, threads, [&](std::size_t t) {
        Trial& out = results[t];
        const std::uint64_t ts = derive_seed(seed, t);
        Rng coins_rng(ts ^ kCoinStream);
        Rng adv_rng(ts ^ kAdvStream);

        Vec m(P.msg_len);
        for (auto& x : m) x = P.F.uniform(coins_rng);
        const EncodingCoins coins = awtp_random_coins(P, coins_rng);
        const FrsCodeword c = awtp_encode(P, m, coins);

        StrategySpec spec = specs[t % specs.size()];
        if (spec.name == "burst") spec.burst_start = adv_rng.below(P.N);
        out.strategy = spec.name;
        auto strat = make_strategy(spec, shape, budget);
        const ChannelResult res = channel_run(P.F, c, *strat, budget, adv_rng);
        out.reads = res.transcript.read_set.size();
        out.writes = res.transcript.write_set.size();
        if (res.transcript.fault != ChannelFault::none) {
            out.outcome = "fault";
            out.fault = fault_name(res.transcript.fault);
            return;
        }

        DecodeTrace trace;
        const auto got = awtp_decode(P, res.y, &trace);
        if (!got)
            out.outcome = "bottom";
        else if (*got == m)
            out.outcome = "ok";
        else
            out.outcome = "incorrect";

        // ground-truth re-assertions
        Vec f = awtp_encode_coefficients(P, m, coins);
        if (trace.message_space) out.truth_in_space = affine_contains(P.F, *trace.message_space, f);
        const Vec s_true(f.begin(), f.begin() + static_cast<long>(P.n));
        out.truth_in_candidates =
            std::find(trace.candidates.begin(), trace.candidates.end(), s_true) != trace.candidates.end();
    });

    std::size_t ok = 0, bottom = 0, incorrect = 0, fault = 0, truth_space = 0, truth_cand = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const Trial& r = results[t];
        ok += r.outcome == "ok";
        bottom += r.outcome == "bottom";
        incorrect += r.outcome == "incorrect";
        fault += r.outcome == "fault";
        truth_space += r.truth_in_space;
        truth_cand += r.truth_in_candidates;
        if (keep_trials) {
            Json jt;
            jt["trial"] = t;
            jt["strategy"] = r.strategy;
            jt["outcome"] = r.outcome;
            if (!r.fault.empty()) jt["fault"] = r.fault;
            jt["reads"] = r.reads;
            jt["writes"] = r.writes;
            rep.trials.push_back(jt);
        }
    }
    rep.aggregates["ok"] = ok;
    rep.aggregates["bottom"] = bottom;
    rep.aggregates["incorrect"] = incorrect;
    rep.aggregates["fault"] = fault;
    rep.aggregates["truth_in_space"] = truth_space;
    rep.aggregates["truth_in_candidates"] = truth_cand;
    rep.require("soundness: zero incorrect decodes", incorrect == 0, std::to_string(incorrect));
    rep.require("decoder never aborted", bottom == 0, std::to_string(bottom));
    rep.require("no channel faults", fault == 0, std::to_string(fault));
    rep.require("true polynomial always in the list space", truth_space == trials - fault);
    rep.require("true evasive-set element always among candidates", truth_cand == trials - fault);
    rep.wall_ms = sw.ms();
    return rep;
}

inline Report run_reliability(const AwtpParams& P, std::uint64_t seed, std::size_t trials, std::size_t threads = 0,
                              bool keep_trials = true) {
    return run_roundtrip(P, {StrategySpec{"random", 0}, StrategySpec{"burst", 0}, StrategySpec{"informed", 0}},
                         seed, trials, threads, keep_trials);
}

// ---------------------------------------------------------------------------
// exact secrecy
// ---------------------------------------------------------------------------

/// Exhaustive view-distribution comparison at the polynomial layer. The
/// coefficient prefixes s1/s2 stand for the (fixed message, fixed nonce)
/// encodings of two messages; the appended coin vector is enumerated
/// completely. For each prefix the map coins -> view must be a bijection,
/// and the two view distributions must coincide exactly, giving statistical
/// distance zero.
struct SecrecyConfig {
    fe q = 13;
    std::size_t u = 3;
    std::size_t N = 4;
    std::vector<std::size_t> read_set{0};
    Vec s1, s2;
    std::uint64_t enum_cap = 1000000;
};

inline Report run_secrecy_exact(const SecrecyConfig& cfg) {
    Report rep;
    rep.mode = "secrecy";
    if (cfg.s1.size() != cfg.s2.size()) throw ConfigError("secrecy: message prefixes must have equal length");
    // an empty read set is legal: one empty view on each side, distance zero
    for (const auto p : cfg.read_set)
        if (p >= cfg.N) throw ConfigError("secrecy: read position out of range");

    const std::size_t coin_len = cfg.u * cfg.read_set.size();
    const std::size_t k = cfg.s1.size() + coin_len;
    const FrsParams P(PrimeField(cfg.q), cfg.u, cfg.N, k, 1);

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < coin_len; ++i) {
        if (total > cfg.enum_cap / cfg.q + 1) throw ScaleError("secrecy: coin enumeration exceeds the cap");
        total *= cfg.q;
    }
    if (total > cfg.enum_cap) throw ScaleError("secrecy: coin enumeration exceeds the cap");

    rep.resolved["q"] = std::to_string(cfg.q);
    rep.resolved["u"] = std::to_string(cfg.u);
    rep.resolved["N"] = std::to_string(cfg.N);
    rep.resolved["k"] = std::to_string(k);
    rep.resolved["read_set"] = cfg.read_set;
    rep.resolved["coin_values"] = total;
    rep.resolved["message1"] = vec_to_json(cfg.s1);
    rep.resolved["message2"] = vec_to_json(cfg.s2);

    Stopwatch sw;
    const auto views_of = [&](const Vec& s) {
        std::map<Vec, std::uint64_t> views;
        Vec f(s.begin(), s.end());
        f.resize(k, 0);
        Vec a(coin_len, 0);
        while (true) {
            std::copy(a.begin(), a.end(), f.begin() + static_cast<long>(s.size()));
            const FrsCodeword c = frs_encode(P, f);
            Vec view;
            view.reserve(coin_len);
            for (const auto pos : cfg.read_set) view.insert(view.end(), c[pos].begin(), c[pos].end());
            ++views[view];
            std::size_t i = 0;
            while (i < coin_len && ++a[i] == cfg.q) a[i++] = 0;
            if (i == coin_len) break;
        }
        return views;
    };

    const auto v1 = views_of(cfg.s1);
    const auto v2 = views_of(cfg.s2);

    const bool bij1 = v1.size() == total;
    const bool bij2 = v2.size() == total;

    // SD = (1/2) sum |p1 - p2|; numerator collected exactly over the union
    std::uint64_t l1_num = 0;
    for (const auto& [view, c1] : v1) {
        const auto it = v2.find(view);
        const std::uint64_t c2 = it == v2.end() ? 0 : it->second;
        l1_num += c1 > c2 ? c1 - c2 : c2 - c1;
    }
    for (const auto& [view, c2] : v2)
        if (!v1.count(view)) l1_num += c2;
    const Rational sd(static_cast<long long>(l1_num), 2 * static_cast<long long>(total));

    rep.aggregates["distinct_views_m1"] = v1.size();
    rep.aggregates["distinct_views_m2"] = v2.size();
    rep.aggregates["statistical_distance"] = sd.str();
    rep.require("coins -> view is a bijection for message 1", bij1);
    rep.require("coins -> view is a bijection for message 2", bij2);
    rep.require("statistical distance is exactly zero", sd == Rational(0), sd.str());
    rep.wall_ms = sw.ms();
    return rep;
}

// ---------------------------------------------------------------------------
// exhaustive tamper-detection bound
// ---------------------------------------------------------------------------

/// Exhausts every message, every nonzero offset and every nonce of the
/// tamper-detection code over F_{q^m} and reports the worst pass count,
/// asserting max_{x, delta != 0} Pr_r[pass] <= (ell+1)/q^m.
inline Report run_amd_exhaustive(fe q, std::size_t m, std::uint64_t ell, std::uint64_t check_cap = 200000000) {
    Report rep;
    rep.mode = "amd";
    std::uint64_t Q = 1;
    for (std::size_t i = 0; i < m; ++i) Q *= q;
    if (Q > 32) throw ScaleError("amd exhaustive check requires q^m <= 32");
    const AmdParams P(ExtField(PrimeField(q), m), ell);

    // total checks Q^(2*ell+3)
    {
        long double t = 1;
        for (std::uint64_t i = 0; i < 2 * ell + 3; ++i) t *= static_cast<long double>(Q);
        if (t > static_cast<long double>(check_cap)) throw ScaleError("amd exhaustive check exceeds the cap");
    }

    rep.resolved["q"] = std::to_string(q);
    rep.resolved["m"] = std::to_string(m);
    rep.resolved["ell"] = std::to_string(ell);
    rep.resolved["field_size"] = Q;

    Stopwatch sw;
    // index <-> element tables
    std::vector<ExtField::Element> elems;
    elems.reserve(Q);
    {
        Vec digits(m, 0);
        for (std::uint64_t i = 0; i < Q; ++i) {
            elems.push_back(P.ext.phi(digits));
            std::size_t d = 0;
            while (d < m && ++digits[d] == q) digits[d++] = 0;
        }
    }
    const auto index_of = [&](const ExtField::Element& e) {
        const Vec c = P.ext.phi_inv(e);
        std::uint64_t idx = 0;
        for (std::size_t i = m; i > 0; --i) idx = idx * q + c[i - 1];
        return idx;
    };
    std::vector<std::uint32_t> add_tab(Q * Q);
    for (std::uint64_t a = 0; a < Q; ++a)
        for (std::uint64_t b = 0; b < Q; ++b)
            add_tab[a * Q + b] = static_cast<std::uint32_t>(index_of(P.ext.add(elems[a], elems[b])));

    // tag table over message tuples (odometer in base Q) and nonces
    std::uint64_t x_count = 1;
    for (std::uint64_t i = 0; i < ell; ++i) x_count *= Q;
    std::vector<std::uint32_t> tag_tab(x_count * Q);
    {
        std::vector<std::uint64_t> xidx(ell, 0);
        std::vector<ExtField::Element> xs(ell, elems[0]);
        for (std::uint64_t xi = 0; xi < x_count; ++xi) {
            for (std::uint64_t r = 0; r < Q; ++r)
                tag_tab[xi * Q + r] = static_cast<std::uint32_t>(index_of(amd_tag(P, xs, elems[r])));
            std::size_t d = 0;
            while (d < ell && ++xidx[d] == Q) xidx[d++] = 0;
            for (std::size_t i = 0; i < ell; ++i) xs[i] = elems[xidx[i]];
        }
    }

    // offset arithmetic on x-tuples via digitwise table addition
    const auto x_add = [&](std::uint64_t xi, std::uint64_t dxi) {
        std::uint64_t out = 0, mul = 1;
        for (std::uint64_t i = 0; i < ell; ++i) {
            const std::uint64_t a = xi % Q, b = dxi % Q;
            xi /= Q;
            dxi /= Q;
            out += static_cast<std::uint64_t>(add_tab[a * Q + b]) * mul;
            mul *= Q;
        }
        return out;
    };

    std::uint64_t worst = 0;
    Json worst_at;
    for (std::uint64_t xi = 0; xi < x_count; ++xi)
        for (std::uint64_t dxi = 0; dxi < x_count; ++dxi) {
            const std::uint64_t xdx = x_add(xi, dxi);
            for (std::uint64_t dr = 0; dr < Q; ++dr)
                for (std::uint64_t dt = 0; dt < Q; ++dt) {
                    if (dxi == 0 && dr == 0 && dt == 0) continue;
                    std::uint64_t pass = 0;
                    for (std::uint64_t r = 0; r < Q; ++r) {
                        const std::uint32_t expect = add_tab[tag_tab[xi * Q + r] * Q + dt];
                        if (tag_tab[xdx * Q + add_tab[r * Q + dr]] == expect) ++pass;
                    }
                    if (pass > worst) {
                        worst = pass;
                        worst_at = Json{{"x", xi}, {"dx", dxi}, {"dr", dr}, {"dt", dt}};
                    }
                }
        }

    const Rational bound(static_cast<long long>(ell) + 1, static_cast<long long>(Q));
    const Rational worst_prob(static_cast<long long>(worst), static_cast<long long>(Q));
    rep.aggregates["worst_pass_count"] = worst;
    rep.aggregates["worst_pass_probability"] = worst_prob.str();
    rep.aggregates["bound"] = bound.str();
    rep.aggregates["worst_witness"] = worst_at;
    rep.require("max pass probability within (ell+1)/q^m", worst_prob <= bound,
                worst_prob.str() + " <= " + bound.str());
    rep.wall_ms = sw.ms();
    return rep;
}

// ---------------------------------------------------------------------------
// evasive-set checks against the exhaustive oracle
// ---------------------------------------------------------------------------

/// Block variety by raw enumeration of all q^w tuples (independent of the
/// encode path), then: exhaustive encode/inverse bijection check, and
/// intersection-vs-oracle comparison on random affine subspaces of every
/// dimension up to v.
inline Report run_ses_check(fe q, std::size_t v, std::size_t n1, std::size_t subspaces, std::uint64_t seed,
                            std::uint64_t enum_cap = 2000000) {
    Report rep;
    rep.mode = "ses";
    const PrimeField F(q);
    const SesParams P = ses_setup(F, v, n1);

    rep.resolved["q"] = std::to_string(q);
    rep.resolved["v"] = std::to_string(v);
    rep.resolved["n1"] = std::to_string(n1);
    rep.resolved["blocks"] = P.blocks;
    rep.resolved["d1"] = P.d1;
    rep.resolved["list_bound"] = P.list_bound();
    rep.resolved["subspaces"] = subspaces;
    rep.resolved["seed"] = seed;
    rep.resolved["seed_scheme"] = kSeedScheme;

    // scale guards: q^w block scan, variety^blocks S scan, q^n1 round trip
    {
        long double block_scan = 1, s_size = 1, inputs = 1;
        for (std::size_t i = 0; i < P.w; ++i) block_scan *= static_cast<long double>(q);
        for (std::size_t i = 0; i < P.blocks * (P.w - v); ++i) {
            s_size *= static_cast<long double>(q);
            inputs *= static_cast<long double>(q);
        }
        if (block_scan > static_cast<long double>(enum_cap) || s_size > static_cast<long double>(enum_cap))
            throw ScaleError("ses check: the evasive set is not enumerable at this scale");
        (void)inputs;
    }

    Stopwatch sw;
    // oracle: enumerate the block variety from the defining equations
    std::vector<Vec> variety;
    {
        Vec x(P.w, 0);
        while (true) {
            bool ok = true;
            for (std::size_t i = 0; i < v && ok; ++i) {
                fe acc = 0;
                for (std::size_t j = 0; j < P.w; ++j)
                    acc = F.add(acc, F.mul(P.A.at(i, j), F.pow(x[j], P.degrees[j])));
                ok = acc == 0;
            }
            if (ok) variety.push_back(x);
            std::size_t i = 0;
            while (i < P.w && ++x[i] == q) x[i++] = 0;
            if (i == P.w) break;
        }
    }
    std::uint64_t expected_size = 1;
    for (std::size_t i = 0; i < P.w - v; ++i) expected_size *= q;
    rep.aggregates["block_variety_size"] = variety.size();
    rep.require("block variety has exactly q^(w-v) points", variety.size() == expected_size,
                std::to_string(variety.size()));

    // exhaustive bijection round trip over all q^n1 inputs
    std::set<Vec> images;
    bool roundtrip_ok = true, membership_ok = true;
    {
        Vec in(P.n1, 0);
        while (true) {
            const Vec s = ses_encode(P, in);
            roundtrip_ok = roundtrip_ok && ses_inverse(P, s) == in;
            membership_ok = membership_ok && ses_contains(P, s);
            images.insert(s);
            std::size_t i = 0;
            while (i < P.n1 && ++in[i] == q) in[i++] = 0;
            if (i == P.n1) break;
        }
    }
    std::uint64_t input_count = 1;
    for (std::size_t i = 0; i < P.n1; ++i) input_count *= q;
    rep.aggregates["inputs"] = input_count;
    rep.aggregates["distinct_images"] = images.size();
    rep.require("encode/inverse round trip on every input", roundtrip_ok);
    rep.require("every image lies on the variety", membership_ok);
    rep.require("encode is injective", images.size() == input_count);

    // intersection vs oracle on random subspaces
    Rng rng(derive_seed(seed, 0));
    std::uint64_t mismatches = 0, max_intersection = 0, nonempty = 0;
    for (std::size_t it = 0; it < subspaces; ++it) {
        const std::size_t dim = it % (v + 1);
        Matrix M(P.n, dim);
        for (auto& x : M.a) x = F.uniform(rng);
        Vec z(P.n);
        for (auto& x : z) x = F.uniform(rng);
        // half the subspaces are anchored at a set member so nonempty
        // intersections are common
        if (it % 2 == 0) {
            Vec in(P.n1);
            for (auto& x : in) x = F.uniform(rng);
            const Vec member = ses_encode(P, in);
            Vec params(dim);
            for (auto& x : params) x = F.uniform(rng);
            const Vec shift = mat_vec(F, M, params);
            for (std::size_t i = 0; i < P.n; ++i) z[i] = F.sub(member[i], shift[i]);
        }
        const AffineSpace H = affine_column_reduce(F, M, std::move(z));

        const auto got = ses_intersect(P, H);
        // oracle: walk variety^blocks, filter by affine membership
        std::vector<Vec> expected;
        {
            std::vector<std::size_t> idx(P.blocks, 0);
            while (true) {
                Vec point;
                point.reserve(P.n);
                for (std::size_t b = 0; b < P.blocks; ++b)
                    point.insert(point.end(), variety[idx[b]].begin(), variety[idx[b]].end());
                if (affine_contains(F, H, point)) expected.push_back(std::move(point));
                std::size_t b = 0;
                while (b < P.blocks && ++idx[b] == variety.size()) idx[b++] = 0;
                if (b == P.blocks) break;
            }
            std::sort(expected.begin(), expected.end());
        }
        if (got != expected) ++mismatches;
        max_intersection = std::max<std::uint64_t>(max_intersection, got.size());
        nonempty += !got.empty();
    }
    rep.aggregates["subspaces_checked"] = subspaces;
    rep.aggregates["oracle_mismatches"] = mismatches;
    rep.aggregates["max_intersection"] = max_intersection;
    rep.aggregates["nonempty_intersections"] = nonempty;
    rep.require("intersection equals the brute-force oracle", mismatches == 0, std::to_string(mismatches));
    rep.require("intersection size within (d1)^v", max_intersection <= P.list_bound(),
                std::to_string(max_intersection) + " <= " + std::to_string(P.list_bound()));
    rep.wall_ms = sw.ms();
    return rep;
}

// ---------------------------------------------------------------------------
// bound formulas and schedule table
// ---------------------------------------------------------------------------

struct BoundsConfig {
    std::vector<std::pair<Rational, Rational>> grid;  // (rho_r, rho_w)
    std::vector<Rational> xi1{Rational(1, 100), Rational(1, 200)};
    fe q = 241;
    std::size_t u = 30, v = 3, N = 8;
};

/// Tabulates, for each (rho_r, rho_w): the perfect-secrecy capacity bound,
/// the largest rate the desk-scale base parameters actually admit, the
/// closed-form rate-condition bound, and the asymptotic schedule check at
/// each xi1. All comparisons are exact.
inline Report run_bounds(const BoundsConfig& cfg) {
    Report rep;
    rep.mode = "bounds";
    rep.resolved["base"] = Json{{"q", std::to_string(cfg.q)},
                                {"u", std::to_string(cfg.u)},
                                {"v", std::to_string(cfg.v)},
                                {"N", std::to_string(cfg.N)}};
    {
        Json xs = Json::array();
        for (const auto& x : cfg.xi1) xs.push_back(x.str());
        rep.resolved["xi1"] = xs;
    }

    Stopwatch sw;
    bool capacity_ok = true, schedule_ok = true;
    for (const auto& [rho_r, rho_w] : cfg.grid) {
        Json row;
        row["rho_r"] = rho_r.str();
        row["rho_w"] = rho_w.str();

        const Rational cap = awtp_capacity_bound(rho_r, rho_w, Rational(0), cfg.N, 1);
        row["capacity_eps0"] = cap.str();
        row["capacity_infeasible"] = !(cap > Rational(0));
        capacity_ok = capacity_ok && cap == Rational(1) - rho_r - rho_w;

        // largest achievable desk rate: scan message lengths downward
        Rational achieved(0);
        for (long long c = static_cast<long long>(cfg.u) * static_cast<long long>(cfg.N); c >= 1; --c) {
            const Rational R(c, static_cast<long long>(cfg.u) * static_cast<long long>(cfg.N));
            try {
                awtp_shape(cfg.q, cfg.u, cfg.v, cfg.N, R, rho_r, rho_w);
                achieved = R;
                break;
            } catch (const Error&) {
            }
        }
        row["desk_achieved_R"] = achieved.str();
        if (achieved > Rational(0)) {
            row["rate_condition_max_rho_w"] = awtp_rate_condition(cfg.u, cfg.v, achieved, rho_r).str();
        }

        Json checks = Json::array();
        for (const auto& xi1 : cfg.xi1) {
            const auto chk = awtp_schedule_check(xi1, rho_r, rho_w);
            Json jc;
            jc["xi1"] = xi1.str();
            jc["feasible"] = chk.feasible;
            if (chk.feasible) {
                jc["v"] = chk.v;
                jc["u"] = chk.u;
                jc["R"] = chk.R.str();
                jc["rate_condition_rhs"] = chk.lemma_rhs.str();
                jc["holds"] = chk.holds;
                schedule_ok = schedule_ok && chk.holds;
            }
            checks.push_back(jc);
        }
        row["schedule"] = checks;
        rep.trials.push_back(row);
    }
    rep.aggregates["rows"] = cfg.grid.size();
    rep.require("capacity column equals 1 - rho_r - rho_w exactly", capacity_ok);
    rep.require("schedule inequality holds wherever feasible", schedule_ok);
    rep.wall_ms = sw.ms();
    return rep;
}

// ---------------------------------------------------------------------------
// list-decoding theorem trials (used by the acceptance suite)
// ---------------------------------------------------------------------------

/// Random (message, error pattern) trials with agreement kept above the
/// decoding threshold: the true message must lie in the returned affine
/// space every single time, with space dimension at most v-1.
inline Report run_frs_check(const FrsParams& P, std::size_t errors, std::uint64_t seed, std::size_t trials,
                            std::size_t threads = 0) {
    Report rep;
    rep.mode = "frs";
    rep.resolved["q"] = std::to_string(P.F.q());
    rep.resolved["u"] = std::to_string(P.u);
    rep.resolved["N"] = std::to_string(P.N);
    rep.resolved["k"] = std::to_string(P.k);
    rep.resolved["v"] = std::to_string(P.v);
    rep.resolved["errors"] = errors;
    rep.resolved["seed"] = seed;
    rep.resolved["trials"] = trials;
    rep.resolved["seed_scheme"] = kSeedScheme;

    const Rational threshold = frs_agreement_threshold(P);
    rep.resolved["agreement_threshold"] = threshold.str();
    if (!(Rational(static_cast<long long>(P.N - errors)) > threshold))
        throw ConfigError("frs check: error count does not keep agreement above the threshold");

    std::vector<std::uint8_t> contained(trials, 0), dim_ok(trials, 0);
    Stopwatch sw;
    parallel_for(trials, threads, [&](std::size_t t) {
        Rng rng(derive_seed(seed, t));
        Vec f(P.k);
        for (auto& x : f) x = P.F.uniform(rng);
        FrsCodeword y = frs_encode(P, f);
        std::set<std::size_t> where;
        while (where.size() < errors) where.insert(rng.below(P.N));
        for (const auto j : where) {
            bool changed = false;
            while (!changed)
                for (auto& s : y[j]) {
                    const fe d = P.F.uniform(rng);
                    changed = changed || d != 0;
                    s = P.F.add(s, d);
                }
        }
        const auto space = frs_list_decode(P, y);
        if (space) {
            contained[t] = affine_contains(P.F, *space, f);
            dim_ok[t] = space->dim() <= P.v - 1;
        }
    });

    std::size_t hits = 0, dims = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        hits += contained[t];
        dims += dim_ok[t];
    }
    rep.aggregates["contained"] = hits;
    rep.aggregates["dimension_ok"] = dims;
    rep.aggregates["trials"] = trials;
    rep.require("true message contained in every trial", hits == trials,
                std::to_string(hits) + "/" + std::to_string(trials));
    rep.require("space dimension at most v-1 in every trial", dims == trials);
    rep.wall_ms = sw.ms();
    return rep;
}

}  // namespace awtp
