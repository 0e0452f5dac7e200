#pragma once

#include <memory>
#include <string>

#include "channel.hpp"

namespace awtp {

/// Codeword geometry a strategy needs to act: block count, symbol width,
/// and the symbol alphabet.
struct CodewordShape {
    std::size_t N = 0;
    std::size_t u = 0;
    fe q = 0;
};

namespace strategies {

inline Vec random_nonzero_delta(const CodewordShape& s, Rng& rng) {
    Vec d(s.u);
    while (true) {
        bool nonzero = false;
        for (auto& x : d) {
            x = rng.below(s.q);
            nonzero = nonzero || x != 0;
        }
        if (nonzero) return d;
    }
}

/// Reads reads_max random distinct positions, then writes writes_max random
/// distinct positions with random nonzero deltas.
class Random final : public AdversaryStrategy {
   public:
    Random(CodewordShape shape, ChannelBudget budget) : shape_(shape), budget_(budget) {}

    AdversaryAction next(Rng& rng) override {
        if (reads_done_ < budget_.reads_max) {
            ++reads_done_;
            return ReadAction{fresh_position(read_positions_, rng)};
        }
        if (writes_done_ < budget_.writes_max) {
            ++writes_done_;
            return WriteAction{fresh_position(write_positions_, rng), random_nonzero_delta(shape_, rng)};
        }
        return DoneAction{};
    }

   private:
    std::size_t fresh_position(std::set<std::size_t>& used, Rng& rng) {
        std::size_t p;
        do {
            p = rng.below(shape_.N);
        } while (used.count(p));
        used.insert(p);
        return p;
    }

    CodewordShape shape_;
    ChannelBudget budget_;
    std::size_t reads_done_ = 0, writes_done_ = 0;
    std::set<std::size_t> read_positions_, write_positions_;
};

/// Writes a contiguous window of writes_max positions starting at `start`
/// (wrapping around), random nonzero deltas, no reads.
class Burst final : public AdversaryStrategy {
   public:
    Burst(CodewordShape shape, ChannelBudget budget, std::size_t start)
        : shape_(shape), budget_(budget), start_(start) {}

    AdversaryAction next(Rng& rng) override {
        if (writes_done_ < budget_.writes_max) {
            const std::size_t pos = (start_ + writes_done_) % shape_.N;
            ++writes_done_;
            return WriteAction{pos, random_nonzero_delta(shape_, rng)};
        }
        return DoneAction{};
    }

   private:
    CodewordShape shape_;
    ChannelBudget budget_;
    std::size_t start_;
    std::size_t writes_done_ = 0;
};

/// Reads its full budget, then derives every write delta deterministically
/// from the observed symbols: component t of the delta for the i-th write is
/// 1 + (mix of all observations + i + t) mod (q-1), so the deltas are always
/// nonzero and change whenever any read symbol changes.
class Informed final : public AdversaryStrategy {
   public:
    Informed(CodewordShape shape, ChannelBudget budget) : shape_(shape), budget_(budget) {}

    AdversaryAction next(Rng&) override {
        if (reads_done_ < budget_.reads_max) {
            const std::size_t pos = reads_done_ % shape_.N;
            ++reads_done_;
            return ReadAction{pos};
        }
        if (writes_done_ < budget_.writes_max) {
            const std::size_t i = writes_done_++;
            const std::size_t pos = (budget_.reads_max + i) % shape_.N;
            Vec delta(shape_.u);
            for (std::size_t t = 0; t < shape_.u; ++t)
                delta[t] = 1 + (mix_ + 31 * i + 7 * t) % (shape_.q - 1);
            return WriteAction{pos, delta};
        }
        return DoneAction{};
    }

    void observe(std::size_t pos, const Vec& symbol) override {
        for (const fe x : symbol) mix_ = (mix_ * 1099511628211ULL) ^ (x + 0x9e37 + pos);
    }

   private:
    CodewordShape shape_;
    ChannelBudget budget_;
    std::size_t reads_done_ = 0, writes_done_ = 0;
    std::uint64_t mix_ = 0xcbf29ce484222325ULL;
};

/// Touches nothing.
class Noop final : public AdversaryStrategy {
   public:
    AdversaryAction next(Rng&) override { return DoneAction{}; }
};

}  // namespace strategies

struct StrategySpec {
    std::string name = "random";  // random | burst | informed | noop
    std::size_t burst_start = 0;
};

inline std::unique_ptr<AdversaryStrategy> make_strategy(const StrategySpec& spec, const CodewordShape& shape,
                                                        const ChannelBudget& budget) {
    if (spec.name == "random") return std::make_unique<strategies::Random>(shape, budget);
    if (spec.name == "burst") return std::make_unique<strategies::Burst>(shape, budget, spec.burst_start);
    if (spec.name == "informed") return std::make_unique<strategies::Informed>(shape, budget);
    if (spec.name == "noop") return std::make_unique<strategies::Noop>();
    throw ConfigError("unknown adversary strategy: " + spec.name);
}

}  // namespace awtp
