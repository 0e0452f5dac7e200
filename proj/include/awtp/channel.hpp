#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "frs.hpp"

namespace awtp {

/// Read/write budgets of the channel: at most reads_max distinct positions
/// observed, at most writes_max distinct positions corrupted.
struct ChannelBudget {
    std::size_t reads_max = 0;
    std::size_t writes_max = 0;
};

struct ReadAction {
    std::size_t pos;
};
struct WriteAction {
    std::size_t pos;
    Vec delta;  // nonzero u-tuple added to the transmitted symbol
};
struct DoneAction {};
using AdversaryAction = std::variant<ReadAction, WriteAction, DoneAction>;

/// Adaptive adversary. The channel drives it action by action; reads are
/// answered through observe() before the next action is requested, so a
/// strategy's behavior can depend only on its own randomness and on what it
/// has read so far.
class AdversaryStrategy {
   public:
    virtual ~AdversaryStrategy() = default;
    virtual AdversaryAction next(Rng& rng) = 0;
    virtual void observe(std::size_t /*pos*/, const Vec& /*symbol*/) {}
};

enum class ChannelFault { none, budget_violation, zero_delta, duplicate_write, bad_position, runaway };

inline const char* fault_name(ChannelFault f) {
    switch (f) {
        case ChannelFault::none: return "none";
        case ChannelFault::budget_violation: return "budget_violation";
        case ChannelFault::zero_delta: return "zero_delta";
        case ChannelFault::duplicate_write: return "duplicate_write";
        case ChannelFault::bad_position: return "bad_position";
        case ChannelFault::runaway: return "runaway";
    }
    return "?";
}

struct TranscriptEntry {
    bool is_read = false;
    std::size_t pos = 0;
    Vec data;  // observed symbol for reads, delta for writes
};

struct ChannelTranscript {
    std::vector<TranscriptEntry> actions;
    std::set<std::size_t> read_set;   // S_r
    std::set<std::size_t> write_set;  // S_w = SUPP(e)
    ChannelFault fault = ChannelFault::none;
    std::string fault_detail;
};

struct ChannelResult {
    FrsCodeword y;
    ChannelTranscript transcript;
};

/// Drive a strategy over the transmitted word c until Done or a fault.
/// Reads return the transmitted symbol c_i (the channel is additive on top
/// of c, so the adversary observing its own noise would learn nothing);
/// each position may be written once, with a nonzero delta added
/// component-wise over F_q. On a fault the run stops with the error applied
/// so far and the fault recorded.
inline ChannelResult channel_run(const PrimeField& F, const FrsCodeword& c, AdversaryStrategy& strat,
                                 const ChannelBudget& budget, Rng& rng) {
    const std::size_t N = c.size();
    if (budget.reads_max > N || budget.writes_max > N)
        throw ParamError("channel: budgets cannot exceed the block count");

    ChannelResult res;
    res.y = c;
    ChannelTranscript& tr = res.transcript;

    const std::size_t max_actions = 10 * N + 100;
    for (std::size_t step = 0;; ++step) {
        if (step >= max_actions) {
            tr.fault = ChannelFault::runaway;
            tr.fault_detail = "strategy did not finish within the action cap";
            return res;
        }
        const AdversaryAction act = strat.next(rng);
        if (std::holds_alternative<DoneAction>(act)) return res;

        if (const auto* rd = std::get_if<ReadAction>(&act)) {
            if (rd->pos >= N) {
                tr.fault = ChannelFault::bad_position;
                tr.fault_detail = "read position " + std::to_string(rd->pos);
                return res;
            }
            if (!tr.read_set.count(rd->pos) && tr.read_set.size() >= budget.reads_max) {
                tr.fault = ChannelFault::budget_violation;
                tr.fault_detail = "read budget " + std::to_string(budget.reads_max) + " exhausted";
                return res;
            }
            tr.read_set.insert(rd->pos);
            tr.actions.push_back(TranscriptEntry{true, rd->pos, c[rd->pos]});
            strat.observe(rd->pos, c[rd->pos]);
            continue;
        }

        const auto& wr = std::get<WriteAction>(act);
        if (wr.pos >= N || wr.delta.size() != c[0].size()) {
            tr.fault = ChannelFault::bad_position;
            tr.fault_detail = "write position " + std::to_string(wr.pos);
            return res;
        }
        bool nonzero = false;
        for (const fe d : wr.delta) nonzero = nonzero || d != 0;
        if (!nonzero) {
            tr.fault = ChannelFault::zero_delta;
            tr.fault_detail = "zero delta at position " + std::to_string(wr.pos);
            return res;
        }
        if (tr.write_set.count(wr.pos)) {
            tr.fault = ChannelFault::duplicate_write;
            tr.fault_detail = "position " + std::to_string(wr.pos) + " written twice";
            return res;
        }
        if (tr.write_set.size() >= budget.writes_max) {
            tr.fault = ChannelFault::budget_violation;
            tr.fault_detail = "write budget " + std::to_string(budget.writes_max) + " exhausted";
            return res;
        }
        tr.write_set.insert(wr.pos);
        for (std::size_t t = 0; t < wr.delta.size(); ++t) res.y[wr.pos][t] = F.add(res.y[wr.pos][t], wr.delta[t]);
        tr.actions.push_back(TranscriptEntry{false, wr.pos, wr.delta});
    }
}

/// View_A: the ordered (position, symbol) list of everything the adversary
/// read. This is the object the secrecy experiments compare across messages.
inline std::vector<std::pair<std::size_t, Vec>> transcript_view(const ChannelTranscript& tr) {
    std::vector<std::pair<std::size_t, Vec>> v;
    for (const auto& e : tr.actions)
        if (e.is_read) v.emplace_back(e.pos, e.data);
    return v;
}

}  // namespace awtp
