#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "cfm/term.hpp"

namespace cfm {

/// One-step transitions of `t` under the structural operational rules
/// (prefix, constant unfolding, both choice rules, both parallel rules).
/// Duplicate (label, target) pairs are reported once; the order is
/// deterministic (sorted by label, then target text).
std::vector<std::pair<Action, TermPtr>> lts_step(const TermPtr& t, const Spec& spec);

struct LtsEdge {
    std::size_t from;
    Action label;
    std::size_t to;
};

/// Interleaving transition system reachable from a process. State 0 is the
/// initial process; states are interned by printed form.
struct Lts {
    std::vector<TermPtr> states;
    std::vector<LtsEdge> edges;
};

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

/// Breadth-first exploration of the LTS of `start`. Throws
/// StateLimitExceeded when more than `max_states` states are discovered.
Lts build_lts(const TermPtr& start, const Spec& spec, std::size_t max_states = kDefaultStateCap);

} // namespace cfm
