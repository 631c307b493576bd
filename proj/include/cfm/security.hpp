#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cfm/lts.hpp"
#include "cfm/term.hpp"

namespace cfm {

enum class Method { Definitional, Structural, Compositional, Rooted, Sbndc };

std::string to_string(Method m);

/// A high move that leaks: the low views before and after it differ.
struct Witness {
    /// Sequential component whose check failed (compositional method only).
    std::string component;
    std::string pre;
    std::string label;
    /// Target place, or "θ".
    std::string post;
    /// Marking or state the move fired from, when the method enumerates them.
    std::optional<std::string> context;
    std::string reason;
};

struct Verdict {
    Method method = Method::Structural;
    bool secure = true;
    std::vector<Witness> witnesses;
    /// dom(dec(main)), filled by the compositional method.
    std::vector<std::string> components;
    /// Markings (or LTS states) explored by enumerating methods.
    std::size_t states_explored = 0;
};

/// High actions of the specification as Action values.
std::set<Action> hidden_actions(const Spec& spec);

/// Enumerates the reachable markings of the net of `main` and compares the
/// low views of both sides of every enabled high transition. Throws
/// StateLimitExceeded past `max_states` markings.
Verdict dni_definitional(const Spec& spec, std::size_t max_states = kDefaultStateCap);

/// Checks each high transition of the net once: its pre-place and its
/// post-set must be branching bisimilar in the restricted net.
Verdict dni_structural(const Spec& spec);

/// Runs the structural check on every distinct sequential component of
/// dec(main); components are checked concurrently.
Verdict dni_compositional(const Spec& spec);

/// Structural enumeration with rooted branching bisimilarity as the test.
Verdict rooted_dni(const Spec& spec);

/// Interleaving check: for every reachable p' -h-> p'' in the LTS of main,
/// the states must be strongly bisimilar once high moves are pruned.
Verdict sbndc_interleaving(const Spec& spec, std::size_t max_states = kDefaultStateCap);

Verdict check(const Spec& spec, Method method, std::size_t max_states = kDefaultStateCap);

} // namespace cfm
