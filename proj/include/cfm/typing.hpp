#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cfm/term.hpp"

namespace cfm {

/// One node of a typing derivation.
struct Derivation {
    /// nil, sum-low, par, sum-high, prefix-low, prefix-high-deadlock,
    /// prefix-high-high, const-scanned, const-unfold.
    std::string rule;
    /// The term as typed (after any summand reordering).
    TermPtr term;
    std::set<std::string> scanned;
    std::vector<std::shared_ptr<const Derivation>> premises;
};

struct TypingJudgment {
    TermPtr term;
    std::set<std::string> scanned;
    bool typed = false;
    /// Set when untyped.
    std::string reason;
    TermPtr failing_subterm;
    /// Set when typed.
    std::shared_ptr<const Derivation> derivation;
    /// The summand-reordered variant of `term` that was typed.
    TermPtr reordered;
    /// Constant bodies that had to be reordered, by constant name.
    std::map<std::string, TermPtr> reordered_bodies;
};

/// Tries to derive (main, ∅):dni, searching summand orders of every choice
/// that has a high-prefixed summand.
TypingJudgment type_check(const Spec& spec);
TypingJudgment type_check(const TermPtr& t, const Spec& spec);

/// Decides whether r(p) and r(q) are rooted branching team equivalent.
bool decide_equational(const TermPtr& p, const TermPtr& q, const Spec& spec);

/// True iff p is a sequential term other than 0 that cannot move.
bool is_deadlock_place(const TermPtr& p, const Spec& spec);

/// Multi-line rendering of a derivation, one node per line, indented.
std::string render_derivation(const Derivation& d);

} // namespace cfm
