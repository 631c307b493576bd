#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cfm/term.hpp"

namespace cfm {

/// Constants used by `t`, closed under the bodies of those constants.
std::set<std::string> constants_of(const TermPtr& t, const Spec& spec);

/// All actions occurring in `t` and in the bodies of its constants.
std::set<Action> sort_of(const TermPtr& t, const Spec& spec);

/// Initial actions In(t): prefixes reachable without passing a prefix,
/// unfolding constants once.
std::set<Action> initials(const TermPtr& t, const Spec& spec);

/// Syntactic restriction r(t): high prefixes become the deadlock `0 + 0`
/// and each reachable constant C is replaced by a fresh primed copy defined
/// as r(body). The returned specification extends `spec` with those copies;
/// its `restricted_names` memo maps every source constant to its copy, so
/// repeated calls on the returned specification reuse the same names.
std::pair<TermPtr, Spec> restrict_syntactic(const TermPtr& t, const Spec& spec);

/// False iff constant `name` reaches itself through one or more silent steps.
bool is_observationally_guarded(const std::string& name, const Spec& spec);

/// Summands of a (possibly nested) choice, left to right. A non-choice term
/// yields itself.
std::vector<TermPtr> flatten_sum(const TermPtr& t);

/// Canonical representative modulo associativity, commutativity, identity
/// (x + 0 = x for x != 0) and idempotence (x + x = x for x != 0) of choice,
/// applied everywhere below prefixes. Summands are sorted by printed form.
/// A choice made only of `0`s normalizes to `0 + 0`.
TermPtr normalize_sum(const TermPtr& t);

/// Summands of the normalized choice (a single element for non-choices).
std::vector<TermPtr> normalized_summands(const TermPtr& t);

/// Decomposition into sequential components: dec(0) is empty, dec(p | q)
/// is the union, anything else is the singleton {t}. Result is sorted by
/// printed form and keeps multiplicities.
std::vector<TermPtr> dec(const TermPtr& t);

} // namespace cfm
