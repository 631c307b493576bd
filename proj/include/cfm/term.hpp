#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cfm/action.hpp"

namespace cfm {

enum class TermKind : unsigned char { Nil, Prefix, Sum, Const, Par };

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable CFM process term.
///
/// Nodes are shared and never mutated. Every node carries its canonical
/// printed form, which doubles as its identity: two terms are the same
/// process term iff their texts are equal. The printer emits parseable
/// concrete syntax with the minimum parentheses needed to preserve the
/// tree shape (so `(x + y) + z` and `x + (y + z)` stay distinct).
class Term {
public:
    TermKind kind() const { return kind_; }
    const std::string& text() const { return text_; }

    /// Prefix only.
    const Action& action() const { return action_; }
    /// Prefix body.
    const TermPtr& body() const { return left_; }
    /// Sum / Par operands.
    const TermPtr& left() const { return left_; }
    const TermPtr& right() const { return right_; }
    /// Const only.
    const std::string& name() const { return text_; }

    bool is_nil() const { return kind_ == TermKind::Nil; }

    /// Category s: 0, prefix, or sum.
    bool is_guarded() const
    {
        return kind_ == TermKind::Nil || kind_ == TermKind::Prefix || kind_ == TermKind::Sum;
    }
    /// Category q: guarded or a constant.
    bool is_sequential() const { return kind_ != TermKind::Par; }

    friend TermPtr nil();
    friend TermPtr prefix(Action, TermPtr);
    friend TermPtr sum(TermPtr, TermPtr);
    friend TermPtr constant(std::string);
    friend TermPtr par(TermPtr, TermPtr);

private:
    Term(TermKind kind, Action action, TermPtr left, TermPtr right, std::string text);

    TermKind kind_;
    Action action_;
    TermPtr left_;
    TermPtr right_;
    std::string text_;
};

TermPtr nil();
TermPtr prefix(Action action, TermPtr body);
TermPtr sum(TermPtr left, TermPtr right);
TermPtr constant(std::string name);
TermPtr par(TermPtr left, TermPtr right);

/// Left-associated sum of the given summands; a single summand is returned as is.
TermPtr sum_of(const std::vector<TermPtr>& summands);
/// Left-associated parallel composition; empty input gives 0.
TermPtr par_of(const std::vector<TermPtr>& components);

inline bool same_term(const TermPtr& a, const TermPtr& b) { return a->text() == b->text(); }

struct TermTextLess {
    bool operator()(const TermPtr& a, const TermPtr& b) const { return a->text() < b->text(); }
};

/// A CFM specification: the high-action partition, constant definitions and
/// the process under analysis.
struct Spec {
    std::set<std::string> high_actions;
    std::map<std::string, TermPtr> defs;
    TermPtr main;
    /// Memo table of the syntactic restriction: source constant -> primed constant.
    std::map<std::string, std::string> restricted_names;

    const TermPtr& body(const std::string& name) const;
    bool defines(const std::string& name) const { return defs.count(name) != 0; }
    bool is_high(const std::string& action) const { return high_actions.count(action) != 0; }
    /// Low or high action named `name` under this specification's partition.
    Action action(const std::string& name) const;
};

/// Canonical, parseable rendering of a whole specification.
std::string to_string(const Spec& spec);

} // namespace cfm
