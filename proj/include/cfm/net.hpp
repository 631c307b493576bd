#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cfm/action.hpp"
#include "cfm/lts.hpp"
#include "cfm/marking.hpp"
#include "cfm/term.hpp"

namespace cfm {

/// A place, or θ (nullopt) for the empty post-set.
using PlaceOrTheta = std::optional<PlaceId>;

/// Finite-state-machine transition: one input place, at most one output place.
struct Transition {
    PlaceId pre;
    Action label;
    PlaceOrTheta post;

    friend bool operator==(const Transition&, const Transition&) = default;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Marked finite-state machine net.
///
/// Places are identified by name; nets built from CFM terms also keep the
/// sequential term behind every place. Transitions are stored sorted and
/// without duplicates, so two nets with the same places in the same order
/// and the same transition set compare equal.
class Net {
public:
    Net() = default;
    Net(std::vector<std::string> places, std::vector<Transition> transitions, Marking initial,
        std::vector<TermPtr> place_terms = {});

    std::size_t place_count() const { return names_.size(); }
    const std::string& place_name(PlaceId p) const { return names_.at(p); }
    const std::vector<std::string>& place_names() const { return names_; }
    std::optional<PlaceId> find_place(std::string_view name) const;

    bool has_terms() const { return !terms_.empty(); }
    const TermPtr& place_term(PlaceId p) const { return terms_.at(p); }

    std::span<const Transition> transitions() const { return transitions_; }
    /// Indices (into transitions()) of the transitions consuming from p.
    std::span<const std::size_t> outgoing(PlaceId p) const { return outgoing_.at(p); }

    const Marking& initial() const { return initial_; }
    std::set<Action> labels() const;

    /// Places reachable from the initial marking (all of them for nets
    /// produced by build_net; restrict_net may leave some unreachable).
    bool reachable(PlaceId p) const { return reachable_.at(p); }

    /// Marking made of the given sequential components; each must be a
    /// place of this net.
    Marking marking_of(const std::vector<TermPtr>& components) const;

    std::string marking_text(const Marking& m) const;
    std::string place_or_theta_text(PlaceOrTheta p) const;

    friend bool operator==(const Net& a, const Net& b)
    {
        return a.names_ == b.names_ && a.transitions_ == b.transitions_ && a.initial_ == b.initial_;
    }

private:
    std::vector<std::string> names_;
    std::vector<TermPtr> terms_;
    std::vector<Transition> transitions_;
    Marking initial_;
    std::unordered_map<std::string, PlaceId> index_;
    std::vector<std::vector<std::size_t>> outgoing_;
    std::vector<bool> reachable_;
};

bool is_enabled(const Marking& m, const Transition& t);

/// (m ⊖ •t) ⊕ t•. Throws NotEnabled if •t is not in m.
Marking fire(const Net& net, const Marking& m, const Transition& t);

struct MarkingEdge {
    std::size_t from;
    std::size_t transition;
    std::size_t to;
};

/// Markings reachable from m0 (index 0 is m0) with the firing edges.
struct ReachabilityGraph {
    std::vector<Marking> markings;
    std::vector<MarkingEdge> edges;
};

/// Breadth-first, deterministic. Throws StateLimitExceeded past `max_states`.
ReachabilityGraph reachability_graph(const Net& net, const Marking& m0,
                                     std::size_t max_states = kDefaultStateCap);
std::vector<Marking> reach(const Net& net, const Marking& m0, std::size_t max_states = kDefaultStateCap);

/// s itself plus everything reachable from s through silent transitions;
/// θ appears when a silent transition empties the token.
std::set<PlaceOrTheta> silent_closure(const Net& net, PlaceId s);

/// Low-observable net N∖H: each place renamed `name\H`, transitions with a
/// label in `hidden` removed, initial marking carried over. Place ids are
/// preserved; places no longer reachable stay in the table and report
/// reachable() == false.
Net restrict_net(const Net& net, const std::set<Action>& hidden);

/// High actions labelling some transition of the net.
std::set<Action> high_labels(const Net& net);

/// Net semantics of a process: the denotational construction that scans
/// constants once, dropping the initial place of a choice operand or of a
/// constant body when no transition re-enters it. The result is reduced to
/// the part reachable from dec(t), with places ordered by name.
Net build_net(const TermPtr& t, const Spec& spec);
inline Net build_net(const Spec& spec) { return build_net(spec.main, spec); }

/// Same net obtained by exploring the operational semantics of the
/// sequential components of dec(t) place by place.
Net build_net_operational(const TermPtr& t, const Spec& spec);

} // namespace cfm
