#include "cfm/security.hpp"

#include <future>
#include <map>

#include "cfm/equivalence.hpp"
#include "cfm/net.hpp"
#include "cfm/syntax.hpp"

namespace cfm {
namespace {

Witness witness_for(const Net& net, const Transition& t, std::string reason)
{
    return {{}, net.place_name(t.pre), t.label.text(), net.place_or_theta_text(t.post), std::nullopt,
            std::move(reason)};
}

std::string restricted_text(const Net& restricted, PlaceOrTheta p) { return restricted.place_or_theta_text(p); }

Verdict finish(Verdict v)
{
    v.secure = v.witnesses.empty();
    return v;
}

// Shared by the structural and rooted methods: one check per high transition.
template <typename Related>
Verdict per_transition(const Spec& spec, Method method, Related related)
{
    Verdict v;
    v.method = method;
    Net net = build_net(spec);
    Net low = restrict_net(net, hidden_actions(spec));
    Partition p = branching_bisim(low);
    for (const Transition& t : net.transitions()) {
        if (!t.label.is_high())
            continue;
        if (!t.post) {
            v.witnesses.push_back(witness_for(
                net, t, restricted_text(low, t.pre) + " is a place but the move empties the marking"));
            continue;
        }
        if (auto reason = related(low, p, t.pre, *t.post))
            v.witnesses.push_back(witness_for(net, t, *reason));
    }
    return finish(std::move(v));
}

} // namespace

std::string to_string(Method m)
{
    switch (m) {
    case Method::Definitional:
        return "def";
    case Method::Structural:
        return "struct";
    case Method::Compositional:
        return "comp";
    case Method::Rooted:
        return "rooted";
    case Method::Sbndc:
        return "sbndc";
    }
    return "?";
}

std::set<Action> hidden_actions(const Spec& spec)
{
    std::set<Action> out;
    for (const auto& h : spec.high_actions)
        out.insert(Action::high(h));
    return out;
}

Verdict dni_definitional(const Spec& spec, std::size_t max_states)
{
    Verdict v;
    v.method = Method::Definitional;
    Net net = build_net(spec);
    Net low = restrict_net(net, hidden_actions(spec));
    Partition p = branching_bisim(low);
    ReachabilityGraph g = reachability_graph(net, net.initial(), max_states);
    v.states_explored = g.markings.size();
    std::set<std::size_t> reported;
    const auto ts = net.transitions();
    for (const MarkingEdge& e : g.edges) {
        const Transition& t = ts[e.transition];
        if (!t.label.is_high() || reported.count(e.transition))
            continue;
        const Marking& before = g.markings[e.from];
        const Marking& after = g.markings[e.to];
        if (markings_equiv(p, before, after))
            continue;
        reported.insert(e.transition);
        Witness w = witness_for(net, t,
                                low.marking_text(before) + " and " + low.marking_text(after) +
                                    " are not branching team equivalent");
        w.context = net.marking_text(before);
        v.witnesses.push_back(std::move(w));
    }
    return finish(std::move(v));
}

Verdict dni_structural(const Spec& spec)
{
    return per_transition(spec, Method::Structural,
                          [](const Net& low, const Partition& p, PlaceId pre, PlaceId post) -> std::optional<std::string> {
                              if (p.related(pre, post))
                                  return std::nullopt;
                              return low.place_name(pre) + " and " + low.place_name(post) +
                                     " are not branching bisimilar: " + explain_difference(low, p, pre, post);
                          });
}

Verdict rooted_dni(const Spec& spec)
{
    return per_transition(spec, Method::Rooted,
                          [](const Net& low, const Partition& p, PlaceId pre, PlaceId post) -> std::optional<std::string> {
                              if (rooted_pairs(low, p, pre, post))
                                  return std::nullopt;
                              return low.place_name(pre) + " and " + low.place_name(post) +
                                     " are not rooted branching bisimilar";
                          });
}

Verdict dni_compositional(const Spec& spec)
{
    Verdict v;
    v.method = Method::Compositional;
    std::vector<TermPtr> components;
    for (const TermPtr& c : dec(spec.main))
        if (components.empty() || !same_term(components.back(), c))
            components.push_back(c);

    std::vector<std::future<Verdict>> checks;
    for (const TermPtr& c : components) {
        v.components.push_back(c->text());
        checks.push_back(std::async(std::launch::async, [&spec, c] {
            Spec sub = spec;
            sub.main = c;
            return dni_structural(sub);
        }));
    }
    for (std::size_t i = 0; i < checks.size(); ++i) {
        for (Witness& w : checks[i].get().witnesses) {
            w.component = components[i]->text();
            v.witnesses.push_back(std::move(w));
        }
    }
    return finish(std::move(v));
}

Verdict sbndc_interleaving(const Spec& spec, std::size_t max_states)
{
    Verdict v;
    v.method = Method::Sbndc;
    Lts lts = build_lts(spec.main, spec, max_states);
    v.states_explored = lts.states.size();
    LabelledGraph low;
    low.states = lts.states.size();
    for (const LtsEdge& e : lts.edges)
        if (!e.label.is_high())
            low.edges.push_back({e.from, e.label.text(), e.to});
    auto cls = strong_bisimulation(low);
    for (const LtsEdge& e : lts.edges) {
        if (!e.label.is_high() || cls[e.from] == cls[e.to])
            continue;
        const auto& from = lts.states[e.from]->text();
        const auto& to = lts.states[e.to]->text();
        v.witnesses.push_back({{}, from, e.label.text(), to, from,
                               "(" + from + ")\\H and (" + to + ")\\H are not strongly bisimilar"});
    }
    return finish(std::move(v));
}

Verdict check(const Spec& spec, Method method, std::size_t max_states)
{
    switch (method) {
    case Method::Definitional:
        return dni_definitional(spec, max_states);
    case Method::Structural:
        return dni_structural(spec);
    case Method::Compositional:
        return dni_compositional(spec);
    case Method::Rooted:
        return rooted_dni(spec);
    case Method::Sbndc:
        return sbndc_interleaving(spec, max_states);
    }
    throw std::logic_error("unknown method");
}

} // namespace cfm
