#include "cfm/net.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "cfm/error.hpp"

namespace cfm {

Net::Net(std::vector<std::string> places, std::vector<Transition> transitions, Marking initial,
         std::vector<TermPtr> place_terms)
    : names_(std::move(places)), terms_(std::move(place_terms)), transitions_(std::move(transitions)),
      initial_(std::move(initial))
{
    if (!terms_.empty() && terms_.size() != names_.size())
        throw Error("net: place term table does not match the place table");
    for (PlaceId p = 0; p < names_.size(); ++p)
        if (!index_.emplace(names_[p], p).second)
            throw Error("net: duplicate place name " + names_[p]);
    const auto n = names_.size();
    for (const Transition& t : transitions_)
        if (t.pre >= n || (t.post && *t.post >= n))
            throw Error("net: transition refers to an unknown place");
    for (const auto& [p, c] : initial_.entries())
        if (p >= n)
            throw Error("net: initial marking refers to an unknown place");
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
    outgoing_.assign(n, {});
    for (std::size_t i = 0; i < transitions_.size(); ++i)
        outgoing_[transitions_[i].pre].push_back(i);

    reachable_.assign(n, false);
    std::deque<PlaceId> todo;
    for (PlaceId p : initial_.support()) {
        reachable_[p] = true;
        todo.push_back(p);
    }
    while (!todo.empty()) {
        PlaceId p = todo.front();
        todo.pop_front();
        for (std::size_t i : outgoing_[p])
            if (auto q = transitions_[i].post; q && !reachable_[*q]) {
                reachable_[*q] = true;
                todo.push_back(*q);
            }
    }
}

std::optional<PlaceId> Net::find_place(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::set<Action> Net::labels() const
{
    std::set<Action> out;
    for (const Transition& t : transitions_)
        out.insert(t.label);
    return out;
}

Marking Net::marking_of(const std::vector<TermPtr>& components) const
{
    Marking m;
    for (const TermPtr& c : components) {
        auto p = find_place(c->text());
        if (!p)
            throw Error("net has no place " + c->text());
        m.add(*p);
    }
    return m;
}

std::string Net::marking_text(const Marking& m) const
{
    if (m.empty())
        return "θ";
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [p, n] : m.entries()) {
        out << (first ? "" : ", ");
        if (n > 1)
            out << n << "·";
        out << names_[p];
        first = false;
    }
    out << "}";
    return out.str();
}

std::string Net::place_or_theta_text(PlaceOrTheta p) const { return p ? names_[*p] : "θ"; }

bool is_enabled(const Marking& m, const Transition& t) { return m.contains(t.pre); }

Marking fire(const Net& net, const Marking& m, const Transition& t)
{
    if (!is_enabled(m, t))
        throw NotEnabled("transition from " + net.place_name(t.pre) + " is not enabled");
    Marking out = m;
    out.remove(t.pre);
    if (t.post)
        out.add(*t.post);
    return out;
}

ReachabilityGraph reachability_graph(const Net& net, const Marking& m0, std::size_t max_states)
{
    ReachabilityGraph g;
    std::unordered_map<Marking, std::size_t, MarkingHash> index;
    auto intern = [&](Marking m) {
        auto it = index.find(m);
        if (it != index.end())
            return it->second;
        if (g.markings.size() >= max_states)
            throw StateLimitExceeded("marking exploration", max_states);
        std::size_t id = g.markings.size();
        index.emplace(m, id);
        g.markings.push_back(std::move(m));
        return id;
    };
    intern(m0);
    const auto ts = net.transitions();
    for (std::size_t i = 0; i < g.markings.size(); ++i) {
        for (PlaceId p : g.markings[i].support()) {
            for (std::size_t ti : net.outgoing(p)) {
                Marking next = fire(net, g.markings[i], ts[ti]);
                std::size_t j = intern(std::move(next));
                g.edges.push_back({i, ti, j});
            }
        }
    }
    return g;
}

std::vector<Marking> reach(const Net& net, const Marking& m0, std::size_t max_states)
{
    return reachability_graph(net, m0, max_states).markings;
}

std::set<PlaceOrTheta> silent_closure(const Net& net, PlaceId s)
{
    std::set<PlaceOrTheta> out{s};
    std::deque<PlaceId> todo{s};
    const auto ts = net.transitions();
    while (!todo.empty()) {
        PlaceId p = todo.front();
        todo.pop_front();
        for (std::size_t ti : net.outgoing(p)) {
            const Transition& t = ts[ti];
            if (!t.label.is_tau())
                continue;
            if (out.insert(t.post).second && t.post)
                todo.push_back(*t.post);
        }
    }
    return out;
}

Net restrict_net(const Net& net, const std::set<Action>& hidden)
{
    std::vector<std::string> names;
    names.reserve(net.place_count());
    for (const auto& n : net.place_names())
        names.push_back(n + "\\H");
    std::vector<Transition> kept;
    for (const Transition& t : net.transitions())
        if (!hidden.count(t.label))
            kept.push_back(t);
    std::vector<TermPtr> terms;
    if (net.has_terms())
        for (PlaceId p = 0; p < net.place_count(); ++p)
            terms.push_back(net.place_term(p));
    return Net(std::move(names), std::move(kept), net.initial(), std::move(terms));
}

std::set<Action> high_labels(const Net& net)
{
    std::set<Action> out;
    for (const Transition& t : net.transitions())
        if (t.label.is_high())
            out.insert(t.label);
    return out;
}

} // namespace cfm
