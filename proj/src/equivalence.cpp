#include "cfm/equivalence.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "cfm/syntax.hpp"

namespace cfm {
namespace {

using Sig = std::vector<std::uint64_t>;

std::uint64_t sig_entry(std::size_t label, std::size_t block)
{
    return (static_cast<std::uint64_t>(label) << 32) | static_cast<std::uint64_t>(block);
}

// Places 0..n-1 and θ as element n; edges carry interned label ids.
struct Graph {
    std::size_t n = 0;
    std::size_t tau = 0;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
    std::vector<Action> labels;
};

Graph graph_of(const Net& net)
{
    Graph g;
    g.n = net.place_count();
    g.out.assign(g.n + 1, {});
    std::map<Action, std::size_t> ids;
    ids.emplace(Action::tau(), 0);
    g.labels.push_back(Action::tau());
    for (const Transition& t : net.transitions()) {
        auto [it, fresh] = ids.emplace(t.label, g.labels.size());
        if (fresh)
            g.labels.push_back(t.label);
        g.out[t.pre].emplace_back(it->second, t.post ? *t.post : g.n);
    }
    return g;
}

// Strongly connected components of the inert silent graph, emitted with
// every component after all components it can reach.
std::vector<std::vector<std::size_t>> inert_sccs(const Graph& g, const std::vector<std::size_t>& block)
{
    const std::size_t total = g.n + 1;
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(total, unvisited), low(total, 0);
    std::vector<bool> on_stack(total, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> out;
    std::size_t counter = 0;

    auto inert = [&](std::size_t s, const std::pair<std::size_t, std::size_t>& e) {
        return e.first == g.tau && block[e.second] == block[s];
    };

    struct Frame {
        std::size_t node;
        std::size_t edge;
    };
    for (std::size_t root = 0; root < total; ++root) {
        if (index[root] != unvisited)
            continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& edges = g.out[f.node];
            if (f.edge < edges.size()) {
                const auto& e = edges[f.edge++];
                if (!inert(f.node, e))
                    continue;
                std::size_t t = e.second;
                if (index[t] == unvisited) {
                    index[t] = low[t] = counter++;
                    stack.push_back(t);
                    on_stack[t] = true;
                    frames.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[f.node] = std::min(low[f.node], index[t]);
                }
                continue;
            }
            std::size_t v = f.node;
            frames.pop_back();
            if (!frames.empty())
                low[frames.back().node] = std::min(low[frames.back().node], low[v]);
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                out.push_back(std::move(comp));
            }
        }
    }
    return out;
}

// Branching signatures: moves available after inert silent steps, leaving
// out silent moves that stay in the current block.
std::vector<Sig> signatures(const Graph& g, const std::vector<std::size_t>& block)
{
    const std::size_t total = g.n + 1;
    std::vector<Sig> sig(total);
    std::vector<std::size_t> comp_of(total);
    auto comps = inert_sccs(g, block);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (std::size_t s : comps[c])
            comp_of[s] = c;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        Sig acc;
        for (std::size_t s : comps[c]) {
            for (const auto& [label, t] : g.out[s]) {
                bool inert = label == g.tau && block[t] == block[s];
                if (!inert)
                    acc.push_back(sig_entry(label, block[t]));
                else if (comp_of[t] != c)
                    acc.insert(acc.end(), sig[t].begin(), sig[t].end());
            }
        }
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        for (std::size_t s : comps[c])
            sig[s] = acc;
    }
    return sig;
}

std::vector<std::size_t> refine_branching(const Graph& g)
{
    std::vector<std::size_t> block(g.n + 1, 0);
    block[g.n] = 1;
    std::size_t count = g.n == 0 ? 1 : 2;
    while (true) {
        auto sig = signatures(g, block);
        std::map<std::pair<std::size_t, Sig>, std::size_t> ids;
        std::vector<std::size_t> next(g.n + 1);
        for (std::size_t s = 0; s <= g.n; ++s) {
            auto [it, fresh] = ids.emplace(std::make_pair(block[s], std::move(sig[s])), ids.size());
            next[s] = it->second;
        }
        block = std::move(next);
        if (ids.size() == count)
            return block;
        count = ids.size();
    }
}

std::string class_text(const Net& net, const Partition& p, std::size_t cls)
{
    if (cls == p.theta_class())
        return "θ";
    auto members = p.classes().at(cls);
    std::string out = "[" + net.place_name(members.front());
    if (members.size() > 1)
        out += " and " + std::to_string(members.size() - 1) + " more";
    return out + "]";
}

} // namespace

Partition::Partition(const std::vector<std::size_t>& block)
{
    std::unordered_map<std::size_t, std::size_t> renumber;
    class_of_.reserve(block.size());
    for (std::size_t b : block) {
        auto [it, fresh] = renumber.emplace(b, renumber.size());
        class_of_.push_back(it->second);
    }
    theta_class_ = renumber.size();
}

std::vector<std::vector<PlaceId>> Partition::classes() const
{
    std::vector<std::vector<PlaceId>> out(theta_class_);
    for (PlaceId p = 0; p < class_of_.size(); ++p)
        out[class_of_[p]].push_back(p);
    return out;
}

Partition branching_bisim(const Net& net)
{
    Graph g = graph_of(net);
    auto block = refine_branching(g);
    block.pop_back();
    return Partition(block);
}

bool rooted_pairs(const Net& net, const Partition& p, PlaceId q1, PlaceId q2)
{
    const auto ts = net.transitions();
    auto matched = [&](PlaceId from, PlaceId to) {
        for (std::size_t i : net.outgoing(from)) {
            const Transition& t = ts[i];
            bool found = false;
            for (std::size_t j : net.outgoing(to)) {
                const Transition& u = ts[j];
                if (u.label == t.label && p.related(t.post, u.post)) {
                    found = true;
                    break;
                }
            }
            if (!found)
                return false;
        }
        return true;
    };
    return matched(q1, q2) && matched(q2, q1);
}

bool markings_equiv(const Partition& p, const Marking& m1, const Marking& m2)
{
    if (m1.size() != m2.size())
        return false;
    auto classes = [&](const Marking& m) {
        std::vector<std::size_t> out;
        for (PlaceId s : m.elements())
            out.push_back(p.class_of(s));
        std::sort(out.begin(), out.end());
        return out;
    };
    return classes(m1) == classes(m2);
}

bool markings_rooted_equiv(const Net& net, const Partition& p, const Marking& m1, const Marking& m2)
{
    if (m1.size() != m2.size())
        return false;
    // The rooted relation is an equivalence, so greedy matching is exact.
    auto left = m1.elements();
    auto right = m2.elements();
    std::vector<bool> used(right.size(), false);
    for (PlaceId s : left) {
        bool found = false;
        for (std::size_t j = 0; j < right.size(); ++j) {
            if (!used[j] && rooted_pairs(net, p, s, right[j])) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

bool team_equivalent(const TermPtr& p, const TermPtr& q, const Spec& spec)
{
    Net net = build_net(par(p, q), spec);
    return markings_equiv(branching_bisim(net), net.marking_of(dec(p)), net.marking_of(dec(q)));
}

bool rooted_team_equivalent(const TermPtr& p, const TermPtr& q, const Spec& spec)
{
    Net net = build_net(par(p, q), spec);
    return markings_rooted_equiv(net, branching_bisim(net), net.marking_of(dec(p)), net.marking_of(dec(q)));
}

std::string explain_difference(const Net& net, const Partition& p, PlaceOrTheta a, PlaceOrTheta b)
{
    auto name = [&](PlaceOrTheta x) { return net.place_or_theta_text(x); };
    if (p.related(a, b))
        return name(a) + " and " + name(b) + " are equivalent";
    if (!a || !b)
        return "θ is only equivalent to θ, but " + name(a ? a : b) + " is a place";

    Graph g = graph_of(net);
    std::vector<std::size_t> block(g.n + 1);
    for (PlaceId s = 0; s < g.n; ++s)
        block[s] = p.class_of(s);
    block[g.n] = p.theta_class();
    auto sig = signatures(g, block);
    auto describe = [&](PlaceId x, PlaceId y) -> std::string {
        for (std::uint64_t e : sig[x]) {
            if (std::binary_search(sig[y].begin(), sig[y].end(), e))
                continue;
            const Action& label = g.labels[e >> 32];
            std::size_t cls = e & 0xffffffffu;
            return name(x) + " can do " + label.text() + " reaching " + class_text(net, p, cls) + ", which " +
                   name(y) + " cannot match";
        }
        return {};
    };
    if (auto s = describe(*a, *b); !s.empty())
        return s;
    if (auto s = describe(*b, *a); !s.empty())
        return s;
    return name(a) + " and " + name(b) + " fall into different classes";
}

std::vector<std::size_t> strong_bisimulation(const LabelledGraph& g)
{
    std::map<std::string, std::size_t> label_ids;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(g.states);
    for (const auto& e : g.edges) {
        auto [it, fresh] = label_ids.emplace(e.label, label_ids.size());
        out[e.from].emplace_back(it->second, e.to);
    }
    std::vector<std::size_t> block(g.states, 0);
    std::size_t count = g.states == 0 ? 0 : 1;
    while (true) {
        std::map<std::pair<std::size_t, Sig>, std::size_t> ids;
        std::vector<std::size_t> next(g.states);
        for (std::size_t s = 0; s < g.states; ++s) {
            Sig sig;
            for (const auto& [label, t] : out[s])
                sig.push_back(sig_entry(label, block[t]));
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            auto [it, fresh] = ids.emplace(std::make_pair(block[s], std::move(sig)), ids.size());
            next[s] = it->second;
        }
        block = std::move(next);
        if (ids.size() == count)
            return block;
        count = ids.size();
    }
}

LabelledGraph to_graph(const Lts& lts)
{
    LabelledGraph g;
    g.states = lts.states.size();
    for (const LtsEdge& e : lts.edges)
        g.edges.push_back({e.from, e.label.text(), e.to});
    return g;
}

std::vector<std::size_t> strong_bisim_lts(const Lts& lts) { return strong_bisimulation(to_graph(lts)); }

} // namespace cfm
