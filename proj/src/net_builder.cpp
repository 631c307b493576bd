#include "cfm/net.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "cfm/error.hpp"
#include "cfm/syntax.hpp"

namespace cfm {
namespace {

// Places are kept by printed form until the final interning step.
struct Arc {
    std::string pre;
    Action label;
    std::optional<std::string> post;

    friend auto operator<=>(const Arc&, const Arc&) = default;
    friend bool operator==(const Arc&, const Arc&) = default;
};

struct Subnet {
    std::map<std::string, TermPtr> places;
    std::set<Arc> arcs;
};

std::optional<std::string> post_of(const TermPtr& t)
{
    if (t->is_nil())
        return std::nullopt;
    return t->text();
}

bool reenters(const Subnet& n, const std::string& place)
{
    return std::any_of(n.arcs.begin(), n.arcs.end(), [&](const Arc& a) { return a.post == place; });
}

// Drops `place` and its outgoing arcs unless some arc produces it.
void drop_if_unreached(Subnet& n, const TermPtr& root)
{
    if (root->is_nil() || reenters(n, root->text()))
        return;
    n.places.erase(root->text());
    std::erase_if(n.arcs, [&](const Arc& a) { return a.pre == root->text(); });
}

void merge(Subnet& into, const Subnet& from)
{
    into.places.insert(from.places.begin(), from.places.end());
    into.arcs.insert(from.arcs.begin(), from.arcs.end());
}

class Builder {
public:
    explicit Builder(const Spec& spec) : spec_(spec) {}

    Subnet build(const TermPtr& t, const std::set<std::string>& scanned)
    {
        std::string key = t->text() + '\x1f';
        for (const auto& c : scanned)
            key += c + ',';
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        Subnet out = build_uncached(t, scanned);
        memo_.emplace(std::move(key), out);
        return out;
    }

private:
    Subnet build_uncached(const TermPtr& t, const std::set<std::string>& scanned)
    {
        Subnet out;
        switch (t->kind()) {
        case TermKind::Nil:
            break;
        case TermKind::Prefix: {
            out = build(t->body(), scanned);
            out.places.emplace(t->text(), t);
            out.arcs.insert({t->text(), t->action(), post_of(t->body())});
            break;
        }
        case TermKind::Sum: {
            for (const TermPtr& operand : {t->left(), t->right()}) {
                Subnet sub = build(operand, scanned);
                for (const Arc& a : sub.arcs)
                    if (a.pre == operand->text())
                        out.arcs.insert({t->text(), a.label, a.post});
                drop_if_unreached(sub, operand);
                merge(out, sub);
            }
            out.places.emplace(t->text(), t);
            break;
        }
        case TermKind::Const: {
            out.places.emplace(t->name(), t);
            if (scanned.count(t->name()))
                break;
            const TermPtr& body = spec_.body(t->name());
            auto inner = scanned;
            inner.insert(t->name());
            Subnet sub = build(body, inner);
            for (const Arc& a : sub.arcs)
                if (a.pre == body->text())
                    out.arcs.insert({t->name(), a.label, a.post});
            drop_if_unreached(sub, body);
            merge(out, sub);
            break;
        }
        case TermKind::Par: {
            out = build(t->left(), scanned);
            merge(out, build(t->right(), scanned));
            break;
        }
        }
        return out;
    }

    const Spec& spec_;
    std::map<std::string, Subnet> memo_;
};

// Keeps the part reachable from the initial components and interns places in
// name order.
Net finish(const Subnet& sub, const std::vector<TermPtr>& initial)
{
    std::map<std::string, std::vector<const Arc*>> out_arcs;
    for (const Arc& a : sub.arcs)
        out_arcs[a.pre].push_back(&a);

    std::set<std::string> seen;
    std::deque<std::string> todo;
    for (const TermPtr& c : initial)
        if (seen.insert(c->text()).second)
            todo.push_back(c->text());
    while (!todo.empty()) {
        std::string p = todo.front();
        todo.pop_front();
        for (const Arc* a : out_arcs[p])
            if (a->post && seen.insert(*a->post).second)
                todo.push_back(*a->post);
    }

    std::vector<std::string> names(seen.begin(), seen.end());
    std::map<std::string, PlaceId> id;
    std::vector<TermPtr> terms;
    for (const auto& n : names) {
        id.emplace(n, static_cast<PlaceId>(id.size()));
        auto it = sub.places.find(n);
        if (it == sub.places.end())
            throw std::logic_error("net construction lost place " + n);
        terms.push_back(it->second);
    }
    std::vector<Transition> ts;
    for (const Arc& a : sub.arcs) {
        if (!seen.count(a.pre))
            continue;
        PlaceOrTheta post;
        if (a.post)
            post = id.at(*a.post);
        ts.push_back({id.at(a.pre), a.label, post});
    }
    Marking m0;
    for (const TermPtr& c : initial)
        m0.add(id.at(c->text()));
    return Net(std::move(names), std::move(ts), std::move(m0), std::move(terms));
}

} // namespace

Net build_net(const TermPtr& t, const Spec& spec)
{
    Builder builder(spec);
    return finish(builder.build(t, {}), dec(t));
}

Net build_net_operational(const TermPtr& t, const Spec& spec)
{
    Subnet sub;
    std::deque<TermPtr> todo;
    for (const TermPtr& c : dec(t))
        if (sub.places.emplace(c->text(), c).second)
            todo.push_back(c);
    while (!todo.empty()) {
        TermPtr q = todo.front();
        todo.pop_front();
        for (const auto& [mu, next] : lts_step(q, spec)) {
            sub.arcs.insert({q->text(), mu, post_of(next)});
            if (!next->is_nil() && sub.places.emplace(next->text(), next).second)
                todo.push_back(next);
        }
    }
    return finish(sub, dec(t));
}

} // namespace cfm
