#include "cfm/lts.hpp"

#include <algorithm>
#include <unordered_map>

#include "cfm/error.hpp"

namespace cfm {

namespace {

void steps(const TermPtr& t, const Spec& spec, std::vector<std::pair<Action, TermPtr>>& out)
{
    switch (t->kind()) {
    case TermKind::Nil:
        return;
    case TermKind::Prefix:
        out.emplace_back(t->action(), t->body());
        return;
    case TermKind::Sum:
        steps(t->left(), spec, out);
        steps(t->right(), spec, out);
        return;
    case TermKind::Const:
        steps(spec.body(t->name()), spec, out);
        return;
    case TermKind::Par: {
        std::vector<std::pair<Action, TermPtr>> l, r;
        steps(t->left(), spec, l);
        steps(t->right(), spec, r);
        for (auto& [a, next] : l)
            out.emplace_back(a, par(next, t->right()));
        for (auto& [a, next] : r)
            out.emplace_back(a, par(t->left(), next));
        return;
    }
    }
}

} // namespace

std::vector<std::pair<Action, TermPtr>> lts_step(const TermPtr& t, const Spec& spec)
{
    std::vector<std::pair<Action, TermPtr>> out;
    steps(t, spec, out);
    auto key_less = [](const auto& x, const auto& y) {
        if (x.first != y.first)
            return x.first < y.first;
        return x.second->text() < y.second->text();
    };
    std::sort(out.begin(), out.end(), key_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& x, const auto& y) {
                              return x.first == y.first && same_term(x.second, y.second);
                          }),
              out.end());
    return out;
}

Lts build_lts(const TermPtr& start, const Spec& spec, std::size_t max_states)
{
    Lts g;
    std::unordered_map<std::string, std::size_t> index;
    auto intern = [&](const TermPtr& t) {
        auto [it, fresh] = index.emplace(t->text(), g.states.size());
        if (fresh) {
            if (g.states.size() >= max_states)
                throw StateLimitExceeded("LTS exploration", max_states);
            g.states.push_back(t);
        }
        return it->second;
    };
    intern(start);
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        TermPtr cur = g.states[i];
        for (auto& [a, next] : lts_step(cur, spec)) {
            std::size_t j = intern(next);
            g.edges.push_back({i, a, j});
        }
    }
    return g;
}

} // namespace cfm
