#include "cfm/syntax.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "cfm/error.hpp"
#include "cfm/lts.hpp"

namespace cfm {

namespace {

void collect_constants(const TermPtr& t, const Spec& spec, std::set<std::string>& seen)
{
    switch (t->kind()) {
    case TermKind::Nil:
        return;
    case TermKind::Prefix:
        collect_constants(t->body(), spec, seen);
        return;
    case TermKind::Sum:
    case TermKind::Par:
        collect_constants(t->left(), spec, seen);
        collect_constants(t->right(), spec, seen);
        return;
    case TermKind::Const:
        if (seen.insert(t->name()).second)
            collect_constants(spec.body(t->name()), spec, seen);
        return;
    }
}

void collect_actions(const TermPtr& t, std::set<Action>& out)
{
    switch (t->kind()) {
    case TermKind::Nil:
    case TermKind::Const:
        return;
    case TermKind::Prefix:
        out.insert(t->action());
        collect_actions(t->body(), out);
        return;
    case TermKind::Sum:
    case TermKind::Par:
        collect_actions(t->left(), out);
        collect_actions(t->right(), out);
        return;
    }
}

void initials_rec(const TermPtr& t, const Spec& spec, std::set<Action>& out, std::size_t unfold_budget)
{
    switch (t->kind()) {
    case TermKind::Nil:
        return;
    case TermKind::Prefix:
        out.insert(t->action());
        return;
    case TermKind::Sum:
    case TermKind::Par:
        initials_rec(t->left(), spec, out, unfold_budget);
        initials_rec(t->right(), spec, out, unfold_budget);
        return;
    case TermKind::Const:
        // Bodies are guarded, so one unfolding always reaches prefixes.
        if (unfold_budget == 0)
            throw std::logic_error("initials: unguarded constant recursion at " + t->name());
        initials_rec(spec.body(t->name()), spec, out, unfold_budget - 1);
        return;
    }
}

std::string fresh_primed_name(const std::string& source, const Spec& spec)
{
    std::set<std::string> taken;
    for (const auto& [from, to] : spec.restricted_names)
        taken.insert(to);
    auto free = [&](const std::string& n) { return !spec.defines(n) && !taken.count(n); };
    std::string candidate = source + "'";
    for (std::size_t k = 2; !free(candidate); ++k)
        candidate = source + "'" + std::to_string(k);
    return candidate;
}

TermPtr restrict_rec(const TermPtr& t, Spec& spec)
{
    switch (t->kind()) {
    case TermKind::Nil:
        return t;
    case TermKind::Prefix:
        if (t->action().is_high())
            return sum(nil(), nil());
        return prefix(t->action(), restrict_rec(t->body(), spec));
    case TermKind::Sum:
        return sum(restrict_rec(t->left(), spec), restrict_rec(t->right(), spec));
    case TermKind::Par:
        return par(restrict_rec(t->left(), spec), restrict_rec(t->right(), spec));
    case TermKind::Const: {
        if (auto it = spec.restricted_names.find(t->name()); it != spec.restricted_names.end())
            return constant(it->second);
        const TermPtr source_body = spec.body(t->name());
        std::string fresh = fresh_primed_name(t->name(), spec);
        if (spec.defines(fresh))
            throw std::logic_error("restriction: fresh constant " + fresh + " already defined");
        spec.restricted_names.emplace(t->name(), fresh);
        TermPtr body = restrict_rec(source_body, spec);
        spec.defs.emplace(fresh, body);
        return constant(fresh);
    }
    }
    return t;
}

TermPtr normalize_rec(const TermPtr& t);

std::vector<TermPtr> canonical_summands(const TermPtr& t)
{
    std::vector<TermPtr> parts;
    for (const TermPtr& s : flatten_sum(t))
        parts.push_back(normalize_rec(s));
    std::sort(parts.begin(), parts.end(), TermTextLess{});
    parts.erase(std::unique(parts.begin(), parts.end(), [](auto& a, auto& b) { return same_term(a, b); }),
                parts.end());
    bool has_proper = std::any_of(parts.begin(), parts.end(), [](auto& s) { return !s->is_nil(); });
    if (has_proper)
        std::erase_if(parts, [](auto& s) { return s->is_nil(); });
    else
        parts = {nil(), nil()};
    return parts;
}

TermPtr normalize_rec(const TermPtr& t)
{
    switch (t->kind()) {
    case TermKind::Nil:
    case TermKind::Const:
        return t;
    case TermKind::Prefix:
        return prefix(t->action(), normalize_rec(t->body()));
    case TermKind::Par:
        return par(normalize_rec(t->left()), normalize_rec(t->right()));
    case TermKind::Sum:
        return sum_of(canonical_summands(t));
    }
    return t;
}

void dec_rec(const TermPtr& t, std::vector<TermPtr>& out)
{
    if (t->is_nil())
        return;
    if (t->kind() == TermKind::Par) {
        dec_rec(t->left(), out);
        dec_rec(t->right(), out);
        return;
    }
    out.push_back(t);
}

} // namespace

std::set<std::string> constants_of(const TermPtr& t, const Spec& spec)
{
    std::set<std::string> seen;
    collect_constants(t, spec, seen);
    return seen;
}

std::set<Action> sort_of(const TermPtr& t, const Spec& spec)
{
    std::set<Action> out;
    collect_actions(t, out);
    for (const auto& c : constants_of(t, spec))
        collect_actions(spec.body(c), out);
    return out;
}

std::set<Action> initials(const TermPtr& t, const Spec& spec)
{
    std::set<Action> out;
    initials_rec(t, spec, out, spec.defs.size() + 1);
    return out;
}

std::pair<TermPtr, Spec> restrict_syntactic(const TermPtr& t, const Spec& spec)
{
    Spec out = spec;
    TermPtr r = restrict_rec(t, out);
    return {r, std::move(out)};
}

bool is_observationally_guarded(const std::string& name, const Spec& spec)
{
    const TermPtr start = constant(name);
    std::set<std::string> seen;
    std::deque<TermPtr> frontier{start};
    while (!frontier.empty()) {
        TermPtr cur = frontier.front();
        frontier.pop_front();
        for (const auto& [a, next] : lts_step(cur, spec)) {
            if (!a.is_tau())
                continue;
            if (next->text() == name)
                return false;
            if (seen.insert(next->text()).second)
                frontier.push_back(next);
        }
    }
    return true;
}

std::vector<TermPtr> flatten_sum(const TermPtr& t)
{
    if (t->kind() != TermKind::Sum)
        return {t};
    std::vector<TermPtr> out = flatten_sum(t->left());
    for (auto& s : flatten_sum(t->right()))
        out.push_back(std::move(s));
    return out;
}

TermPtr normalize_sum(const TermPtr& t) { return normalize_rec(t); }

std::vector<TermPtr> normalized_summands(const TermPtr& t)
{
    if (t->kind() != TermKind::Sum)
        return {normalize_rec(t)};
    return canonical_summands(t);
}

std::vector<TermPtr> dec(const TermPtr& t)
{
    std::vector<TermPtr> out;
    dec_rec(t, out);
    std::sort(out.begin(), out.end(), TermTextLess{});
    return out;
}

} // namespace cfm
