#include "cfm/typing.hpp"

#include <map>

#include "cfm/equivalence.hpp"
#include "cfm/lts.hpp"
#include "cfm/syntax.hpp"

namespace cfm {
namespace {

struct Outcome {
    bool ok = false;
    std::shared_ptr<const Derivation> node;
    std::string reason;
    TermPtr failing;
};

std::string key_of(const TermPtr& t, const std::set<std::string>& scanned)
{
    std::string key = t->text() + '\x1f';
    for (const auto& c : scanned)
        key += c + ',';
    return key;
}

bool has_high_initial(const std::set<Action>& in)
{
    for (const Action& a : in)
        if (a.is_high())
            return true;
    return false;
}

class Checker {
public:
    explicit Checker(const Spec& spec) : spec_(spec) {}

    Outcome check(const TermPtr& t, const std::set<std::string>& scanned)
    {
        auto key = key_of(t, scanned);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        Outcome out = check_uncached(t, scanned);
        memo_.emplace(std::move(key), out);
        return out;
    }

    std::map<std::string, TermPtr> reordered_bodies;

private:
    Outcome ok(std::string rule, TermPtr term, const std::set<std::string>& scanned,
               std::vector<std::shared_ptr<const Derivation>> premises = {})
    {
        auto d = std::make_shared<Derivation>();
        d->rule = std::move(rule);
        d->term = std::move(term);
        d->scanned = scanned;
        d->premises = std::move(premises);
        return {true, std::move(d), {}, nullptr};
    }

    static Outcome fail(std::string reason, TermPtr at) { return {false, nullptr, std::move(reason), std::move(at)}; }

    Outcome check_uncached(const TermPtr& t, const std::set<std::string>& scanned)
    {
        switch (t->kind()) {
        case TermKind::Nil:
            return ok("nil", t, scanned);
        case TermKind::Par: {
            Outcome l = check(t->left(), scanned);
            if (!l.ok)
                return l;
            Outcome r = check(t->right(), scanned);
            if (!r.ok)
                return r;
            return ok("par", par(l.node->term, r.node->term), scanned, {l.node, r.node});
        }
        case TermKind::Prefix:
            return check_prefix(t, scanned);
        case TermKind::Sum:
            if (!has_high_initial(initials(t, spec_))) {
                Outcome l = check(t->left(), scanned);
                if (!l.ok)
                    return l;
                Outcome r = check(t->right(), scanned);
                if (!r.ok)
                    return r;
                return ok("sum-low", sum(l.node->term, r.node->term), scanned, {l.node, r.node});
            }
            return check_high_sum(t, scanned);
        case TermKind::Const: {
            if (scanned.count(t->name()))
                return ok("const-scanned", t, scanned);
            auto inner = scanned;
            inner.insert(t->name());
            const TermPtr& body = spec_.body(t->name());
            Outcome b = check(body, inner);
            if (!b.ok)
                return b;
            if (!same_term(b.node->term, body))
                reordered_bodies.emplace(t->name(), b.node->term);
            return ok("const-unfold", t, scanned, {b.node});
        }
        }
        throw std::logic_error("unknown term kind");
    }

    Outcome check_prefix(const TermPtr& t, const std::set<std::string>& scanned)
    {
        const TermPtr& body = t->body();
        if (!t->action().is_high()) {
            Outcome b = check(body, scanned);
            if (!b.ok)
                return b;
            return ok("prefix-low", prefix(t->action(), b.node->term), scanned, {b.node});
        }
        if (is_deadlock_place(body, spec_))
            return ok("prefix-high-deadlock", t, scanned);
        auto in = initials(body, spec_);
        bool only_high = !in.empty();
        for (const Action& a : in)
            only_high = only_high && a.is_high();
        if (!only_high)
            return fail("no rule for a high prefix applies: the body is neither stuck nor restricted to high initial "
                        "actions",
                        t);
        Outcome b = check(body, scanned);
        if (!b.ok)
            return b;
        return ok("prefix-high-high", prefix(t->action(), b.node->term), scanned, {b.node});
    }

    // h.p + q: some high-prefixed summand h.p, with q the remaining summands
    // in their original order, must satisfy p != 0, p and q typed and
    // r(p) = r(q).
    Outcome check_high_sum(const TermPtr& t, const std::set<std::string>& scanned)
    {
        std::vector<TermPtr> summands;
        std::set<std::string> seen;
        bool any_proper = false;
        for (const TermPtr& s : flatten_sum(t))
            any_proper = any_proper || !s->is_nil();
        for (const TermPtr& s : flatten_sum(t))
            if ((!any_proper || !s->is_nil()) && seen.insert(s->text()).second)
                summands.push_back(s);
        if (summands.size() == 1)
            return check(summands.front(), scanned);

        std::string last_reason = "no summand is a high prefix";
        TermPtr last_failing = t;
        for (std::size_t i = 0; i < summands.size(); ++i) {
            const TermPtr& hp = summands[i];
            if (hp->kind() != TermKind::Prefix || !hp->action().is_high())
                continue;
            const TermPtr& p = hp->body();
            std::vector<TermPtr> rest;
            for (std::size_t j = 0; j < summands.size(); ++j)
                if (j != i)
                    rest.push_back(summands[j]);
            TermPtr q = sum_of(rest);
            if (p->is_nil()) {
                last_reason = "the high summand " + hp->text() + " has body 0";
                last_failing = hp;
                continue;
            }
            Outcome pt = check(p, scanned);
            if (!pt.ok) {
                last_reason = pt.reason;
                last_failing = pt.failing;
                continue;
            }
            Outcome qt = check(q, scanned);
            if (!qt.ok) {
                last_reason = qt.reason;
                last_failing = qt.failing;
                continue;
            }
            if (!decide_equational(p, q, spec_)) {
                last_reason = "r(" + p->text() + ") and r(" + q->text() + ") are not provably equal";
                last_failing = t;
                continue;
            }
            TermPtr typed = sum(prefix(hp->action(), pt.node->term), qt.node->term);
            return ok("sum-high", typed, scanned, {pt.node, qt.node});
        }
        return fail(last_reason, last_failing);
    }

    const Spec& spec_;
    std::map<std::string, Outcome> memo_;
};

void render(const Derivation& d, int depth, std::string& out)
{
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += d.rule + ": (" + d.term->text() + ", {";
    bool first = true;
    for (const auto& c : d.scanned) {
        out += (first ? "" : ", ") + c;
        first = false;
    }
    out += "})\n";
    for (const auto& p : d.premises)
        render(*p, depth + 1, out);
}

} // namespace

TypingJudgment type_check(const TermPtr& t, const Spec& spec)
{
    Checker checker(spec);
    Outcome o = checker.check(t, {});
    TypingJudgment j;
    j.term = t;
    j.typed = o.ok;
    if (o.ok) {
        j.derivation = o.node;
        j.reordered = o.node->term;
        j.reordered_bodies = std::move(checker.reordered_bodies);
    } else {
        j.reason = o.reason;
        j.failing_subterm = o.failing;
    }
    return j;
}

TypingJudgment type_check(const Spec& spec) { return type_check(spec.main, spec); }

bool decide_equational(const TermPtr& p, const TermPtr& q, const Spec& spec)
{
    auto [rp, with_p] = restrict_syntactic(p, spec);
    auto [rq, with_both] = restrict_syntactic(q, with_p);
    return rooted_team_equivalent(rp, rq, with_both);
}

bool is_deadlock_place(const TermPtr& p, const Spec& spec)
{
    return !p->is_nil() && p->is_sequential() && lts_step(p, spec).empty();
}

std::string render_derivation(const Derivation& d)
{
    std::string out;
    render(d, 0, out);
    return out;
}

} // namespace cfm
