#include "cfm/term.hpp"

#include <cassert>
#include <sstream>

#include "cfm/error.hpp"

namespace cfm {

Term::Term(TermKind kind, Action action, TermPtr left, TermPtr right, std::string text)
    : kind_(kind), action_(std::move(action)), left_(std::move(left)), right_(std::move(right)),
      text_(std::move(text))
{
}

namespace {

std::string parenthesize(const std::string& s) { return "(" + s + ")"; }

} // namespace

TermPtr nil()
{
    static const TermPtr zero(new Term(TermKind::Nil, {}, nullptr, nullptr, "0"));
    return zero;
}

TermPtr prefix(Action action, TermPtr body)
{
    assert(body);
    std::string text = action.text() + ".";
    if (body->kind() == TermKind::Sum || body->kind() == TermKind::Par)
        text += parenthesize(body->text());
    else
        text += body->text();
    return TermPtr(new Term(TermKind::Prefix, std::move(action), std::move(body), nullptr, std::move(text)));
}

TermPtr sum(TermPtr left, TermPtr right)
{
    assert(left && right);
    std::string text = left->kind() == TermKind::Par ? parenthesize(left->text()) : left->text();
    text += " + ";
    if (right->kind() == TermKind::Sum || right->kind() == TermKind::Par)
        text += parenthesize(right->text());
    else
        text += right->text();
    return TermPtr(new Term(TermKind::Sum, {}, std::move(left), std::move(right), std::move(text)));
}

TermPtr constant(std::string name)
{
    return TermPtr(new Term(TermKind::Const, {}, nullptr, nullptr, std::move(name)));
}

TermPtr par(TermPtr left, TermPtr right)
{
    assert(left && right);
    std::string text = left->text() + " | ";
    text += right->kind() == TermKind::Par ? parenthesize(right->text()) : right->text();
    return TermPtr(new Term(TermKind::Par, {}, std::move(left), std::move(right), std::move(text)));
}

TermPtr sum_of(const std::vector<TermPtr>& summands)
{
    assert(!summands.empty());
    TermPtr acc = summands.front();
    for (std::size_t i = 1; i < summands.size(); ++i)
        acc = sum(acc, summands[i]);
    return acc;
}

TermPtr par_of(const std::vector<TermPtr>& components)
{
    if (components.empty())
        return nil();
    TermPtr acc = components.front();
    for (std::size_t i = 1; i < components.size(); ++i)
        acc = par(acc, components[i]);
    return acc;
}

const TermPtr& Spec::body(const std::string& name) const
{
    auto it = defs.find(name);
    if (it == defs.end())
        throw Error("undefined constant " + name);
    return it->second;
}

Action Spec::action(const std::string& name) const
{
    return is_high(name) ? Action::high(name) : Action::low(name);
}

std::string to_string(const Spec& spec)
{
    std::ostringstream out;
    if (!spec.high_actions.empty()) {
        out << "high ";
        bool first = true;
        for (const auto& h : spec.high_actions) {
            out << (first ? "" : ", ") << h;
            first = false;
        }
        out << "\n";
    }
    for (const auto& [name, body] : spec.defs)
        out << name << " := " << body->text() << "\n";
    if (spec.main)
        out << "main := " << spec.main->text() << "\n";
    return out.str();
}

} // namespace cfm
