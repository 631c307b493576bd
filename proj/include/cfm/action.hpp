#pragma once

#include <compare>
#include <functional>
#include <string>

namespace cfm {

enum class ActionKind : unsigned char { Tau, Low, High };

/// An action label: the silent action, or a named low/high action.
/// The low/high split is fixed by the `high` declaration of a specification.
struct Action {
    ActionKind kind = ActionKind::Tau;
    std::string name;

    static Action tau() { return {}; }
    static Action low(std::string n) { return {ActionKind::Low, std::move(n)}; }
    static Action high(std::string n) { return {ActionKind::High, std::move(n)}; }

    bool is_tau() const { return kind == ActionKind::Tau; }
    bool is_high() const { return kind == ActionKind::High; }
    bool is_low() const { return kind == ActionKind::Low; }

    /// Printed form: the name, or `tau`.
    const std::string& text() const;

    friend bool operator==(const Action&, const Action&) = default;
    friend std::strong_ordering operator<=>(const Action& a, const Action& b);
};

} // namespace cfm

template <>
struct std::hash<cfm::Action> {
    std::size_t operator()(const cfm::Action& a) const noexcept
    {
        return std::hash<std::string>{}(a.name) * 3 + static_cast<std::size_t>(a.kind);
    }
};
