#include "cfm/action.hpp"

#include "cfm/error.hpp"

namespace cfm {

namespace {
const std::string kTauText = "tau";
}

const std::string& Action::text() const
{
    return kind == ActionKind::Tau ? kTauText : name;
}

std::strong_ordering operator<=>(const Action& a, const Action& b)
{
    if (auto c = a.text() <=> b.text(); c != 0)
        return c;
    return a.kind <=> b.kind;
}

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      detail_(std::move(message)), line_(line), column_(column)
{
}

StateLimitExceeded::StateLimitExceeded(std::string what, std::size_t limit)
    : Error(what + ": state limit of " + std::to_string(limit) + " exceeded"), limit_(limit)
{
}

} // namespace cfm
