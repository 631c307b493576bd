#pragma once

#include <string_view>

#include "cfm/term.hpp"

namespace cfm {

/// Parse a specification file.
///
/// Concrete syntax, one statement per line (or separated by `;`):
///
///     # comment
///     high h, k
///     C := h.l.C + l.C
///     main := C | l.0
///
/// Lowercase identifiers are actions, `tau` is the silent action,
/// uppercase-initial identifiers are constants and `0` is the empty
/// process. `.` binds tightest, then `+`, then `|`; both binary operators
/// associate to the left. A statement continues over a line break after an
/// operator or inside parentheses. Every accepted term respects the three
/// CFM syntactic categories.
///
/// Throws ParseError with the position of the first problem.
Spec parse_spec(std::string_view text);

/// Parse a single process expression (category p) whose constants must be
/// defined in `context`.
TermPtr parse_term(std::string_view text, const Spec& context);

/// Independent re-check of the category rules on a term tree; returns an
/// empty string when the term is a well-formed parallel process, otherwise a
/// description of the first violation.
std::string category_violation(const TermPtr& term);

} // namespace cfm
