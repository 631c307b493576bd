#include "cfm/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "cfm/error.hpp"

namespace cfm {

namespace {

enum class Tok { Ident, ConstName, Zero, Dot, Plus, Bar, LParen, RParen, Define, Comma, Separator, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1, depth = 0;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string text, std::size_t c) { out.push_back({k, std::move(text), line, c}); };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            if (depth == 0)
                push(Tok::Separator, "\n", col);
            ++i, ++line, col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i, ++col;
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n')
                ++i, ++col;
            continue;
        }
        std::size_t start = col;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j]))
                ++j;
            std::string word(src.substr(i, j - i));
            push(std::isupper(static_cast<unsigned char>(c)) ? Tok::ConstName : Tok::Ident, word, start);
            col += j - i;
            i = j;
            continue;
        }
        if (c == '0') {
            if (i + 1 < src.size() && ident_char(src[i + 1]))
                throw ParseError("malformed token starting with '0'", line, col);
            push(Tok::Zero, "0", start);
            ++i, ++col;
            continue;
        }
        if (c == ':' && i + 1 < src.size() && src[i + 1] == '=') {
            push(Tok::Define, ":=", start);
            i += 2, col += 2;
            continue;
        }
        Tok k;
        switch (c) {
        case '.': k = Tok::Dot; break;
        case '+': k = Tok::Plus; break;
        case '|': k = Tok::Bar; break;
        case ',': k = Tok::Comma; break;
        case ';': k = Tok::Separator; break;
        case '(': k = Tok::LParen; ++depth; break;
        case ')':
            k = Tok::RParen;
            if (depth > 0)
                --depth;
            break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        push(k, std::string(1, c), start);
        ++i, ++col;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

struct Node {
    TermPtr term;
    std::size_t line;
    std::size_t column;
};

bool is_keyword(const std::string& w) { return w == "high" || w == "main" || w == "tau"; }

class Parser {
public:
    Parser(std::vector<Token> tokens, const Spec& context) : toks_(std::move(tokens)), spec_(context) {}

    Spec parse_file()
    {
        collect_high_declarations();
        Spec out;
        out.high_actions = spec_.high_actions;
        std::optional<Node> main;
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::Separator) {
                ++pos_;
                continue;
            }
            const Token& head = peek();
            if (head.kind == Tok::Ident && head.text == "high") {
                // already collected
                while (peek().kind != Tok::Separator && peek().kind != Tok::End)
                    ++pos_;
                continue;
            }
            if (head.kind == Tok::Ident && head.text == "main") {
                ++pos_;
                expect(Tok::Define, "':=' after main");
                if (main)
                    throw ParseError("duplicate definition of main", head.line, head.column);
                Node n = parse_expr();
                main = n;
                end_statement();
                continue;
            }
            if (head.kind == Tok::ConstName) {
                ++pos_;
                expect(Tok::Define, "':=' after constant name");
                if (out.defs.count(head.text))
                    throw ParseError("duplicate definition of constant " + head.text, head.line, head.column);
                Node n = parse_expr();
                if (!n.term->is_guarded())
                    throw ParseError("body of " + head.text + " must be a guarded process (0, prefix or choice)",
                                     n.line, n.column);
                out.defs.emplace(head.text, n.term);
                end_statement();
                continue;
            }
            throw ParseError("expected a definition, 'high' or 'main', found '" + head.text + "'", head.line,
                             head.column);
        }
        if (!main)
            throw ParseError("missing 'main := ...' definition", peek().line, peek().column);
        out.main = main->term;
        check_constants(out.defs);
        return out;
    }

    TermPtr parse_single()
    {
        while (peek().kind == Tok::Separator)
            ++pos_;
        Node n = parse_expr();
        while (peek().kind == Tok::Separator)
            ++pos_;
        if (peek().kind != Tok::End)
            throw ParseError("unexpected '" + peek().text + "' after expression", peek().line, peek().column);
        check_constants(spec_.defs);
        return n.term;
    }

private:
    const Token& peek() const { return toks_[pos_]; }

    const Token& expect(Tok kind, const char* what)
    {
        const Token& t = peek();
        if (t.kind != kind)
            throw ParseError(std::string("expected ") + what, t.line, t.column);
        ++pos_;
        return t;
    }

    void skip_separators()
    {
        while (peek().kind == Tok::Separator && peek().text == "\n")
            ++pos_;
    }

    void end_statement()
    {
        const Token& t = peek();
        if (t.kind != Tok::Separator && t.kind != Tok::End)
            throw ParseError("unexpected '" + t.text + "' at end of statement", t.line, t.column);
    }

    void collect_high_declarations()
    {
        std::set<std::string> high;
        bool statement_start = true;
        for (std::size_t i = 0; i < toks_.size(); ++i) {
            const Token& t = toks_[i];
            if (t.kind == Tok::Separator) {
                statement_start = true;
                continue;
            }
            if (statement_start && t.kind == Tok::Ident && t.text == "high") {
                std::size_t j = i + 1;
                while (true) {
                    const Token& n = toks_[j];
                    if (n.kind == Tok::ConstName)
                        throw ParseError("high action names must start with a lowercase letter", n.line, n.column);
                    if (n.kind != Tok::Ident)
                        throw ParseError("expected an action name after 'high'", n.line, n.column);
                    if (n.text == "tau")
                        throw ParseError("the silent action tau cannot be declared high", n.line, n.column);
                    if (is_keyword(n.text))
                        throw ParseError("keyword '" + n.text + "' cannot be an action", n.line, n.column);
                    high.insert(n.text);
                    ++j;
                    if (toks_[j].kind != Tok::Comma)
                        break;
                    ++j;
                }
                if (toks_[j].kind != Tok::Separator && toks_[j].kind != Tok::End)
                    throw ParseError("unexpected '" + toks_[j].text + "' in high declaration", toks_[j].line,
                                     toks_[j].column);
                i = j - 1;
            }
            statement_start = false;
        }
        spec_.high_actions.insert(high.begin(), high.end());
    }

    Node parse_expr()
    {
        skip_separators();
        Node acc = parse_choice();
        while (peek().kind == Tok::Bar) {
            ++pos_;
            skip_separators();
            Node rhs = parse_choice();
            acc.term = par(acc.term, rhs.term);
        }
        return acc;
    }

    void require_summand(const Node& n)
    {
        if (n.term->kind() == TermKind::Const)
            throw ParseError("constant " + n.term->name() + " cannot be used as a summand (only guarded terms)",
                             n.line, n.column);
        if (n.term->kind() == TermKind::Par)
            throw ParseError("parallel composition inside a choice is not a CFM term", n.line, n.column);
    }

    Node parse_choice()
    {
        Node acc = parse_prefix();
        if (peek().kind != Tok::Plus)
            return acc;
        require_summand(acc);
        while (peek().kind == Tok::Plus) {
            ++pos_;
            skip_separators();
            Node rhs = parse_prefix();
            require_summand(rhs);
            acc.term = sum(acc.term, rhs.term);
        }
        return acc;
    }

    Node parse_prefix()
    {
        const Token& t = peek();
        if (t.kind == Tok::Ident) {
            if (t.text == "high" || t.text == "main")
                throw ParseError("keyword '" + t.text + "' cannot be used as an action", t.line, t.column);
            ++pos_;
            if (peek().kind != Tok::Dot)
                throw ParseError("expected '.' after action " + t.text, peek().line, peek().column);
            ++pos_;
            skip_separators();
            Node body = parse_prefix();
            if (body.term->kind() == TermKind::Par)
                throw ParseError("parallel composition under a prefix is not a CFM term", body.line, body.column);
            Action a = t.text == "tau" ? Action::tau() : spec_.action(t.text);
            return {prefix(std::move(a), body.term), t.line, t.column};
        }
        return parse_atom();
    }

    Node parse_atom()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Zero:
            ++pos_;
            return {nil(), t.line, t.column};
        case Tok::ConstName:
            ++pos_;
            uses_.push_back({constant(t.text), t.line, t.column});
            return uses_.back();
        case Tok::LParen: {
            ++pos_;
            Node inner = parse_expr();
            expect(Tok::RParen, "')'");
            return {inner.term, t.line, t.column};
        }
        case Tok::End:
            throw ParseError("unexpected end of input, expected a process", t.line, t.column);
        default:
            throw ParseError("expected a process, found '" + (t.text == "\n" ? std::string("end of line") : t.text) +
                                 "'",
                             t.line, t.column);
        }
    }

    void check_constants(const std::map<std::string, TermPtr>& defs) const
    {
        for (const Node& use : uses_)
            if (!defs.count(use.term->name()))
                throw ParseError("unknown constant " + use.term->name(), use.line, use.column);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Spec spec_;
    std::vector<Node> uses_;
};

std::string guarded_violation(const TermPtr& t);

std::string sequential_violation(const TermPtr& t)
{
    if (t->kind() == TermKind::Const)
        return {};
    if (t->kind() == TermKind::Par)
        return "parallel composition in sequential position: " + t->text();
    return guarded_violation(t);
}

std::string guarded_violation(const TermPtr& t)
{
    switch (t->kind()) {
    case TermKind::Nil:
        return {};
    case TermKind::Prefix:
        return sequential_violation(t->body());
    case TermKind::Sum:
        for (const TermPtr* op : {&t->left(), &t->right()}) {
            if (!(*op)->is_guarded())
                return "unguarded summand " + (*op)->text();
            if (auto v = guarded_violation(*op); !v.empty())
                return v;
        }
        return {};
    default:
        return "not a guarded process: " + t->text();
    }
}

} // namespace

std::string category_violation(const TermPtr& term)
{
    if (term->kind() == TermKind::Par) {
        if (auto v = category_violation(term->left()); !v.empty())
            return v;
        return category_violation(term->right());
    }
    return sequential_violation(term);
}

Spec parse_spec(std::string_view text)
{
    Parser p(tokenize(text), Spec{});
    return p.parse_file();
}

TermPtr parse_term(std::string_view text, const Spec& context)
{
    Parser p(tokenize(text), context);
    return p.parse_single();
}

} // namespace cfm
