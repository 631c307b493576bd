#include <gtest/gtest.h>

#include "cfm/error.hpp"
#include "cfm/parser.hpp"
#include "cfm/random_spec.hpp"
#include "corpus.hpp"

using namespace cfm;

namespace {

std::pair<std::size_t, std::size_t> pos(std::size_t line, std::size_t column) { return {line, column}; }

std::pair<std::size_t, std::size_t> error_position(const std::string& text)
{
    try {
        parse_spec(text);
    } catch (const ParseError& e) {
        return {e.line(), e.column()};
    }
    ADD_FAILURE() << "accepted: " << text;
    return {0, 0};
}

} // namespace

TEST(Parser, ReadsDefinitionsAndHighActions)
{
    Spec s = parse_spec("high h\nC := h.l.C + l.C\nmain := C | l.0\n");
    EXPECT_EQ(s.high_actions, std::set<std::string>{"h"});
    ASSERT_TRUE(s.defines("C"));
    EXPECT_EQ(s.body("C")->text(), "h.l.C + l.C");
    EXPECT_EQ(s.main->text(), "C | l.0");
    EXPECT_TRUE(s.body("C")->left()->action().is_high());
    EXPECT_TRUE(s.body("C")->right()->action().is_low());
}

TEST(Parser, PrecedenceAndAssociativity)
{
    Spec s = parse_spec("main := a.0 + b.0 + c.0 | d.0 | e.0");
    EXPECT_EQ(s.main->kind(), TermKind::Par);
    EXPECT_EQ(s.main->left()->kind(), TermKind::Par);
    EXPECT_EQ(s.main->left()->left()->text(), "a.0 + b.0 + c.0");
    EXPECT_EQ(s.main->left()->left()->left()->text(), "a.0 + b.0");

    Spec nested = parse_spec("main := a.0 + (b.0 + c.0)");
    EXPECT_EQ(nested.main->text(), "a.0 + (b.0 + c.0)");
    EXPECT_EQ(nested.main->right()->kind(), TermKind::Sum);
}

TEST(Parser, SilentActionAndSeparators)
{
    Spec s = parse_spec("D := tau.b.0 + c.0; main := D");
    EXPECT_TRUE(s.body("D")->left()->action().is_tau());
    EXPECT_EQ(s.main->text(), "D");
}

TEST(Parser, ContinuesAfterOperatorAndInsideParentheses)
{
    Spec s = parse_spec("main := a.0 +\n  b.0 | (c.0\n + d.0)\n");
    EXPECT_EQ(s.main->text(), "a.0 + b.0 | c.0 + d.0");
}

TEST(Parser, CommentsAndBlankLines)
{
    Spec s = parse_spec("# leading comment\n\nhigh h # trailing\n\nmain := h.0\n# end\n");
    EXPECT_EQ(s.main->text(), "h.0");
}

TEST(Parser, RejectsConstantAsSummand) { EXPECT_EQ(error_position("C := a.0\nmain := C + a.0\n"), pos(2, 9)); }

TEST(Parser, RejectsParallelUnderPrefix) { EXPECT_EQ(error_position("main := a.(b.0 | c.0)").first, 1u); }

TEST(Parser, RejectsParallelInsideChoice)
{
    EXPECT_THROW(parse_spec("main := a.0 + (b.0 | c.0)"), ParseError);
}

TEST(Parser, RejectsUnguardedConstantBody)
{
    EXPECT_EQ(error_position("B := a.B\nC := B\nmain := C").first, 2u);
    EXPECT_THROW(parse_spec("C := a.0 | b.0\nmain := C"), ParseError);
}

TEST(Parser, RejectsUnknownConstant) { EXPECT_EQ(error_position("main := a.0 +\n b.Q"), pos(2, 4)); }

TEST(Parser, RejectsDuplicatesAndMissingMain)
{
    EXPECT_THROW(parse_spec("C := 0\nC := a.0\nmain := C"), ParseError);
    EXPECT_THROW(parse_spec("main := 0\nmain := 0"), ParseError);
    EXPECT_THROW(parse_spec("C := 0\n"), ParseError);
}

TEST(Parser, RejectsBadHighDeclarations)
{
    EXPECT_THROW(parse_spec("high tau\nmain := 0"), ParseError);
    EXPECT_THROW(parse_spec("high H\nmain := 0"), ParseError);
}

TEST(Parser, RejectsStrayCharacters)
{
    EXPECT_EQ(error_position("main := a.0 & b.0"), pos(1, 13));
    EXPECT_THROW(parse_spec("main := 0a"), ParseError);
    EXPECT_THROW(parse_spec("main := a.0 )"), ParseError);
    EXPECT_THROW(parse_spec("main := a"), ParseError);
}

TEST(Parser, HighActionsResolvedInsideTerms)
{
    Spec s = parse_spec("high h\nmain := l.0");
    TermPtr t = parse_term("h.l.0 + l.0", s);
    EXPECT_TRUE(t->left()->action().is_high());
    EXPECT_THROW(parse_term("h.Q", s), ParseError);
}

TEST(Parser, CorpusParsesAndRoundTrips)
{
    for (const auto& e : cfm::testing::corpus()) {
        Spec s = parse_spec(e.text);
        Spec again = parse_spec(to_string(s));
        EXPECT_EQ(to_string(s), to_string(again)) << e.name;
        EXPECT_EQ(category_violation(s.main), "") << e.name;
    }
}

TEST(Parser, RandomSpecsRoundTrip)
{
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        Spec s = random_spec(rng);
        std::string text = to_string(s);
        Spec again = parse_spec(text);
        ASSERT_EQ(text, to_string(again));
        for (const auto& [name, body] : again.defs)
            ASSERT_TRUE(body->is_guarded()) << name;
        ASSERT_EQ(category_violation(again.main), "") << text;
    }
}

TEST(Parser, CategoryViolationSeesHandBuiltTerms)
{
    EXPECT_NE(category_violation(sum(constant("C"), nil())), "");
    EXPECT_NE(category_violation(prefix(Action::low("a"), par(nil(), nil()))), "");
    EXPECT_EQ(category_violation(par(constant("C"), prefix(Action::low("a"), constant("C")))), "");
}
