#include <gtest/gtest.h>

#include "axioms.hpp"
#include "cfm/parser.hpp"
#include "cfm/random_spec.hpp"
#include "cfm/security.hpp"
#include "cfm/typing.hpp"
#include "corpus.hpp"

using namespace cfm;

namespace {

TypingJudgment type_of(const std::string& text) { return type_check(parse_spec(text)); }

} // namespace

TEST(Typing, GuardedLoopIsTyped)
{
    TypingJudgment j = type_of(cfm::testing::corpus_text("guarded-loop"));
    ASSERT_TRUE(j.typed) << j.reason;
    EXPECT_EQ(j.derivation->rule, "const-unfold");
    ASSERT_EQ(j.derivation->premises.size(), 1u);
    const Derivation& body = *j.derivation->premises[0];
    EXPECT_EQ(body.rule, "sum-high");
    EXPECT_EQ(body.scanned, std::set<std::string>{"C"});
    EXPECT_EQ(body.premises[0]->term->text(), "l.C");
    EXPECT_EQ(body.premises[0]->premises[0]->rule, "const-scanned");
    EXPECT_TRUE(j.reordered_bodies.empty());
}

TEST(Typing, LeakyLoopFailsAtHighPrefix)
{
    TypingJudgment j = type_of(cfm::testing::corpus_text("leaky-loop"));
    EXPECT_FALSE(j.typed);
    EXPECT_EQ(j.failing_subterm->text(), "h.D");
}

TEST(Typing, ReorderingFound)
{
    TypingJudgment j = type_of(cfm::testing::corpus_text("reorder-needed"));
    ASSERT_TRUE(j.typed) << j.reason;
    EXPECT_EQ(j.reordered->text(), "h.l.0 + l.0");
    EXPECT_EQ(j.derivation->rule, "sum-high");
}

TEST(Typing, ReorderedConstantBodiesReported)
{
    TypingJudgment j = type_of("high h\nC := l.C + h.l.C\nmain := C");
    ASSERT_TRUE(j.typed) << j.reason;
    ASSERT_EQ(j.reordered_bodies.count("C"), 1u);
    EXPECT_EQ(j.reordered_bodies.at("C")->text(), "h.l.C + l.C");
    EXPECT_EQ(j.reordered->text(), "C");
}

TEST(Typing, SilentBodyBlocksHighPrefix)
{
    TypingJudgment j = type_of(cfm::testing::corpus_text("silent-then-stuck"));
    EXPECT_FALSE(j.typed);
    EXPECT_EQ(j.failing_subterm->text(), "h.tau.(0 + 0)");
}

TEST(Typing, NestedHighSummands)
{
    TypingJudgment j = type_of(cfm::testing::corpus_text("nested-high"));
    ASSERT_TRUE(j.typed) << j.reason;
    EXPECT_EQ(j.derivation->rule, "sum-high");
}

TEST(Typing, SmallCases)
{
    EXPECT_TRUE(type_of("high h\nmain := h.(0 + 0)").typed);
    EXPECT_EQ(type_of("high h\nmain := h.(0 + 0)").derivation->rule, "prefix-high-deadlock");
    EXPECT_TRUE(type_of("high h, k\nmain := h.k.(0 + 0)").typed);
    EXPECT_EQ(type_of("high h, k\nmain := h.k.(0 + 0)").derivation->rule, "prefix-high-high");
    EXPECT_FALSE(type_of("high h\nmain := h.0").typed);
    EXPECT_FALSE(type_of("high h\nmain := h.0 + 0").typed);
    EXPECT_TRUE(type_of("high h\nmain := h.tau.0 + tau.0").typed);
    EXPECT_TRUE(type_of("main := 0").typed);
    EXPECT_TRUE(type_of("main := a.0 + tau.b.0").typed);
}

TEST(Typing, ParallelNeedsBothSides)
{
    const std::string good = "h.l.0 + l.0";
    const std::string bad = "l.h.0";
    auto typed = [](const std::string& main) { return type_of("high h\nmain := " + main).typed; };
    EXPECT_TRUE(typed(good + " | " + good));
    EXPECT_FALSE(typed(good + " | " + bad));
    EXPECT_FALSE(typed(bad + " | " + good));
    EXPECT_EQ(type_of("high h\nmain := " + good + " | " + good).derivation->rule, "par");
}

TEST(Typing, AgreesWithRootedDni)
{
    for (const auto& e : cfm::testing::corpus()) {
        Spec s = parse_spec(e.text);
        EXPECT_EQ(type_check(s).typed, rooted_dni(s).secure) << e.name;
    }
    Rng rng(51);
    for (int i = 0; i < 300; ++i) {
        Spec s = random_spec(rng);
        ASSERT_EQ(type_check(s).typed, rooted_dni(s).secure) << to_string(s);
    }
}

TEST(DecideEquational, Examples)
{
    Spec s = parse_spec(cfm::testing::corpus_text("guarded-loop"));
    EXPECT_TRUE(decide_equational(parse_term("l.C", s), parse_term("l.C", s), s));
    EXPECT_TRUE(decide_equational(parse_term("l.l.0", s), parse_term("h.l.(h.l.0 + l.0) + l.l.0", s), s));
    EXPECT_FALSE(decide_equational(parse_term("tau.0", s), nil(), s));
    EXPECT_TRUE(decide_equational(parse_term("h.l.0", s), parse_term("0 + 0", s), s));
    EXPECT_FALSE(decide_equational(parse_term("h.l.0", s), nil(), s));
}

TEST(DeadlockPlace, Examples)
{
    Spec s = parse_spec("C := 0\nmain := 0");
    EXPECT_TRUE(is_deadlock_place(sum(nil(), nil()), s));
    EXPECT_FALSE(is_deadlock_place(nil(), s));
    EXPECT_TRUE(is_deadlock_place(constant("C"), s));
    EXPECT_FALSE(is_deadlock_place(parse_term("a.0", s), s));
    EXPECT_FALSE(is_deadlock_place(par(sum(nil(), nil()), sum(nil(), nil())), s));
}

TEST(Axioms, InstancesAreEquivalent)
{
    Rng rng(52);
    for (const auto& name : cfm::testing::axiom_names()) {
        for (int i = 0; i < 30; ++i) {
            auto inst = cfm::testing::instantiate(name, rng);
            ASSERT_TRUE(decide_equational(inst.lhs, inst.rhs, inst.spec))
                << name << ": " << inst.lhs->text() << " = " << inst.rhs->text() << "\n" << to_string(inst.spec);
        }
    }
}

TEST(Axioms, SideConditionsMatter)
{
    Spec s;
    // x + 0 = x needs x != 0.
    EXPECT_FALSE(decide_equational(sum(nil(), nil()), nil(), s));
    // An unguarded tau loop is only branching equivalent to its exit.
    Spec r = parse_spec("C := tau.C + a.0\nD := a.0\nmain := 0");
    EXPECT_FALSE(decide_equational(constant("C"), constant("D"), r));
}
