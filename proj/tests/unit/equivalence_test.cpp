#include <gtest/gtest.h>

#include "cfm/equivalence.hpp"
#include "cfm/parser.hpp"
#include "cfm/random_spec.hpp"
#include "cfm/security.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace cfm;

namespace {

PlaceId at(const Net& n, const std::string& name) { return *n.find_place(name); }

bool related(const Net& n, const Partition& p, const std::string& a, const std::string& b)
{
    return p.related(at(n, a), at(n, b));
}

RandomNetOptions small_nets()
{
    RandomNetOptions o;
    o.max_places = 12;
    o.max_transitions = 24;
    return o;
}

// Silent paths of length 1..6 starting at s.
void silent_paths(const Net& n, std::vector<PlaceOrTheta>& path, std::vector<std::vector<PlaceOrTheta>>& out)
{
    if (path.size() > 6 || !path.back())
        return;
    for (std::size_t i : n.outgoing(*path.back())) {
        const Transition& t = n.transitions()[i];
        if (!t.label.is_tau())
            continue;
        path.push_back(t.post);
        out.push_back(path);
        silent_paths(n, path, out);
        path.pop_back();
    }
}

} // namespace

TEST(BranchingBisim, ChoiceTiming)
{
    Net n = cfm::testing::choice_timing_net();
    Partition p = branching_bisim(n);
    EXPECT_FALSE(related(n, p, "s1", "s3"));
    EXPECT_FALSE(related(n, p, "s2", "s4"));
    EXPECT_FALSE(related(n, p, "s2", "s5"));
    EXPECT_FALSE(related(n, p, "s6", "s8"));
    EXPECT_FALSE(p.related(at(n, "s7"), std::nullopt));
}

TEST(BranchingBisim, Stuttering)
{
    Net n = cfm::testing::stuttering_net();
    Partition p = branching_bisim(n);
    EXPECT_FALSE(related(n, p, "s1", "s4"));
    EXPECT_FALSE(related(n, p, "s1", "s2"));
    EXPECT_FALSE(related(n, p, "s2", "s4"));
    EXPECT_TRUE(related(n, p, "s3", "s5"));
}

TEST(BranchingBisim, SilentStepIntoEquivalentPlace)
{
    Spec s = parse_spec("main := tau.a.0 | a.0 | b.0 + tau.(b.0 + c.0) | b.0 + c.0 | c.0 + tau.b.0");
    Net n = build_net(s);
    Partition p = branching_bisim(n);
    EXPECT_TRUE(related(n, p, "tau.a.0", "a.0"));
    EXPECT_TRUE(related(n, p, "b.0 + tau.(b.0 + c.0)", "b.0 + c.0"));
    EXPECT_FALSE(related(n, p, "c.0 + tau.b.0", "b.0 + c.0"));
}

TEST(BranchingBisim, DivergenceIsNotObserved)
{
    Spec s = parse_spec("C := tau.C\nmain := C | 0 + 0");
    Net n = build_net(s);
    Partition p = branching_bisim(n);
    EXPECT_TRUE(related(n, p, "C", "0 + 0"));
    EXPECT_FALSE(rooted_pairs(n, p, at(n, "C"), at(n, "0 + 0")));
}

TEST(BranchingBisim, ThetaIsAlone)
{
    Net n = cfm::testing::choice_timing_net();
    Partition p = branching_bisim(n);
    for (PlaceId s = 0; s < n.place_count(); ++s)
        EXPECT_NE(p.class_of(s), p.theta_class());
    EXPECT_TRUE(p.related(std::nullopt, std::nullopt));
}

TEST(BranchingBisim, MatchesNaiveFixpoint)
{
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        Net n = random_net(rng);
        ASSERT_EQ(branching_bisim(n), cfm::testing::naive_branching_fixpoint(n)) << i;
    }
    for (const auto& e : cfm::testing::corpus()) {
        Spec s = parse_spec(e.text);
        Net low = restrict_net(build_net(s), hidden_actions(s));
        EXPECT_EQ(branching_bisim(low), cfm::testing::naive_branching_fixpoint(low)) << e.name;
    }
}

TEST(BranchingBisim, IsABranchingBisimulation)
{
    Rng rng(32);
    for (int i = 0; i < 200; ++i) {
        Net n = random_net(rng);
        auto v = cfm::testing::branching_violation(n, branching_bisim(n));
        ASSERT_FALSE(v) << *v;
    }
}

TEST(BranchingBisim, MergingClassesBreaksIt)
{
    Rng rng(33);
    for (int i = 0; i < 100; ++i) {
        Net n = random_net(rng, small_nets());
        Partition p = branching_bisim(n);
        auto classes = p.classes();
        for (std::size_t a = 0; a < classes.size(); ++a)
            for (std::size_t b = a + 1; b < classes.size(); ++b) {
                std::vector<std::size_t> block(n.place_count());
                for (PlaceId s = 0; s < n.place_count(); ++s)
                    block[s] = p.class_of(s) == b ? a : p.class_of(s);
                ASSERT_TRUE(cfm::testing::branching_violation(n, Partition(block)));
            }
    }
}

TEST(BranchingBisim, StutteringProperty)
{
    Rng rng(34);
    for (int i = 0; i < 200; ++i) {
        Net n = random_net(rng, small_nets());
        Partition p = branching_bisim(n);
        for (PlaceId s = 0; s < n.place_count(); ++s) {
            std::vector<PlaceOrTheta> path{s};
            std::vector<std::vector<PlaceOrTheta>> paths;
            silent_paths(n, path, paths);
            for (const auto& ps : paths) {
                if (!p.related(ps.front(), ps.back()))
                    continue;
                for (const auto& mid : ps)
                    ASSERT_TRUE(p.related(ps.front(), mid));
            }
        }
    }
}

TEST(RootedPairs, Examples)
{
    Spec s = parse_spec("main := tau.a.0 | a.0 | 0 + 0");
    Net n = build_net(s);
    Partition p = branching_bisim(n);
    EXPECT_FALSE(rooted_pairs(n, p, at(n, "tau.a.0"), at(n, "a.0")));
    for (PlaceId q = 0; q < n.place_count(); ++q)
        EXPECT_TRUE(rooted_pairs(n, p, q, q));
    EXPECT_TRUE(team_equivalent(parse_term("tau.a.0", s), parse_term("a.0", s), s));
    EXPECT_FALSE(rooted_team_equivalent(parse_term("tau.a.0", s), parse_term("a.0", s), s));
    EXPECT_FALSE(team_equivalent(parse_term("b.0 + tau.a.0", s), parse_term("b.0 + a.0", s), s));
}

TEST(RootedPairs, ImpliesBranching)
{
    Rng rng(35);
    for (int i = 0; i < 200; ++i) {
        Net n = random_net(rng, small_nets());
        Partition p = branching_bisim(n);
        for (PlaceId a = 0; a < n.place_count(); ++a)
            for (PlaceId b = 0; b < n.place_count(); ++b)
                if (rooted_pairs(n, p, a, b)) {
                    ASSERT_TRUE(p.related(a, b));
                }
    }
}

TEST(MarkingsEquiv, Examples)
{
    Spec s = parse_spec(cfm::testing::corpus_text("parallel-leak"));
    Net low = restrict_net(build_net(s), hidden_actions(s));
    Partition p = branching_bisim(low);
    EXPECT_TRUE(markings_equiv(p, Marking(), Marking()));
    EXPECT_TRUE(markings_equiv(p, low.initial(), low.initial()));
    EXPECT_FALSE(markings_equiv(p, Marking::single(at(low, "C\\H")), Marking::single(at(low, "B\\H"))));
    EXPECT_FALSE(markings_equiv(p, Marking::single(at(low, "B\\H")), Marking()));
}

TEST(MarkingsEquiv, AdditiveSubtractiveSized)
{
    Rng rng(36);
    for (int i = 0; i < 200; ++i) {
        Net n = random_net(rng, small_nets());
        Partition p = branching_bisim(n);
        auto random_marking = [&] {
            Marking m;
            for (std::size_t k = rng() % 4; k > 0; --k)
                m.add(static_cast<PlaceId>(rng() % n.place_count()));
            return m;
        };
        for (int j = 0; j < 20; ++j) {
            Marking m1 = random_marking(), m2 = random_marking(), m3 = random_marking(), m4 = random_marking();
            if (markings_equiv(p, m1, m2)) {
                ASSERT_EQ(m1.size(), m2.size());
            }
            if (markings_equiv(p, m1, m2) && markings_equiv(p, m3, m4)) {
                ASSERT_TRUE(markings_equiv(p, m1 + m3, m2 + m4));
            }
            if (markings_equiv(p, m1 + m3, m2 + m4) && markings_equiv(p, m1, m2)) {
                ASSERT_TRUE(markings_equiv(p, m3, m4));
            }
        }
    }
}

TEST(StrongBisim, SequentialAndParallelLeakAgree)
{
    Spec s = parse_spec("high h\nA := h.B + l.A\nB := l.B\nC := h.B\nmain := A");
    Lts left = build_lts(constant("A"), s);
    Lts right = build_lts(parse_term("C | B", s), s);
    LabelledGraph g = to_graph(left);
    LabelledGraph r = to_graph(right);
    for (const auto& e : r.edges)
        g.edges.push_back({e.from + left.states.size(), e.label, e.to + left.states.size()});
    g.states = left.states.size() + right.states.size();
    auto cls = strong_bisimulation(g);
    EXPECT_EQ(cls[0], cls[left.states.size()]);

    LabelledGraph pruned;
    pruned.states = left.states.size();
    for (const auto& e : g.edges)
        if (e.label != "h" && e.from < left.states.size())
            pruned.edges.push_back(e);
    auto low = strong_bisimulation(pruned);
    EXPECT_EQ(low[0], low[1]);
}

TEST(StrongBisim, DeadlockAndTrivia)
{
    LabelledGraph one;
    one.states = 1;
    EXPECT_EQ(strong_bisimulation(one), std::vector<std::size_t>{0});

    LabelledGraph g;
    g.states = 4;
    g.edges = {{0, "a", 1}, {2, "a", 3}, {3, "b", 3}};
    auto cls = strong_bisimulation(g);
    EXPECT_NE(cls[0], cls[2]);
    EXPECT_NE(cls[1], cls[3]);
}

TEST(ExplainDifference, NamesTheUnmatchedMove)
{
    Net n = cfm::testing::choice_timing_net();
    Partition p = branching_bisim(n);
    std::string why = explain_difference(n, p, at(n, "s6"), at(n, "s8"));
    EXPECT_NE(why.find("can do a"), std::string::npos) << why;
    EXPECT_NE(explain_difference(n, p, at(n, "s7"), std::nullopt).find("θ"), std::string::npos);
}
