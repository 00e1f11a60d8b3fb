#include <gtest/gtest.h>

#include "brute.hpp"
#include "tgic/corpus.hpp"
#include "tgic/interaction.hpp"

using namespace tgic;

TEST(Digraph, Example1) {
  auto p = partition(corpus_instance("example1").instance());
  auto d = build_digraph(p);
  EXPECT_EQ(d.canonical(), 34);
  EXPECT_TRUE(d.has(Part::One, Part::Two));
  EXPECT_TRUE(d.has(Part::Joint, Part::Two));
  EXPECT_FALSE(d.has(Part::Two, Part::One));
  EXPECT_EQ(d.label(Part::One, Part::Two), Participation::Partial);
  EXPECT_EQ(d.label(Part::Joint, Part::Two), Participation::Full);
  EXPECT_EQ(d.label(Part::Two, Part::Joint), Participation::None);
  EXPECT_EQ(d.to_string(), "(1,2) PARTIAL, (J,2) FULL");
  auto order = topological_order(d);
  ASSERT_TRUE(order.has_value());
  EXPECT_EQ(*order, (std::array<Part, 3>{Part::One, Part::Joint, Part::Two}));
  EXPECT_TRUE(classify(p).case_one);
}

TEST(Digraph, CorpusIndices) {
  for (const auto& c : corpus_instances())
    EXPECT_EQ(build_digraph(partition(c.instance())).canonical(), c.canonical) << c.id;
}

TEST(Digraph, CanonicalRoundTrip) {
  for (int c = 1; c <= 64; ++c) EXPECT_EQ(InteractionDigraph::from_canonical(c).canonical(), c);
  EXPECT_THROW(InteractionDigraph::from_canonical(0), ValidationError);
  EXPECT_THROW(InteractionDigraph::from_canonical(65), ValidationError);
  EXPECT_EQ(InteractionDigraph::from_mask(0b101001).canonical(), 42);
}

TEST(Digraph, AcyclicityAgainstOrderings) {
  int acyclic = 0;
  for (int mask = 0; mask < 64; ++mask) {
    auto d = InteractionDigraph::from_mask(static_cast<std::uint8_t>(mask));
    const bool cyc = brute::has_cycle(static_cast<std::uint8_t>(mask));
    EXPECT_EQ(is_acyclic(d), !cyc) << mask;
    acyclic += !cyc;
    if (auto o = topological_order(d)) {
      int pos[3];
      for (int k = 0; k < 3; ++k) pos[idx((*o)[k])] = k;
      for (auto [a, b] : kEdges)
        if (d.has(a, b)) { EXPECT_LT(pos[idx(a)], pos[idx(b)]); }
    }
  }
  EXPECT_EQ(acyclic, 25);
}

TEST(Digraph, HintsPartitionCyclicGraphs) {
  std::map<Hint, int> count;
  for (int mask = 0; mask < 64; ++mask) {
    auto d = InteractionDigraph::from_mask(static_cast<std::uint8_t>(mask));
    Hint h = subcase_hint(d);
    ++count[h];
    EXPECT_EQ(h == Hint::None, is_acyclic(d));
    if (h == Hint::IIB) { EXPECT_TRUE(d.two_cycle(Part::One, Part::Joint) && d.two_cycle(Part::Two, Part::Joint)); }
    if (h == Hint::IIA) { EXPECT_FALSE(d.has(Part::Joint, Part::One) || d.has(Part::Joint, Part::Two)); }
  }
  EXPECT_EQ(count[Hint::None], 25);
  EXPECT_EQ(count[Hint::None] + count[Hint::IIA] + count[Hint::IIB] + count[Hint::IIC] + count[Hint::IID] +
                count[Hint::IIE],
            64);
  EXPECT_EQ(subcase_hint(InteractionDigraph::from_canonical(44)), Hint::IIE);
  EXPECT_EQ(subcase_hint(InteractionDigraph::from_canonical(64)), Hint::IIB);
  EXPECT_EQ(subcase_hint(InteractionDigraph::from_canonical(32)), Hint::IIC);
}

TEST(Numbering, DefaultAnchors) {
  auto t = default_numbering();
  EXPECT_EQ(t.h_of(34), 16);
  EXPECT_EQ(t.h_of(44), 59);
  EXPECT_EQ(t.h_of(40), 62);
  EXPECT_EQ(t.h_of(28), 61);
  EXPECT_FALSE(t.h_of(12).has_value());
  EXPECT_TRUE(numbering_violations(t).empty());
  EXPECT_EQ(HNumbering::parse(t.serialize()).to_h, t.to_h);
}

TEST(Numbering, ParseErrors) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      HNumbering::parse(text);
    } catch (const ValidationError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("1 1\n2 x\n"), 2u);
  EXPECT_EQ(line_of("1 1\n\n1 2\n"), 3u);
  EXPECT_EQ(line_of("1 1\n2 1\n"), 2u);
  EXPECT_EQ(line_of("65 1\n"), 1u);
  EXPECT_EQ(line_of("7\n"), 1u);
  EXPECT_EQ(HNumbering::parse("12 H58 # comment\n").h_of(12), 58);
}

TEST(Numbering, Violations) {
  EXPECT_FALSE(numbering_violations(HNumbering::parse("34 17\n")).empty());
  EXPECT_FALSE(numbering_violations(HNumbering::parse("33 16\n")).empty());
  EXPECT_FALSE(numbering_violations(HNumbering::parse("13 58\n")).empty());
  EXPECT_TRUE(numbering_violations(HNumbering::parse("12 60\n36 58\n")).empty());
}
