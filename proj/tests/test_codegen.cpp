#include <gtest/gtest.h>

#include "brute.hpp"
#include "tgic/codegen.hpp"
#include "tgic/corpus.hpp"
#include "tgic/io.hpp"
#include "tgic/oracle.hpp"
#include "tgic/random.hpp"

using namespace tgic;

namespace {

Mat column(std::string_view bits) {
  Mat m(bits.size(), 1);
  for (std::size_t i = 0; i < bits.size(); ++i) m(i, 0) = bits[i] == '1';
  return m;
}

/// Unicast inside each part; an edge (a, b) gives every receiver of a all of b.
TgicpInstance synthetic(std::array<std::size_t, 3> sizes, const std::vector<std::pair<Part, Part>>& edges) {
  TgicpInstance inst;
  std::array<std::vector<std::size_t>, 3> msgs;
  for (Part a : kParts)
    for (std::size_t k = 0; k < sizes[idx(a)]; ++k) msgs[idx(a)].push_back(++inst.m);
  for (Part a : kParts)
    for (auto j : msgs[idx(a)]) {
      if (a != Part::Two) inst.M1.push_back(j);
      if (a != Part::One) inst.M2.push_back(j);
      Receiver r;
      r.demand = j;
      for (auto [x, y] : edges)
        if (x == a) r.side.insert(r.side.end(), msgs[idx(y)].begin(), msgs[idx(y)].end());
      std::sort(r.side.begin(), r.side.end());
      inst.receivers.push_back(r);
    }
  std::sort(inst.M1.begin(), inst.M1.end());
  std::sort(inst.M2.begin(), inst.M2.end());
  inst.validate();
  return inst;
}

const std::vector<std::pair<Part, Part>> kJointEdges{
    {Part::One, Part::Joint}, {Part::Joint, Part::One}, {Part::Two, Part::Joint}, {Part::Joint, Part::Two}};

std::vector<std::pair<Part, Part>> all_edges() { return {kEdges.begin(), kEdges.end()}; }

}  // namespace

TEST(Codewords, ZeroPaddedAdd) {
  Field f(2);
  EXPECT_EQ(zp_add(column("1010"), column("110"), f), column("0110"));
  EXPECT_EQ(zp_add(column("110"), column("1010"), f), column("0110"));
  EXPECT_EQ(zp_add(Mat(0, 1), column("11"), f), column("11"));
  EXPECT_THROW(zp_add(Mat{{1, 0}}, Mat{{1}}, f), DimensionError);
  Rng rng(41);
  Field f3(3);
  for (int t = 0; t < 50; ++t) {
    Mat a(rng.between(1, 4), 3), b(rng.between(1, 4), 3), c(rng.between(1, 4), 3);
    for (Mat* m : {&a, &b, &c})
      for (std::size_t i = 0; i < m->rows(); ++i)
        for (std::size_t j = 0; j < 3; ++j) (*m)(i, j) = static_cast<Elem>(rng.below(3));
    EXPECT_EQ(zp_add(a, b, f3), zp_add(b, a, f3));
    EXPECT_EQ(zp_add(zp_add(a, b, f3), c, f3), zp_add(a, zp_add(b, c, f3), f3));
    EXPECT_EQ(zp_add(a, b, f3).rows(), std::max(a.rows(), b.rows()));
  }
}

TEST(Codewords, Slice) {
  EXPECT_EQ(slice(column("1010"), 2, 4), column("010"));
  EXPECT_EQ(slice(column("1010"), 3, 2).rows(), 0u);
  EXPECT_EQ(slice(column("1010"), 5, 4).rows(), 0u);
  EXPECT_THROW(slice(column("1010"), 0, 2), DimensionError);
  EXPECT_THROW(slice(column("1010"), 2, 5), DimensionError);
  EXPECT_THROW(slice(column("1010"), 4, 2), DimensionError);
  Mat c = column("110100");
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_EQ(vstack(slice(c, 1, k), slice(c, k + 1, 6)), c);
}

TEST(Planner, Corpus) {
  Field f(2);
  for (const auto& c : corpus_instances()) {
    auto inst = c.instance();
    auto rep = plan_and_construct(inst);
    EXPECT_EQ(construction_id(rep.construction), c.construction) << c.id;
    EXPECT_EQ(rep.upper, c.lstar) << c.id;
    EXPECT_TRUE(rep.optimal) << c.id;
    EXPECT_EQ(rep.mrk, c.mrk) << c.id;
    EXPECT_TRUE(brute::decodes_all(rep.code.global(inst.m), inst)) << c.id;
  }
}

TEST(Planner, Example1JointPlacement) {
  auto inst = corpus_instance("example1").instance();
  auto a = plan_and_construct(inst);
  EXPECT_EQ(a.code.l1(), 4u);
  EXPECT_EQ(a.code.l2(), 1u);
  PlanOptions opt;
  opt.joint_to_s2 = true;
  auto b = plan_and_construct(inst, opt);
  EXPECT_EQ(b.code.l1(), 2u);
  EXPECT_EQ(b.code.l2(), 3u);
  EXPECT_TRUE(brute::decodes_all(b.code.global(inst.m), inst));
}

TEST(Planner, H62ByChainedConstruction) {
  Field f(2);
  auto inst = corpus_instance("h62_example").instance();
  auto an = analyze(inst);
  auto ids = applicable_constructions(an);
  EXPECT_NE(std::find(ids.begin(), ids.end(), "case2e_h62"), ids.end());
  auto rep = construct_report(an, Construction::Case2E_H62);
  EXPECT_EQ(rep.upper, 5u);
  EXPECT_TRUE(rep.optimal);
  EXPECT_TRUE(verify(rep.code, inst, f).overall);
  EXPECT_THROW(construct_report(an, Construction::Case2E_H61), ValidationError);
}

TEST(Planner, H59MatchesCorrectedCode) {
  Field f(2);
  const auto& c = corpus_instance("h59_example");
  auto inst = c.instance();
  auto rep = plan_and_construct(inst);
  EXPECT_EQ(rep.code.global1(inst.m), parse_tuple(*c.S1_fixed, inst.m, f));
  EXPECT_EQ(rep.code.global2(inst.m), parse_tuple(*c.S2, inst.m, f));
}

TEST(Planner, Deterministic) {
  Rng rng(42);
  for (int t = 0; t < 30; ++t) {
    auto inst = random_instance(rng, {});
    auto a = plan_and_construct(inst), b = plan_and_construct(inst);
    EXPECT_EQ(a.code.G1, b.code.G1);
    EXPECT_EQ(a.code.G2, b.code.G2);
    EXPECT_EQ(a.construction, b.construction);
  }
}

TEST(Constructions, FullJointEdgeFormulas) {
  Field f(2);
  struct Row {
    std::array<std::size_t, 3> sizes;
    std::size_t length;
  };
  for (Row r : {Row{{2, 1, 1}, 3}, Row{{1, 2, 2}, 3}, Row{{1, 1, 2}, 2}, Row{{1, 1, 4}, 4}, Row{{2, 1, 3}, 3},
                Row{{2, 2, 1}, 4}}) {
    auto inst = synthetic(r.sizes, kJointEdges);
    auto an = analyze(inst);
    auto rep = construct_report(an, Construction::Case2B_Full);
    EXPECT_EQ(rep.upper, r.length);
    EXPECT_EQ(rep.upper, std::max(r.sizes[0] + r.sizes[1], r.sizes[2]));
    EXPECT_TRUE(verify(rep.code, inst, f).overall);
    EXPECT_TRUE(brute::decodes_all(rep.code.global(inst.m), inst));
    EXPECT_EQ(oracle_optimum(inst).length, rep.upper);
  }
}

TEST(Constructions, AllFullInteractions) {
  Field f(2);
  for (std::array<std::size_t, 3> s : {std::array<std::size_t, 3>{1, 1, 1}, {2, 2, 1}, {2, 1, 2}, {1, 2, 3}, {2, 2, 2}}) {
    auto inst = synthetic(s, all_edges());
    auto an = analyze(inst);
    ASSERT_EQ(an.digraph.full, 63);
    auto rep = construct_report(an, Construction::Case2E_Full);
    const std::size_t pair = std::max({s[0] + s[1], s[0] + s[2], s[1] + s[2]});
    EXPECT_EQ(rep.upper, s[2] <= std::min(s[0], s[1]) ? s[0] + s[1] : pair);
    EXPECT_TRUE(brute::decodes_all(rep.code.global(inst.m), inst));
    const std::size_t opt = oracle_optimum(inst).length;
    EXPECT_LE(opt, rep.upper);
    if (rep.optimal) { EXPECT_EQ(opt, rep.upper); }
  }
}

TEST(Constructions, EveryDraftVerifiesAndRespectsOracle) {
  Rng rng(43);
  Field f(2);
  std::map<std::string, int> applied;
  for (int t = 0; t < 400; ++t) {
    RandomSpec spec;
    spec.min_m = 3;
    spec.mode = static_cast<RandomMode>(t % 2);
    auto inst = random_instance(rng, spec);
    auto an = analyze(inst);
    const std::size_t opt = oracle_optimum(inst).length;
    const auto lb = lower_bound(an);
    EXPECT_LE(lb.value, opt);
    for (Construction c : kPlanOrder) {
      auto d = construct(an, c);
      if (!d) continue;
      ++applied[construction_id(c)];
      auto rep = finalize(an, *d, &lb);
      const bool ok = brute::decodes_all(rep.code.global(inst.m), inst);
      EXPECT_EQ(ok, verify(rep.code, inst, f).overall);
      EXPECT_TRUE(ok) << construction_id(c) << "\n" << serialize_instance(inst);
      if (!ok) continue;
      EXPECT_GE(rep.upper, opt) << construction_id(c);
      if (rep.optimal) { EXPECT_EQ(rep.upper, opt) << construction_id(c) << "\n" << serialize_instance(inst); }
    }
    auto best = plan_and_construct(an);
    EXPECT_TRUE(verify(best.code, inst, f).overall);
    EXPECT_LE(best.lower, opt);
    EXPECT_GE(best.upper, opt);
  }
  for (const char* id : {"case1_2a", "case2b_jointext", "case2c", "case2d", "case2e_jk", "fallback"})
    EXPECT_GT(applied[id], 0) << id;
}

TEST(Constructions, FallbackIsSound) {
  Rng rng(44);
  Field f(2);
  int seen = 0;
  for (int t = 0; t < 3000 && seen < 10; ++t) {
    RandomSpec spec;
    spec.min_m = 4;
    auto inst = random_instance(rng, spec);
    auto rep = plan_and_construct(inst);
    if (rep.construction != Construction::Fallback) continue;
    ++seen;
    const std::size_t opt = oracle_optimum(inst).length;
    EXPECT_TRUE(verify(rep.code, inst, f).overall);
    EXPECT_LE(rep.lower, opt);
    EXPECT_GE(rep.upper, opt);
    EXPECT_EQ(rep.optimal, rep.lower == rep.upper);
  }
  EXPECT_GT(seen, 0);
}

TEST(Swap, Involution) {
  auto inst = corpus_instance("example1").instance();
  EXPECT_EQ(swap_senders(swap_senders(inst)), inst);
  auto d = build_digraph(partition(swap_senders(inst)));
  EXPECT_TRUE(d.has(Part::Two, Part::One));
  EXPECT_TRUE(d.has(Part::Joint, Part::One));
  EXPECT_EQ(d.label(Part::Joint, Part::One), Participation::Full);
  EXPECT_FALSE(d.has(Part::One, Part::Two));
  auto an = analyze(inst);
  auto sw = swap_analysis(an);
  EXPECT_EQ(sw.r(Part::One), an.r(Part::Two));
  EXPECT_EQ(sw.r(Part::Two), an.r(Part::One));
}

TEST(Swap, CaseTwoDMirrorsTwoC) {
  Field f(2);
  auto inst = swap_senders(corpus_instance("case2c_example").instance());
  auto rep = plan_and_construct(inst);
  EXPECT_EQ(rep.construction, Construction::Case2D);
  EXPECT_EQ(rep.upper, 5u);
  EXPECT_TRUE(rep.optimal);
  EXPECT_TRUE(verify(rep.code, inst, f).overall);
}

TEST(LowerBound, DisjointSenders) {
  Rng rng(45);
  RandomSpec spec;
  spec.mode = RandomMode::Disjoint;
  for (int t = 0; t < 50; ++t) {
    auto an = analyze(random_instance(rng, spec));
    EXPECT_EQ(lower_bound(an).value, an.r(Part::One) + an.r(Part::Two));
  }
}
