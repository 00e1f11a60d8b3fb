#include <gtest/gtest.h>

#include "brute.hpp"
#include "tgic/corpus.hpp"
#include "tgic/minrank.hpp"
#include "tgic/random.hpp"

using namespace tgic;

TEST(Minrank, SmallCases) {
  Field f(2);
  EXPECT_EQ(minrank(PartialMatrix::from_rows({"1x", "x1"}), f), 1u);
  EXPECT_EQ(minrank(PartialMatrix::from_rows({"10", "01"}), f), 2u);
  EXPECT_EQ(minrank(PartialMatrix::from_rows({"1xx", "x1x", "xx1"}), f), 1u);
  EXPECT_EQ(minrank(PartialMatrix::from_rows({"1x0", "01x", "x01"}), f), 2u);
  EXPECT_EQ(minrank(PartialMatrix(0, 3), f), 0u);
  EXPECT_EQ(minrank(PartialMatrix::from_rows({"0000"}), f), 0u);
  EXPECT_EQ(minrank(PartialMatrix::from_rows({"1x0", "01x", "x01"}), Field(3)), 2u);
}

TEST(Minrank, CorpusBlocks) {
  Field f(2);
  for (const auto& e : corpus_extensions()) {
    auto spec = ExtensionSpec::from_matrix(e.matrix(), e.blocks);
    for (std::size_t i = 0; i < spec.u(); ++i) EXPECT_EQ(minrank(spec.sub[i], f), e.mrk[i]) << e.id << " " << i;
  }
  for (const auto& c : corpus_instances()) {
    auto p = partition(c.instance());
    for (Part a : kParts) EXPECT_EQ(minrank(p.diag(a), f), c.mrk[idx(a)]) << c.id << " " << part_name(a);
  }
}

class MinrankVsBrute : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(MinrankVsBrute, BothStrategies) {
  const std::uint32_t q = GetParam();
  Field f(q);
  Rng rng(100 + q);
  const std::size_t max_x = q == 2 ? 10 : q == 3 ? 6 : 4;
  for (int t = 0; t < (q == 2 ? 300 : 120); ++t) {
    const std::size_t m = rng.between(1, q == 2 ? 5 : 4), n = m + rng.below(q == 2 ? 3 : 2);
    auto fx = random_fitting(rng, n, m, max_x);
    const std::size_t want = brute::minrank(fx, q);
    for (Strategy s : {Strategy::Auto, Strategy::SpanSearch, Strategy::RankTargeted}) {
      auto r = minrank_search(fx, f, {}, s);
      ASSERT_TRUE(r.exact);
      EXPECT_EQ(r.upper, want) << fx.to_string() << strategy_name(s);
      EXPECT_TRUE(completes(r.completion, fx));
      EXPECT_EQ(brute::rank(r.completion, q), want);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, MinrankVsBrute, ::testing::Values(2u, 3u, 5u));

TEST(Minrank, BudgetGivesBounds) {
  Rng rng(7);
  Field f(2);
  auto fx = random_fitting(rng, 14, 12, 60, 70);
  Budget b;
  b.max_x = 2;
  b.max_subspaces = 4;
  auto r = minrank_search(fx, f, b);
  EXPECT_LE(r.lower, r.upper);
  EXPECT_TRUE(completes(r.completion, fx));
  if (!r.exact) { EXPECT_THROW(r.value(), BudgetExceeded); }
}

TEST(Witness, Normalized) {
  Rng rng(8);
  Field f(2);
  for (int t = 0; t < 200; ++t) {
    auto fx = random_fitting(rng, rng.between(2, 6), rng.between(2, 5), 8);
    auto w = minrank_witness(fx, f);
    EXPECT_TRUE(check_witness(w, fx, f));
    EXPECT_EQ(w.r, brute::rank(w.F, 2));
    Mat lead = w.leading();
    EXPECT_EQ(brute::rank(lead, 2), w.r);
    Mat rest(0, w.F.cols());
    for (std::size_t k = w.r; k < w.row_perm.size(); ++k) rest.append_row(w.F.row(w.row_perm[k] - 1));
    if (rest.rows()) { EXPECT_EQ(multiply(w.P, lead, f), rest); }
    std::vector<std::size_t> sorted = w.row_perm;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, detail::iota1(fx.rows()));
    for (std::size_t k = w.r + 1; k < w.row_perm.size(); ++k) EXPECT_LT(w.row_perm[k - 1], w.row_perm[k]);
  }
}

TEST(Witness, MakeWitnessPicksEarliestRows) {
  Field f(2);
  auto w = make_witness(Mat{{1, 1}, {1, 1}, {0, 1}}, f);
  EXPECT_EQ(w.r, 2u);
  EXPECT_EQ(w.row_perm, (std::vector<std::size_t>{1, 3, 2}));
  EXPECT_EQ(w.P, (Mat{{1, 0}}));
}

TEST(Completions, EnumerationMatchesBrute) {
  Rng rng(9);
  Field f(2);
  for (int t = 0; t < 100; ++t) {
    auto fx = random_fitting(rng, rng.between(1, 4), rng.between(1, 4), 7);
    const std::size_t r = brute::minrank(fx, 2);
    std::size_t expected = 0;
    std::vector<std::pair<std::size_t, std::size_t>> xs;
    for (std::size_t i = 0; i < fx.rows(); ++i)
      for (std::size_t j = 0; j < fx.cols(); ++j)
        if (fx(i, j) == Cell::X) xs.emplace_back(i, j);
    for (std::uint64_t code = 0; code < (1ull << xs.size()); ++code) {
      Mat m = fx.zero_completion();
      for (std::size_t k = 0; k < xs.size(); ++k) m(xs[k].first, xs[k].second) = (code >> k) & 1;
      expected += brute::rank(m, 2) <= r;
    }
    std::size_t seen = 0;
    EXPECT_TRUE(for_each_completion(fx, f, r, {}, [&](const Mat& m) {
      EXPECT_TRUE(completes(m, fx));
      EXPECT_LE(brute::rank(m, 2), r);
      ++seen;
      return true;
    }));
    EXPECT_EQ(seen, expected);
    auto all = all_min_completions(fx, f, {}, 1000);
    EXPECT_EQ(all.size(), expected);
  }
}

TEST(RowPatterns, CompleteInSpan) {
  Field f(2);
  auto fx = PartialMatrix::from_rows({"1x0", "x1x"});
  auto c = detail::complete_in_span(fx, Mat{{1, 1, 0}}, f);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, (Mat{{1, 1, 0}, {1, 1, 0}}));
  EXPECT_FALSE(detail::complete_in_span(fx, Mat{{1, 0, 1}}, f).has_value());
}

TEST(BlockTriangular, SumOfDiagonalBlocks) {
  Rng rng(10);
  Field f(2);
  for (int t = 0; t < 60; ++t) {
    auto tri = random_triangular(rng, rng.between(2, 3), 3, 10);
    EXPECT_EQ(brute::minrank(tri.assembled, 2), block_triangular_minrank(tri.blocks, f));
    EXPECT_EQ(minrank(tri.assembled, f), block_triangular_minrank(tri.blocks, f));
  }
}
