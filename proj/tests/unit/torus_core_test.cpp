#include <gtest/gtest.h>

#include <stdexcept>

#include "cubepack/code_set.hpp"
#include "cubepack/packing.hpp"
#include "cubepack/rng.hpp"
#include "oracles.hpp"

using namespace cubepack;

namespace {

Code L(std::initializer_list<int> c) { return CubeLabel(c).code(); }

Packing random_packing_naive(int dim, Rng& rng) {
  Packing p(dim);
  const auto n = label_count(dim);
  for (int tries = 0; tries < 40; ++tries) {
    const auto y = static_cast<Code>(rng.below(n));
    bool ok = true;
    for (Code x : p.codes()) ok = ok && !codes_overlap(x, y);
    if (ok) p = p.with(y);
  }
  return p;
}

}  // namespace

TEST(Label, EncodeDecodeIsBijection) {
  for (int d = 1; d <= 5; ++d) {
    for (std::size_t c = 0; c < label_count(d); ++c) {
      const auto coords = decode(d, static_cast<Code>(c));
      EXPECT_EQ(encode(d, coords), c);
      EXPECT_EQ(oracle::code_of(coords), c);
    }
  }
  EXPECT_EQ(encode(3, std::vector<int>{1, 2, 3}), 1 * 16 + 2 * 4 + 3);
}

TEST(Label, RejectsBadInput) {
  EXPECT_THROW(encode(2, std::vector<int>{1, 4}), std::invalid_argument);
  EXPECT_THROW(encode(2, std::vector<int>{1}), std::invalid_argument);
  EXPECT_THROW(CubeLabel(2, 16), std::invalid_argument);
  EXPECT_THROW(overlaps(CubeLabel{0, 0}, CubeLabel{0, 0, 0}), std::invalid_argument);
}

TEST(Overlaps, Examples) {
  EXPECT_FALSE(overlaps(CubeLabel{0, 0, 0}, CubeLabel{3, 2, 3}));
  EXPECT_TRUE(overlaps(CubeLabel{0, 0, 0}, CubeLabel{0, 0, 0}));
  EXPECT_TRUE(overlaps(CubeLabel{1, 3}, CubeLabel{0, 0}));
  EXPECT_FALSE(overlaps(CubeLabel{1, 3}, CubeLabel{3, 3}));
}

TEST(Overlaps, MatchesIntervalOracleExhaustively) {
  for (int d = 1; d <= 3; ++d) {
    for (std::size_t x = 0; x < label_count(d); ++x) {
      for (std::size_t y = 0; y < label_count(d); ++y) {
        const bool fast = codes_overlap(static_cast<Code>(x), static_cast<Code>(y));
        EXPECT_EQ(fast, oracle::cubes_meet(oracle::coords_of(d, static_cast<Code>(x)),
                                           oracle::coords_of(d, static_cast<Code>(y))));
        EXPECT_EQ(fast, codes_overlap(static_cast<Code>(y), static_cast<Code>(x)));
      }
    }
  }
}

TEST(Overlaps, InvariantUnderCommonTranslation) {
  Rng rng(7);
  for (int it = 0; it < 2000; ++it) {
    const int d = 1 + static_cast<int>(rng.below(6));
    const auto n = label_count(d);
    const auto x = static_cast<Code>(rng.below(n));
    const auto y = static_cast<Code>(rng.below(n));
    const auto t = static_cast<Code>(rng.below(n));
    EXPECT_EQ(codes_overlap(x, y), codes_overlap(add_codes(x, t), add_codes(y, t)));
  }
}

TEST(IsPacking, Examples) {
  const auto fig = chiral_packing_3d();
  EXPECT_TRUE(is_packing(3, fig.codes()));
  const std::vector<Code> d1 = {0, 1};
  EXPECT_FALSE(is_packing(1, d1));
  const std::vector<Code> brick = {L({0, 0}), L({0, 2}), L({2, 1}), L({2, 3})};
  EXPECT_TRUE(is_packing(2, brick));
  EXPECT_THROW(Packing(1, std::vector<Code>{0, 1}), std::invalid_argument);
  EXPECT_THROW(Packing(1, std::vector<Code>{0, 0}), std::invalid_argument);
}

TEST(FreeLabels, Examples) {
  EXPECT_TRUE(free_labels(chiral_packing_3d()).empty());
  EXPECT_EQ(free_labels(Packing(1, std::vector<Code>{0})), std::vector<Code>{2});
  const auto got = free_labels(Packing(2, {{0, 0}, {0, 2}}));
  const std::vector<Code> want = {L({2, 0}), L({2, 1}), L({2, 2}), L({2, 3})};
  EXPECT_EQ(got, want);
}

TEST(FreeLabels, EmptyPackingBlocksNothing) {
  for (int d = 1; d <= 6; ++d) EXPECT_EQ(free_labels(Packing(d)).size(), label_count(d));
}

TEST(FreeLabels, MatchesOracleAndExtendsPacking) {
  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    const int d = 1 + static_cast<int>(rng.below(4));
    const auto p = random_packing_naive(d, rng);
    const auto free = free_labels(p);
    const std::vector<Code> codes(p.codes().begin(), p.codes().end());
    EXPECT_EQ(free, oracle::free_labels(d, codes));
    EXPECT_EQ(free, CompatibilityGraph(d).free_set(p.codes()).to_vector());
    EXPECT_EQ(free, CompatibilityGraph(d, 0).free_set(p.codes()).to_vector());
    for (Code y : free) EXPECT_NO_THROW(p.with(y));
    EXPECT_LE(p.size(), std::size_t{1} << d);
  }
}

TEST(IsTiling, Examples) {
  for (int d = 1; d <= 6; ++d) EXPECT_TRUE(is_tiling(regular_tiling(d)));
  EXPECT_FALSE(is_tiling(chiral_packing_3d()));
  EXPECT_TRUE(is_tiling(Packing(2, {{0, 0}, {0, 2}, {2, 1}, {2, 3}})));
}

TEST(RegularTiling, Examples) {
  EXPECT_EQ(regular_tiling(1).codes().size(), 2u);
  EXPECT_EQ(regular_tiling(1), Packing(1, std::vector<Code>{0, 2}));
  EXPECT_EQ(regular_tiling(2), Packing(2, {{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
  EXPECT_EQ(regular_tiling(3).size(), 8u);
  for (int d = 1; d <= 5; ++d) EXPECT_TRUE(free_labels(regular_tiling(d)).empty());
}

TEST(ProductPacking, ChiralSquaredIsNonExtendibleSixteen) {
  const auto fig = chiral_packing_3d();
  const auto prod = product_packing(fig, fig);
  EXPECT_EQ(prod.dim(), 6);
  EXPECT_EQ(prod.size(), 16u);
  EXPECT_TRUE(is_packing(6, prod.codes()));
  EXPECT_TRUE(free_labels(prod).empty());
}

TEST(ProductPacking, RegularTimesRegular) {
  EXPECT_EQ(product_packing(regular_tiling(1), regular_tiling(1)), regular_tiling(2));
  EXPECT_EQ(product_packing(regular_tiling(2), regular_tiling(3)), regular_tiling(5));
}

TEST(ProductPacking, CardinalityAndPackingProperty) {
  Rng rng(5);
  for (int it = 0; it < 100; ++it) {
    const int n = 1 + static_cast<int>(rng.below(3));
    const int m = 1 + static_cast<int>(rng.below(3));
    const auto p = random_packing_naive(n, rng);
    const auto q = random_packing_naive(m, rng);
    const auto prod = product_packing(p, q);
    EXPECT_EQ(prod.size(), p.size() * q.size());
    EXPECT_TRUE(is_packing(n + m, prod.codes()));
  }
}

TEST(Lift, ChiralLiftIsNonExtendibleTwelve) {
  const auto lifted = lift(chiral_packing_3d(), regular_tiling(3));
  EXPECT_EQ(lifted.dim(), 4);
  EXPECT_EQ(lifted.size(), 12u);
  EXPECT_TRUE(is_packing(4, lifted.codes()));
  EXPECT_TRUE(free_labels(lifted).empty());
  const auto twice = lift(lifted, regular_tiling(4));
  EXPECT_EQ(twice.size(), 28u);
  EXPECT_TRUE(free_labels(twice).empty());
}

TEST(Lift, OfTilingsIsTiling) {
  for (int d = 1; d <= 5; ++d) {
    const auto t = lift(regular_tiling(d), regular_tiling(d));
    EXPECT_TRUE(is_tiling(t));
    EXPECT_TRUE(is_packing(d + 1, t.codes()));
  }
}

TEST(Lift, RejectsNonTiling) {
  EXPECT_THROW(lift(chiral_packing_3d(), chiral_packing_3d()), std::invalid_argument);
  EXPECT_THROW(lift(regular_tiling(2), regular_tiling(3)), std::invalid_argument);
}

TEST(Lift, PreservesPackingForRandomInputs) {
  Rng rng(3);
  for (int it = 0; it < 50; ++it) {
    const int d = 1 + static_cast<int>(rng.below(4));
    const auto p = random_packing_naive(d, rng);
    const auto l = lift(p, regular_tiling(d));
    EXPECT_EQ(l.size(), p.size() + (std::size_t{1} << d));
    EXPECT_TRUE(is_packing(d + 1, l.codes()));
    if (free_labels(p).empty()) EXPECT_TRUE(free_labels(l).empty());
  }
}

TEST(Packing, WithAndWithout) {
  const auto p = Packing(2, {{0, 0}, {0, 2}});
  EXPECT_THROW(p.with(L({0, 1})), std::invalid_argument);
  EXPECT_EQ(p.with(L({2, 1})).size(), 3u);
  EXPECT_EQ(p.without(L({0, 2})).size(), 1u);
  EXPECT_THROW(p.without(L({3, 3})), std::invalid_argument);
  EXPECT_EQ(p.deficit(), 2);
}

TEST(CodeSet, NthAndCounts) {
  CodeSet s(3);
  s.set(5);
  s.set(63);
  s.set(0);
  EXPECT_EQ(s.count(), 3u);
  EXPECT_EQ(s.nth(0), 0);
  EXPECT_EQ(s.nth(1), 5);
  EXPECT_EQ(s.nth(2), 63);
  CodeSet full(1, true);
  EXPECT_EQ(full.count(), 4u);
}
