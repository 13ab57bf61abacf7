#include <gtest/gtest.h>

#include <set>

#include "cubepack/analysis.hpp"
#include "cubepack/enumeration.hpp"
#include "cubepack/packing.hpp"
#include "cubepack/rng.hpp"
#include "cubepack/stochastic.hpp"
#include "cubepack/symmetry.hpp"
#include "oracles.hpp"

using namespace cubepack;

namespace {

Code L(std::initializer_list<int> c) { return CubeLabel(c).code(); }

Rational pow_r(Rational b, int e) {
  Rational r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<Packing> sample_packings(int dim, int count, std::uint64_t seed) {
  std::vector<Packing> out;
  PackingSampler sampler(dim, SearchConfig{.seed = seed});
  for (int i = 0; i < count; ++i) {
    // Random prefixes of maximal packings give non-maximal ones too.
    const auto p = sampler.random_packing();
    const auto keep = sampler.rng().below(p.size() + 1);
    out.push_back(Packing(dim, std::vector<Code>(p.codes().begin(), p.codes().begin() + static_cast<std::ptrdiff_t>(keep))));
    out.push_back(p);
  }
  return out;
}

const std::vector<std::vector<Code>>& listed_blocking_3d() {
  static const std::vector<std::vector<Code>> sets = {
      {L({0, 0, 0}), L({1, 1, 1}), L({2, 2, 2}), L({3, 3, 3})},
      {L({0, 0, 0}), L({1, 1, 1}), L({2, 2, 3}), L({3, 3, 2})},
      {L({0, 0, 0}), L({3, 2, 3}), L({2, 1, 1}), L({1, 3, 2})},
  };
  return sets;
}

}  // namespace

TEST(Rational, FormatAndParse) {
  EXPECT_EQ(format_rational(Rational(625, 16)), "625/16");
  EXPECT_EQ(format_rational(Rational(4)), "4/1");
  EXPECT_EQ(parse_rational("625/16"), Rational(625, 16));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(WindowCount, DimensionOneRegular) {
  const auto t = regular_tiling(1);
  EXPECT_EQ(window_count(t, 0), 2);
  EXPECT_EQ(window_count(t, 1), 1);
  EXPECT_EQ(window_count(t, 2), 2);
  EXPECT_EQ(window_count(t, 3), 1);
  EXPECT_EQ(window_count(t, CubeLabel(1, 2)), 2);
  EXPECT_THROW(window_count(t, CubeLabel(2, 0)), std::invalid_argument);
}

TEST(WindowCount, EmptyPackingIsZero) {
  for (int d = 1; d <= 4; ++d) {
    for (int v : WindowCounter(d).counts({})) EXPECT_EQ(v, 0);
  }
}

TEST(WindowCount, MatchesIntervalOracleAndTotals) {
  for (int d = 1; d <= 4; ++d) {
    const WindowCounter counter(d);
    for (const auto& p : sample_packings(d, 10, 30 + static_cast<std::uint64_t>(d))) {
      const std::vector<Code> codes(p.codes().begin(), p.codes().end());
      const auto counts = counter.counts(p.codes());
      std::uint64_t total = 0;
      for (std::size_t z = 0; z < counts.size(); ++z) {
        ASSERT_EQ(counts[z], oracle::window_count(d, codes, static_cast<Code>(z)));
        ASSERT_EQ(counts[z], window_count(p, static_cast<Code>(z)));
        total += static_cast<std::uint64_t>(counts[z]);
      }
      std::uint64_t three = 1;
      for (int i = 0; i < d; ++i) three *= 3;
      EXPECT_EQ(total, three * p.size());
    }
  }
}

TEST(Moments, RegularTilingSecondMoment) {
  for (int d = 1; d <= 6; ++d) {
    const auto r = moments(regular_tiling(d));
    EXPECT_EQ(r.m2, pow_r(Rational(5, 2), d)) << "d=" << d;
    EXPECT_GE(r.m2, r.m2_lower_bound);
  }
  EXPECT_EQ(moments(regular_tiling(2)).m1, Rational(9, 4));
  EXPECT_EQ(format_rational(moments(regular_tiling(4)).m2), "625/16");
}

TEST(Moments, ChiralPacking) {
  const auto p = chiral_packing_3d();
  const auto r = moments(p);
  EXPECT_EQ(r.m1, Rational(27, 16));
  const std::vector<Code> codes(p.codes().begin(), p.codes().end());
  std::int64_t sq = 0;
  for (Code z = 0; z < 64; ++z) {
    const auto v = oracle::window_count(3, codes, z);
    sq += v * v;
  }
  EXPECT_EQ(r.m2, Rational(sq, 64));
  EXPECT_EQ(r.deficit, 4);
  EXPECT_NE(r.to_row().find("m1=27/16"), std::string::npos);
}

TEST(Moments, BoundHoldsOnAllSmallOrbits) {
  for (int d = 1; d <= 3; ++d) {
    const WindowCounter counter(d);
    enumerate_all(d, {}, [&](const OrbitLevel& level, const std::vector<bool>&) {
      for (std::size_t i = 0; i < level.count(); ++i) {
        const auto r = moments(level.packing(i), counter);
        EXPECT_EQ(r.m1, pow_r(Rational(3, 4), d) * level.size());
        EXPECT_GE(r.m2, r.m2_lower_bound);
      }
    });
  }
}

TEST(M2LowerBound, Examples) {
  EXPECT_EQ(m2_lower_bound(2, 4), Rational(21, 4));
  for (int d = 1; d <= 6; ++d) {
    EXPECT_EQ(m2_lower_bound(d, 0), 0);
    EXPECT_EQ(m2_lower_bound(d, 1), pow_r(Rational(3, 4), d));
  }
  // N = 9: q = 2, r = 1 -> 2*2*1 + 1*2 = 6 per coordinate.
  EXPECT_EQ(m2_lower_bound(4, 9), pow_r(Rational(3, 4), 4) * 9 + Rational(72, 16) + Rational(24, 16));
}

TEST(WindowPairStats, DimensionOnePair) {
  const auto s = window_pair_stats(regular_tiling(1));
  ASSERT_EQ(s.pairs.size(), 1u);
  EXPECT_EQ(s.pairs[0].mu, 0);
  EXPECT_EQ(s.pairs[0].formula, 2u);
  EXPECT_EQ(s.pairs[0].brute, 2u);
}

TEST(WindowPairStats, FormulaMatchesBruteForce) {
  for (int d = 2; d <= 4; ++d) {
    for (const auto& p : sample_packings(d, 15, 50 + static_cast<std::uint64_t>(d))) {
      const auto s = window_pair_stats(p);
      EXPECT_EQ(s.pairs.size(), p.size() * (p.size() - (p.size() ? 1 : 0)) / 2);
      EXPECT_TRUE(s.formula_matches());
      EXPECT_TRUE(s.columns_meet_bound());
      for (const auto& pr : s.pairs) EXPECT_LT(pr.mu, d);
    }
  }
}

TEST(Blocking, ListedSetsBlock) {
  for (const auto& s : listed_blocking_3d()) EXPECT_TRUE(is_blocking(3, s));
  EXPECT_TRUE(is_blocking(3, chiral_packing_3d().codes()));
  EXPECT_FALSE(is_blocking(2, std::vector<Code>{0}));
}

// This 7-set leaves exactly four labels unblocked; swapping one member for
// (3,3,1,1) or (2,2,0,0) makes it blocking.
TEST(Blocking, SevenSetsInDimensionFour) {
  std::vector<Code> seven = {L({0, 0, 0, 0}), L({1, 1, 1, 1}), L({2, 2, 2, 2}), L({3, 3, 3, 3}),
                             L({0, 0, 1, 1}), L({1, 1, 2, 2}), L({2, 2, 3, 3})};
  EXPECT_FALSE(is_blocking(4, seven));
  std::vector<Code> missed;
  for (Code v = 0; v < 256; ++v) {
    bool hit = false;
    for (Code x : seven) hit = hit || oracle::cubes_meet(oracle::coords_of(4, v), oracle::coords_of(4, x));
    if (!hit) missed.push_back(v);
  }
  EXPECT_EQ(missed, (std::vector<Code>{L({2, 3, 0, 1}), L({2, 3, 1, 0}), L({3, 2, 0, 1}), L({3, 2, 1, 0})}));

  auto a = seven;
  a[4] = L({3, 3, 1, 1});
  EXPECT_TRUE(is_blocking(4, a));
  auto b = seven;
  b[6] = L({2, 2, 0, 0});
  EXPECT_TRUE(is_blocking(4, b));
  EXPECT_FALSE(is_blocking(4, std::span(a).first(6)));
}

TEST(Blocking, NoThreeSetBlocksInDimensionThree) {
  std::size_t subsets = 0;
  for (Code a = 0; a < 64; ++a) {
    for (Code b = a + 1; b < 64; ++b) {
      for (Code c = b + 1; c < 64; ++c) {
        const std::vector<Code> s = {a, b, c};
        ASSERT_FALSE(is_blocking(3, s));
        ++subsets;
      }
    }
  }
  EXPECT_EQ(subsets, 41664u);
}

TEST(MinBlockingSearch, DimensionTwo) {
  EXPECT_TRUE(min_blocking_search(2, 2).empty());
  const auto three = min_blocking_search(2, 3);
  EXPECT_EQ(three.size(), 2u);
  for (const auto& k : three) EXPECT_TRUE(is_blocking(2, k.codes));
}

TEST(MinBlockingSearch, DimensionThree) {
  EXPECT_TRUE(min_blocking_search(3, 3).empty());
  const auto four = min_blocking_search(3, 4);
  ASSERT_EQ(four.size(), 3u);
  std::set<CanonicalKey> listed;
  for (const auto& s : listed_blocking_3d()) listed.insert(canonical_form(3, s));
  EXPECT_EQ(std::set<CanonicalKey>(four.begin(), four.end()), listed);
}

TEST(MinBlockingSearch, AgreesWithBruteForceOrbitCountInDimensionTwo) {
  const auto group = all_symmetries(2);
  std::set<std::vector<Code>> orbits;
  for (Code a = 0; a < 16; ++a) {
    for (Code b = a + 1; b < 16; ++b) {
      for (Code c = b + 1; c < 16; ++c) {
        const std::vector<Code> s = {a, b, c};
        if (is_blocking(2, s)) orbits.insert(oracle::canonical_form(2, s, group));
      }
    }
  }
  EXPECT_EQ(orbits.size(), min_blocking_search(2, 3).size());
}

TEST(MinBlockingSearch, CapRaises) {
  EXPECT_THROW(min_blocking_search(3, 4, BlockingSearchOptions{.representative_cap = 5}), ResourceLimitError);
}

TEST(HRecurrence, Examples) {
  EXPECT_EQ(h_recurrence(7, 2), (std::vector<int>{10, 14}));
  EXPECT_EQ(h_recurrence(2, 1), (std::vector<int>{3}));
  EXPECT_TRUE(h_recurrence(4, 0).empty());
  EXPECT_THROW(h_recurrence(0, 1), std::invalid_argument);
}

TEST(InducedLayer, Examples) {
  for (int d = 2; d <= 5; ++d) {
    for (int i = 0; i < d; ++i) EXPECT_EQ(induced_layer(regular_tiling(d), i, 0), regular_tiling(d - 1));
  }
  EXPECT_EQ(induced_layer(chiral_packing_3d(), 0, 0), Packing(2, {{0, 0}, {3, 2}}));
  EXPECT_THROW(induced_layer(regular_tiling(1), 0, 0), std::invalid_argument);
  EXPECT_THROW(induced_layer(regular_tiling(2), 2, 0), std::invalid_argument);
}

TEST(InducedLayer, DeficitLaw) {
  for (int d = 2; d <= 5; ++d) {
    for (const auto& p : sample_packings(d, 10, 70 + static_cast<std::uint64_t>(d))) {
      for (int i = 0; i < d; ++i) {
        const auto ld = layer_deficits(p, i);
        EXPECT_EQ(ld.alternating_sum(), 0);
        EXPECT_EQ(ld.total(), 2 * p.deficit());
        for (int j = 0; j < 4; ++j) {
          const auto layer = induced_layer(p, i, j);
          EXPECT_EQ(ld.delta[static_cast<std::size_t>(j)], (1 << (d - 1)) - static_cast<int>(layer.size()));
          EXPECT_GE(static_cast<int>(layer.size()), (1 << (d - 1)) - p.deficit());
        }
      }
    }
  }
}

TEST(LayerDeficits, Examples) {
  for (int d = 2; d <= 4; ++d) {
    for (int i = 0; i < d; ++i) EXPECT_EQ(layer_deficits(regular_tiling(d), i).delta, (std::array<int, 4>{0, 0, 0, 0}));
  }
  for (int i = 0; i < 3; ++i) {
    const auto ld = layer_deficits(chiral_packing_3d(), i);
    EXPECT_EQ(ld.total(), 8);
    EXPECT_EQ(ld.alternating_sum(), 0);
  }
  const auto lifted = lift(chiral_packing_3d(), regular_tiling(3));
  EXPECT_EQ(layer_deficits(lifted, 3).delta, (std::array<int, 4>{4, 0, 0, 4}));
}

TEST(HoleCells, Examples) {
  for (int d = 1; d <= 4; ++d) EXPECT_TRUE(hole_cells(regular_tiling(d)).empty());
  EXPECT_EQ(hole_cells(chiral_packing_3d()).size(), 32u);
  EXPECT_EQ(hole_cells(Packing(2, {{1, 3}})).size(), 12u);
  for (int d = 1; d <= 4; ++d) {
    for (const auto& p : sample_packings(d, 10, 90 + static_cast<std::uint64_t>(d))) {
      EXPECT_EQ(hole_cells(p).size(), static_cast<std::size_t>(p.deficit()) << d);
    }
  }
}

TEST(Density, MembershipExamples) {
  for (int d = 1; d <= 4; ++d) {
    const auto f = density_from_packing(regular_tiling(d));
    EXPECT_TRUE(f.in_space());
    for (const auto& v : f.values()) EXPECT_TRUE(v == 0 || v == 1);
    EXPECT_TRUE(DensityFunction::uniform(d).in_space());
  }
  EXPECT_THROW(density_from_packing(chiral_packing_3d()), std::invalid_argument);
  EXPECT_THROW(DensityFunction(1, {Rational(1), Rational(-1), Rational(0), Rational(0)}), std::invalid_argument);
  EXPECT_FALSE(DensityFunction(1, {Rational(1), Rational(1), Rational(0), Rational(0)}).in_space());
}

TEST(Density, IndicatorWindowSumIsWindowCount) {
  Rng rng(13);
  for (int d = 1; d <= 4; ++d) {
    for (int it = 0; it < 5; ++it) {
      const auto t = random_tiling(d, rng, 3 * d);
      const auto f = density_from_packing(t);
      for (Code z = 0; z < label_count(d); ++z) EXPECT_EQ(density_window_sum(f, z), window_count(t, z));
      EXPECT_EQ(f.second_moment(), moments(t).m2);
    }
  }
}

TEST(Merge, RegularIndicatorIsFixed) {
  for (int d = 1; d <= 4; ++d) {
    const auto f = density_from_packing(regular_tiling(d));
    for (int i = 0; i < d; ++i) EXPECT_EQ(merge(f, i), f);
  }
}

TEST(Merge, PreservesSpaceRaisesMomentAndEndsRegular) {
  Rng rng(17);
  for (int d = 1; d <= 3; ++d) {
    const auto regular = density_from_packing(regular_tiling(d));
    for (int it = 0; it < 40; ++it) {
      auto f = random_density(d, rng);
      ASSERT_TRUE(f.in_space());
      for (int i = 0; i < d; ++i) {
        auto g = merge(f, i);
        EXPECT_TRUE(g.in_space());
        EXPECT_GE(g.second_moment(), f.second_moment());
        f = std::move(g);
      }
      EXPECT_EQ(f, regular);
    }
  }
}

TEST(KeyInequality, Examples) {
  EXPECT_TRUE(key_inequality_check(0, 0, 0, 0));
  EXPECT_TRUE(key_inequality_check(1, 1, 1, 1));
  EXPECT_THROW(key_inequality_check(0, -1, 0, 0), std::invalid_argument);
}

TEST(KeyInequality, Fuzz) {
  Rng rng(23);
  for (int it = 0; it < 10000; ++it) {
    std::array<Rational, 4> x;
    for (auto& v : x) v = Rational(rng.below(1000), 1 + rng.below(50));
    ASSERT_TRUE(key_inequality_check(x[0], x[1], x[2], x[3]));
  }
}
