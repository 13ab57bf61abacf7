#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cubepack/enumeration.hpp"
#include "cubepack/packing.hpp"
#include "cubepack/symmetry.hpp"
#include "oracles.hpp"

using namespace cubepack;

namespace {

std::vector<OrbitLevel> all_levels(int dim, const EnumerationOptions& options = {}) {
  std::vector<OrbitLevel> out;
  enumerate_all(dim, options, [&](const OrbitLevel& level, const std::vector<bool>&) { out.push_back(level); });
  return out;
}

}  // namespace

TEST(Enumeration, OneSingletonOrbitInDimensionOne) {
  const auto next = extend_level(OrbitLevel::initial(1));
  EXPECT_EQ(next.count(), 1u);
  const auto table = enumerate_all(1);
  EXPECT_EQ(table.tiling_orbits(), 1u);
}

TEST(Enumeration, DimensionTwoCounts) {
  const auto table = enumerate_all(2);
  ASSERT_EQ(table.levels.size(), 5u);
  const std::vector<std::uint64_t> orbits = {1, 1, 3, 2, 2};
  for (int n = 0; n <= 4; ++n) {
    EXPECT_EQ(table.orbits_at(n), orbits[static_cast<std::size_t>(n)]) << "N=" << n;
    EXPECT_EQ(table.non_extendible_at(n), n == 4 ? 2u : 0u) << "N=" << n;
  }
  EXPECT_EQ(table.tiling_orbits(), 2u);
}

TEST(Enumeration, DimensionThreeCounts) {
  std::map<int, std::vector<CanonicalKey>> nonext;
  const auto table = enumerate_all(3, {}, [&](const OrbitLevel& level, const std::vector<bool>& flags) {
    for (std::size_t i = 0; i < level.count(); ++i) {
      if (flags[i]) nonext[level.size()].push_back(level.key(i));
    }
  });
  EXPECT_EQ(table.tiling_orbits(), 9u);
  EXPECT_EQ(table.non_extendible_at(4), 1u);
  for (int n : {5, 6, 7}) EXPECT_EQ(table.non_extendible_at(n), 0u);
  for (int n = 0; n < 4; ++n) EXPECT_EQ(table.non_extendible_at(n), 0u);
  ASSERT_EQ(nonext[4].size(), 1u);
  EXPECT_EQ(nonext[4][0], canonical_form(chiral_packing_3d()));
  for (const auto& l : table.levels) EXPECT_LE(l.non_extendible, l.orbits);
}

TEST(Enumeration, RepresentativesArePairwiseDistinctCanonicalImages) {
  for (const auto& level : all_levels(3)) {
    std::set<CanonicalKey> seen;
    for (std::size_t i = 0; i < level.count(); ++i) {
      const auto key = level.key(i);
      EXPECT_EQ(canonical_form(level.packing(i)), key);
      EXPECT_TRUE(is_packing(3, key.codes));
      EXPECT_TRUE(seen.insert(key).second);
      EXPECT_TRUE(level.contains(key));
    }
  }
}

// Sum over representatives of |G| / |Stab| must equal the raw number of
// packings found by unreduced search, and every raw packing must land on a
// stored representative.
TEST(Enumeration, OrbitSumMatchesUnreducedCount) {
  auto check = [](int dim, int max_n) {
    const auto levels = all_levels(dim);
    Canonicalizer canon(dim);
    for (int n = 0; n <= max_n; ++n) {
      const auto& level = levels[static_cast<std::size_t>(n)];
      std::uint64_t total = 0;
      for (std::size_t i = 0; i < level.count(); ++i) {
        canon.canonicalize(level.representative(i));
        total += group_order(dim) / canon.stabilizer_order();
      }
      const auto raw = oracle::all_packings(dim, n);
      EXPECT_EQ(total, raw.size()) << "d=" << dim << " N=" << n;
      for (const auto& p : raw) {
        ASSERT_TRUE(level.contains(canonical_form(dim, p))) << "d=" << dim << " N=" << n;
      }
    }
  };
  check(1, 2);
  check(2, 4);
  check(3, 5);
}

TEST(Enumeration, StabilizerOrdersMatchFullGroupScan) {
  const auto group = all_symmetries(3);
  Canonicalizer canon(3);
  const auto levels = all_levels(3);
  for (int n : {4, 8}) {
    const auto& level = levels[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < level.count(); i += 7) {
      const auto r = level.representative(i);
      canon.canonicalize(r);
      EXPECT_EQ(canon.stabilizer_order(), oracle::stabilizer_order(3, std::vector<Code>(r.begin(), r.end()), group));
    }
  }
}

TEST(Enumeration, CanonicalAugmentationMatchesDefault) {
  EnumerationOptions fast;
  fast.canonical_augmentation = true;
  for (int d = 1; d <= 3; ++d) {
    const auto a = all_levels(d);
    const auto b = all_levels(d, fast);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
      ASSERT_EQ(a[n].count(), b[n].count()) << "d=" << d << " N=" << n;
      for (std::size_t i = 0; i < a[n].count(); ++i) EXPECT_EQ(a[n].key(i), b[n].key(i));
    }
  }
}

TEST(Enumeration, ThreadCountDoesNotChangeLevels) {
  EnumerationOptions par;
  par.threads = 3;
  const auto a = all_levels(3);
  const auto b = all_levels(3, par);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    ASSERT_EQ(a[n].count(), b[n].count());
    for (std::size_t i = 0; i < a[n].count(); ++i) EXPECT_EQ(a[n].key(i), b[n].key(i));
  }
}

TEST(Enumeration, MaxSizeStopsEarly) {
  EnumerationOptions opt;
  opt.max_size = 3;
  const auto table = enumerate_all(3, opt);
  EXPECT_EQ(table.levels.back().size, 3);
  EXPECT_EQ(table.orbits_at(3), 14u);
}

TEST(Enumeration, CapRaisesResourceLimit) {
  EnumerationOptions opt;
  opt.representative_cap = 10;
  EXPECT_THROW(enumerate_all(3, opt), ResourceLimitError);
  opt.threads = 2;
  EXPECT_THROW(enumerate_all(3, opt), ResourceLimitError);
}

TEST(Enumeration, TableText) {
  const auto text = enumerate_all(2).to_text();
  EXPECT_NE(text.find("d=2"), std::string::npos);
  EXPECT_NE(text.find("orbits"), std::string::npos);
}

TEST(CompleteToTiling, ChiralPackingHasNoCompletion) {
  EXPECT_FALSE(complete_to_tiling(chiral_packing_3d()).has_value());
}

TEST(CompleteToTiling, RegularMinusOneIsRestored) {
  for (int d = 1; d <= 5; ++d) {
    const auto t = regular_tiling(d);
    for (Code x : t.codes()) {
      const auto got = complete_to_tiling(t.without(x));
      ASSERT_TRUE(got.has_value());
      EXPECT_EQ(*got, t);
    }
  }
}

TEST(CompleteToTiling, OutputsAreTilingsContainingInput) {
  for (const auto& level : all_levels(3)) {
    for (std::size_t i = 0; i < level.count(); ++i) {
      const auto p = level.packing(i);
      const auto t = complete_to_tiling(p);
      if (!t) continue;
      EXPECT_TRUE(is_tiling(*t));
      EXPECT_TRUE(is_packing(3, t->codes()));
      for (Code x : p.codes()) EXPECT_TRUE(t->contains(x));
      if (p.size() < 8) EXPECT_FALSE(free_labels(p).empty());
    }
  }
}

TEST(CompleteToTiling, DimensionThreeSmallDeficitsAlwaysExtend) {
  const auto levels = all_levels(3);
  for (int n : {5, 6, 7}) {
    const auto& level = levels[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < level.count(); ++i) EXPECT_TRUE(complete_to_tiling(level.packing(i)).has_value());
  }
  // Packings at N=4 extend unless they are the chiral one.
  const auto chiral = canonical_form(chiral_packing_3d());
  const auto& four = levels[4];
  for (std::size_t i = 0; i < four.count(); ++i) {
    EXPECT_EQ(complete_to_tiling(four.packing(i)).has_value(), four.key(i) != chiral);
  }
}
