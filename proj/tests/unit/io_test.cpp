#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cubepack/enumeration.hpp"
#include "cubepack/io.hpp"
#include "cubepack/stochastic.hpp"

using namespace cubepack;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cubepack-" + name + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::remove_all(dir);
  return dir;
}

std::vector<PackingRecord> parse_text(const std::string& s, bool raw = false) {
  std::istringstream in(s);
  return read_text(in, raw);
}

}  // namespace

TEST(TextFormat, ChiralPacking) {
  const auto rec = PackingRecord::from_packing(chiral_packing_3d());
  const auto text = to_text(rec);
  EXPECT_EQ(text, "d=3 n=4\n0 0 0\n1 3 2\n2 1 1\n3 2 3\n");
  const auto back = parse_text(text);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], rec);
  EXPECT_EQ(back[0].to_packing(), chiral_packing_3d());
}

TEST(TextFormat, EmptyPacking) {
  const auto rec = PackingRecord::from_packing(Packing(2));
  EXPECT_EQ(to_text(rec), "d=2 n=0\n");
  EXPECT_EQ(parse_text("d=2 n=0\n").at(0), rec);
}

TEST(TextFormat, MetadataAndSeveralRecords) {
  PackingRecord a = PackingRecord::from_packing(regular_tiling(2));
  a.meta.seed = 7;
  a.meta.generator = "random";
  a.meta.key = canonical_form(regular_tiling(2)).serialize();
  a.meta.size = 4;
  a.meta.non_extendible = true;
  const auto b = PackingRecord::from_packing(Packing(1, std::vector<Code>{1}));
  const auto got = parse_text(to_text(a) + "\n# comment\n" + to_text(b));
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0], a);
  EXPECT_EQ(got[1], b);
}

TEST(TextFormat, Errors) {
  try {
    parse_text("d=2 n=2\n0 0\n0 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_text("\nd=2 n=2\n0 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_text("d=2 n=1\n0 0 0\n"), ParseError);
  EXPECT_THROW(parse_text("d=2\n"), ParseError);
  EXPECT_THROW(parse_text("d=2 n=1 color=red\n0 0\n"), ParseError);
  EXPECT_THROW(parse_text("d=2 n=1\n0 4\n"), std::invalid_argument);
  EXPECT_THROW(parse_text("d=2 n=2\n0 0\n1 1\n"), std::invalid_argument);
  EXPECT_EQ(parse_text("d=2 n=2\n0 0\n1 1\n", true).at(0).labels.size(), 2u);
  EXPECT_THROW(parse_text("d=2 n=2\n0 0\n0 0\n", true), std::invalid_argument);
}

TEST(JsonFormat, RoundTripWithMeta) {
  PackingRecord r = PackingRecord::from_packing(chiral_packing_3d());
  r.meta.generator = "greedy";
  r.meta.non_extendible = true;
  const auto line = to_json_line(r);
  EXPECT_EQ(line, R"({"d":3,"labels":[[0,0,0],[1,3,2],[2,1,1],[3,2,3]],"meta":{"generator":"greedy","nonExtendible":true}})");
  EXPECT_EQ(parse_json_line(line), r);
}

TEST(JsonFormat, Errors) {
  try {
    std::istringstream in("{\"d\":1,\"labels\":[[0]]}\n{\"d\":1,\"labels\":[[0],\n");
    read_json_lines(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_json_line(R"({"d":2,"labels":[[0]]})"), ParseError);
  EXPECT_THROW(parse_json_line(R"({"d":2,"labels":[[0,5]]})"), std::invalid_argument);
  EXPECT_THROW(parse_json_line(R"({"labels":[]})"), ParseError);
  EXPECT_THROW(parse_json_line(R"([1,2])"), ParseError);
}

TEST(Records, FuzzRoundTripBothFormats) {
  PackingSampler sampler(4, SearchConfig{.seed = 99});
  std::string text, jsonl;
  std::vector<PackingRecord> want;
  for (int i = 0; i < 1000; ++i) {
    const int d = 1 + static_cast<int>(sampler.rng().below(5));
    PackingSampler s(d, SearchConfig{.seed = static_cast<std::uint64_t>(i)});
    auto r = PackingRecord::from_packing(s.random_packing());
    if (i % 3 == 0) r.meta.seed = static_cast<std::uint64_t>(i);
    want.push_back(r);
    text += to_text(r);
    jsonl += to_json_line(r) + "\n";
  }
  std::istringstream a(text), b(jsonl);
  EXPECT_EQ(read_records(a), want);
  EXPECT_EQ(read_records(b), want);
}

TEST(OrbitDatabase, WriteLoadVerify) {
  const auto dir = temp_dir("db");
  OrbitDatabase db(dir, 3);
  std::vector<OrbitLevel> levels;
  enumerate_all(3, {}, [&](const OrbitLevel& level, const std::vector<bool>& flags) {
    db.write_level(level, flags);
    levels.push_back(level);
  });
  EXPECT_TRUE(db.verify());
  const auto ms = db.manifests();
  ASSERT_EQ(ms.size(), 9u);
  EXPECT_EQ(ms[4], (LevelManifest{3, 4, 45, 1, true}));
  EXPECT_EQ(ms[8].count, 9u);
  for (int n = 0; n <= 8; ++n) {
    const auto loaded = db.load_level(n);
    ASSERT_EQ(loaded.count(), levels[static_cast<std::size_t>(n)].count());
    for (std::size_t i = 0; i < loaded.count(); ++i) EXPECT_EQ(loaded.key(i), levels[static_cast<std::size_t>(n)].key(i));
  }
  // Reopening sees the same content.
  EXPECT_EQ(OrbitDatabase(dir, 3).manifests(), ms);

  // A truncated record file no longer matches its manifest.
  { std::ofstream(dir / "level-5.keys", std::ios::trunc) << "3:0,1,2,3,4 0\n"; }
  EXPECT_FALSE(db.verify());
  EXPECT_THROW(db.load_level(5), ParseError);
  EXPECT_THROW(db.load_level(11), std::runtime_error);
  std::filesystem::remove_all(dir);
}
