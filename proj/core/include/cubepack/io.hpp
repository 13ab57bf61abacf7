#ifndef CUBEPACK_IO_HPP
#define CUBEPACK_IO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubepack/enumeration.hpp"
#include "cubepack/packing.hpp"
#include "cubepack/symmetry.hpp"

namespace cubepack {

// Malformed input; line() is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct RecordMeta {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;
  std::optional<std::string> key;
  std::optional<std::size_t> size;
  std::optional<bool> non_extendible;

  bool empty() const { return !seed && !generator && !key && !size && !non_extendible; }
  friend bool operator==(const RecordMeta&, const RecordMeta&) = default;
};

// A label set with optional metadata. Labels are kept sorted and distinct.
struct PackingRecord {
  int dim = 0;
  std::vector<Code> labels;
  RecordMeta meta;

  static PackingRecord from_packing(const Packing& p);
  // Throws std::invalid_argument if the labels overlap.
  Packing to_packing() const;

  friend bool operator==(const PackingRecord&, const PackingRecord&) = default;
};

// Text form: "d=<d> n=<N>" optionally followed by key=value metadata tokens,
// then one label per line as space-separated digits.
std::string to_text(const PackingRecord& r);
// Structured form: one JSON object per line with "d", "labels", optional "meta".
std::string to_json_line(const PackingRecord& r);

// Both readers validate labels as packings unless raw is set (blocking sets
// and other arbitrary label sets). Validation failures are
// std::invalid_argument; syntax errors are ParseError.
std::vector<PackingRecord> read_text(std::istream& in, bool raw = false);
PackingRecord parse_json_line(const std::string& line, std::size_t line_number = 0, bool raw = false);
std::vector<PackingRecord> read_json_lines(std::istream& in, bool raw = false);
// Picks the format from the first non-blank character.
std::vector<PackingRecord> read_records(std::istream& in, bool raw = false);
std::vector<PackingRecord> read_records_file(const std::filesystem::path& path, bool raw = false);

struct LevelManifest {
  int dim = 0;
  int size = 0;
  std::uint64_t count = 0;
  std::uint64_t non_extendible = 0;
  bool complete = false;

  friend bool operator==(const LevelManifest&, const LevelManifest&) = default;
};

// A directory holding, per level N, "level-N.keys" (one line per orbit:
// serialized canonical key, a space, 1 if non-extendible else 0; sorted by
// key) and "level-N.json" (the manifest). The manifest is written after the
// record file, so a level without a complete manifest is never trusted.
class OrbitDatabase {
 public:
  // Creates the directory if needed.
  OrbitDatabase(std::filesystem::path dir, int dim);

  const std::filesystem::path& dir() const { return dir_; }
  int dim() const { return dim_; }

  void write_level(const OrbitLevel& level, const std::vector<bool>& non_extendible, bool complete = true);
  std::optional<LevelManifest> manifest(int size) const;
  std::vector<LevelManifest> manifests() const;
  // Throws ParseError if the record file disagrees with its manifest.
  OrbitLevel load_level(int size) const;
  void for_each(int size, const std::function<void(const CanonicalKey&, bool)>& fn) const;
  // Every manifest matches its record file and keys are strictly increasing.
  bool verify() const;

 private:
  std::filesystem::path records_path(int size) const;
  std::filesystem::path manifest_path(int size) const;

  std::filesystem::path dir_;
  int dim_;
};

}  // namespace cubepack

#endif  // CUBEPACK_IO_HPP
