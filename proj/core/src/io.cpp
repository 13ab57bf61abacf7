#include "cubepack/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cubepack {

namespace {

using Json = nlohmann::ordered_json;

std::vector<Code> normalize(int dim, std::vector<Code> labels, bool raw) {
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw std::invalid_argument("duplicate label");
  }
  if (!raw && !is_packing(dim, labels)) throw std::invalid_argument("labels overlap");
  return labels;
}

void check_record_dim(int dim, std::size_t line) {
  if (dim < 1 || dim > kMaxDim) throw ParseError("dimension must be in 1.." + std::to_string(kMaxDim), line);
}

Code label_from_digits(int dim, const std::vector<long long>& digits, std::size_t line) {
  if (static_cast<int>(digits.size()) != dim) {
    throw ParseError("expected " + std::to_string(dim) + " coordinates, got " + std::to_string(digits.size()), line);
  }
  unsigned code = 0;
  for (int i = 0; i < dim; ++i) {
    const auto v = digits[static_cast<std::size_t>(i)];
    if (v < 0 || v > 3) throw std::invalid_argument("line " + std::to_string(line) + ": coordinate out of range");
    code |= static_cast<unsigned>(v) << digit_shift(dim, i);
  }
  return static_cast<Code>(code);
}

bool blank_or_comment(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

long long parse_int(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("not an integer: '" + text + "'", line);
  }
}

}  // namespace

PackingRecord PackingRecord::from_packing(const Packing& p) {
  return PackingRecord{p.dim(), std::vector<Code>(p.codes().begin(), p.codes().end()), {}};
}

Packing PackingRecord::to_packing() const { return Packing(dim, labels); }

std::string to_text(const PackingRecord& r) {
  std::ostringstream out;
  out << "d=" << r.dim << " n=" << r.labels.size();
  if (r.meta.seed) out << " seed=" << *r.meta.seed;
  if (r.meta.generator) {
    if (r.meta.generator->empty() || r.meta.generator->find_first_of(" \t\n=") != std::string::npos) {
      throw std::invalid_argument("generator name must be a nonempty word");
    }
    out << " generator=" << *r.meta.generator;
  }
  if (r.meta.key) out << " key=" << *r.meta.key;
  if (r.meta.size) out << " size=" << *r.meta.size;
  if (r.meta.non_extendible) out << " nonext=" << (*r.meta.non_extendible ? 1 : 0);
  out << "\n";
  for (Code x : r.labels) {
    for (int i = 0; i < r.dim; ++i) out << (i ? " " : "") << digit(r.dim, x, i);
    out << "\n";
  }
  return out.str();
}

std::vector<PackingRecord> read_text(std::istream& in, bool raw) {
  std::vector<PackingRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (blank_or_comment(line)) continue;
    PackingRecord rec;
    std::istringstream header(line);
    std::string token;
    std::optional<long long> n;
    bool have_dim = false;
    while (header >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value, got '" + token + "'", number);
      const auto name = token.substr(0, eq);
      const auto value = token.substr(eq + 1);
      if (name == "d") {
        rec.dim = static_cast<int>(parse_int(value, number));
        have_dim = true;
      } else if (name == "n") {
        n = parse_int(value, number);
      } else if (name == "seed") {
        rec.meta.seed = static_cast<std::uint64_t>(parse_int(value, number));
      } else if (name == "generator") {
        rec.meta.generator = value;
      } else if (name == "key") {
        rec.meta.key = value;
      } else if (name == "size") {
        rec.meta.size = static_cast<std::size_t>(parse_int(value, number));
      } else if (name == "nonext") {
        rec.meta.non_extendible = parse_int(value, number) != 0;
      } else {
        throw ParseError("unknown header field '" + name + "'", number);
      }
    }
    if (!have_dim || !n) throw ParseError("header needs d= and n=", number);
    check_record_dim(rec.dim, number);
    if (*n < 0 || static_cast<std::size_t>(*n) > label_count(rec.dim)) throw ParseError("bad label count", number);
    for (long long k = 0; k < *n; ++k) {
      if (!std::getline(in, line)) throw ParseError("unexpected end of input", number + 1);
      ++number;
      std::istringstream row(line);
      std::vector<long long> digits;
      while (row >> token) digits.push_back(parse_int(token, number));
      rec.labels.push_back(label_from_digits(rec.dim, digits, number));
    }
    try {
      rec.labels = normalize(rec.dim, std::move(rec.labels), raw);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("record ending at line " + std::to_string(number) + ": " + e.what());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string to_json_line(const PackingRecord& r) {
  Json j;
  j["d"] = r.dim;
  Json labels = Json::array();
  for (Code x : r.labels) {
    Json row = Json::array();
    for (int i = 0; i < r.dim; ++i) row.push_back(digit(r.dim, x, i));
    labels.push_back(std::move(row));
  }
  j["labels"] = std::move(labels);
  if (!r.meta.empty()) {
    Json m = Json::object();
    if (r.meta.seed) m["seed"] = *r.meta.seed;
    if (r.meta.generator) m["generator"] = *r.meta.generator;
    if (r.meta.key) m["key"] = *r.meta.key;
    if (r.meta.size) m["size"] = *r.meta.size;
    if (r.meta.non_extendible) m["nonExtendible"] = *r.meta.non_extendible;
    j["meta"] = std::move(m);
  }
  return j.dump();
}

PackingRecord parse_json_line(const std::string& line, std::size_t line_number, bool raw) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_number);
  }
  PackingRecord rec;
  try {
    if (!j.is_object()) throw ParseError("expected an object", line_number);
    rec.dim = j.at("d").get<int>();
    check_record_dim(rec.dim, line_number);
    for (const auto& row : j.at("labels")) {
      rec.labels.push_back(label_from_digits(rec.dim, row.get<std::vector<long long>>(), line_number));
    }
    if (j.contains("meta")) {
      const auto& m = j["meta"];
      if (m.contains("seed")) rec.meta.seed = m["seed"].get<std::uint64_t>();
      if (m.contains("generator")) rec.meta.generator = m["generator"].get<std::string>();
      if (m.contains("key")) rec.meta.key = m["key"].get<std::string>();
      if (m.contains("size")) rec.meta.size = m["size"].get<std::size_t>();
      if (m.contains("nonExtendible")) rec.meta.non_extendible = m["nonExtendible"].get<bool>();
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad record: ") + e.what(), line_number);
  }
  try {
    rec.labels = normalize(rec.dim, std::move(rec.labels), raw);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("line " + std::to_string(line_number) + ": " + e.what());
  }
  return rec;
}

std::vector<PackingRecord> read_json_lines(std::istream& in, bool raw) {
  std::vector<PackingRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (blank_or_comment(line)) continue;
    out.push_back(parse_json_line(line, number, raw));
  }
  return out;
}

std::vector<PackingRecord> read_records(std::istream& in, bool raw) {
  const std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream again(all);
  std::size_t pos = 0;
  // Skip blank lines and comments to find the first meaningful character.
  while (pos < all.size()) {
    const auto end = all.find('\n', pos);
    const auto line = all.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (!blank_or_comment(line)) {
      const auto c = line[line.find_first_not_of(" \t\r")];
      return c == '{' ? read_json_lines(again, raw) : read_text(again, raw);
    }
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return {};
}

std::vector<PackingRecord> read_records_file(const std::filesystem::path& path, bool raw) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_records(in, raw);
}

// ---------------------------------------------------------------------------

OrbitDatabase::OrbitDatabase(std::filesystem::path dir, int dim) : dir_(std::move(dir)), dim_(dim) {
  check_dim(dim);
  std::filesystem::create_directories(dir_);
}

std::filesystem::path OrbitDatabase::records_path(int size) const {
  return dir_ / ("level-" + std::to_string(size) + ".keys");
}

std::filesystem::path OrbitDatabase::manifest_path(int size) const {
  return dir_ / ("level-" + std::to_string(size) + ".json");
}

void OrbitDatabase::write_level(const OrbitLevel& level, const std::vector<bool>& non_extendible, bool complete) {
  if (level.dim() != dim_) throw std::invalid_argument("database: dimension mismatch");
  if (non_extendible.size() != level.count()) throw std::invalid_argument("database: flag count mismatch");
  std::filesystem::remove(manifest_path(level.size()));
  std::uint64_t nonext = 0;
  {
    std::ofstream out(records_path(level.size()), std::ios::trunc);
    for (std::size_t i = 0; i < level.count(); ++i) {
      out << level.key(i).serialize() << ' ' << (non_extendible[i] ? 1 : 0) << '\n';
      nonext += non_extendible[i] ? 1 : 0;
    }
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + records_path(level.size()).string());
  }
  Json m;
  m["d"] = dim_;
  m["n"] = level.size();
  m["count"] = level.count();
  m["nonExtendible"] = nonext;
  m["complete"] = complete;
  std::ofstream out(manifest_path(level.size()), std::ios::trunc);
  out << m.dump() << '\n';
  if (!out) throw std::runtime_error("cannot write " + manifest_path(level.size()).string());
}

std::optional<LevelManifest> OrbitDatabase::manifest(int size) const {
  std::ifstream in(manifest_path(size));
  if (!in) return std::nullopt;
  try {
    const auto j = Json::parse(in);
    LevelManifest m;
    m.dim = j.at("d").get<int>();
    m.size = j.at("n").get<int>();
    m.count = j.at("count").get<std::uint64_t>();
    m.non_extendible = j.at("nonExtendible").get<std::uint64_t>();
    m.complete = j.at("complete").get<bool>();
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(manifest_path(size).string() + ": " + e.what(), 0);
  }
}

std::vector<LevelManifest> OrbitDatabase::manifests() const {
  std::vector<LevelManifest> out;
  for (int n = 0; n <= (1 << dim_); ++n) {
    if (auto m = manifest(n)) out.push_back(*m);
  }
  return out;
}

void OrbitDatabase::for_each(int size, const std::function<void(const CanonicalKey&, bool)>& fn) const {
  std::ifstream in(records_path(size));
  if (!in) throw std::runtime_error("no records for level " + std::to_string(size));
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto space = line.rfind(' ');
    if (space == std::string::npos) throw ParseError("expected '<key> <flag>'", number);
    CanonicalKey key;
    try {
      key = CanonicalKey::parse(line.substr(0, space));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), number);
    }
    const auto flag = line.substr(space + 1);
    if (flag != "0" && flag != "1") throw ParseError("flag must be 0 or 1", number);
    if (key.dim != dim_ || static_cast<int>(key.size()) != size) throw ParseError("key does not belong to level", number);
    fn(key, flag == "1");
  }
}

OrbitLevel OrbitDatabase::load_level(int size) const {
  const auto m = manifest(size);
  if (!m) throw std::runtime_error("no manifest for level " + std::to_string(size));
  std::vector<Code> flat;
  std::uint64_t count = 0;
  for_each(size, [&](const CanonicalKey& k, bool) {
    flat.insert(flat.end(), k.codes.begin(), k.codes.end());
    ++count;
  });
  if (count != m->count) throw ParseError("record count disagrees with manifest for level " + std::to_string(size), 0);
  if (size == 0) return OrbitLevel::initial(dim_);
  return OrbitLevel(dim_, size, std::move(flat));
}

bool OrbitDatabase::verify() const {
  for (const auto& m : manifests()) {
    std::uint64_t count = 0, nonext = 0;
    std::optional<CanonicalKey> prev;
    bool ordered = true;
    try {
      for_each(m.size, [&](const CanonicalKey& k, bool flag) {
        if (prev && !(*prev < k)) ordered = false;
        prev = k;
        ++count;
        nonext += flag ? 1 : 0;
      });
    } catch (const std::exception&) {
      return false;
    }
    if (!ordered || count != m.count || nonext != m.non_extendible || m.dim != dim_) return false;
  }
  return true;
}

}  // namespace cubepack
