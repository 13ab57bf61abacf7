#include "cubepack/enumeration.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cubepack/code_set.hpp"

namespace cubepack {

namespace {

// Flat, open-addressed set of fixed-length code sequences.
class KeyStore {
 public:
  explicit KeyStore(std::size_t stride) : stride_(stride), slots_(1024, 0) {}

  bool insert(std::span<const Code> key) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash(key) & mask;
    while (slots_[pos] != 0) {
      if (equal(slots_[pos] - 1, key)) return false;
      pos = (pos + 1) & mask;
    }
    flat_.insert(flat_.end(), key.begin(), key.end());
    slots_[pos] = static_cast<std::uint32_t>(++count_);
    return true;
  }

  std::size_t size() const { return count_; }
  std::vector<Code>& flat() { return flat_; }

 private:
  std::size_t hash(std::span<const Code> key) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (Code c : key) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

  bool equal(std::size_t index, std::span<const Code> key) const {
    return std::equal(key.begin(), key.end(), flat_.begin() + static_cast<std::ptrdiff_t>(index * stride_));
  }

  void grow() {
    std::vector<std::uint32_t> bigger(slots_.size() * 2, 0);
    const std::size_t mask = bigger.size() - 1;
    for (std::size_t i = 0; i < count_; ++i) {
      std::span<const Code> key(flat_.data() + i * stride_, stride_);
      std::size_t pos = hash(key) & mask;
      while (bigger[pos] != 0) pos = (pos + 1) & mask;
      bigger[pos] = static_cast<std::uint32_t>(i + 1);
    }
    slots_.swap(bigger);
  }

  std::size_t stride_;
  std::size_t count_ = 0;
  std::vector<Code> flat_;
  std::vector<std::uint32_t> slots_;
};

// Sorts fixed-length records lexicographically and drops duplicates.
std::vector<Code> sort_unique(const std::vector<Code>& flat, std::size_t stride) {
  if (stride == 0) return {};
  const std::size_t n = flat.size() / stride;
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  auto rec = [&](std::uint32_t i) { return flat.begin() + static_cast<std::ptrdiff_t>(i * stride); };
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(rec(a), rec(a) + static_cast<std::ptrdiff_t>(stride), rec(b),
                                        rec(b) + static_cast<std::ptrdiff_t>(stride));
  });
  std::vector<Code> out;
  out.reserve(flat.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && std::equal(rec(idx[k]), rec(idx[k]) + static_cast<std::ptrdiff_t>(stride), rec(idx[k - 1]))) {
      continue;
    }
    out.insert(out.end(), rec(idx[k]), rec(idx[k]) + static_cast<std::ptrdiff_t>(stride));
  }
  return out;
}

void check_cap(std::size_t count, const EnumerationOptions& options, int size) {
  if (options.representative_cap != 0 && count > options.representative_cap) {
    throw ResourceLimitError("representative cap of " + std::to_string(options.representative_cap) +
                             " exceeded at N=" + std::to_string(size));
  }
}

}  // namespace

OrbitLevel::OrbitLevel(int dim, int size, std::vector<Code> flat_sorted_keys)
    : dim_(dim), size_(size), has_empty_(size == 0), flat_(std::move(flat_sorted_keys)) {}

OrbitLevel OrbitLevel::initial(int dim) {
  check_dim(dim);
  return OrbitLevel(dim, 0, {});
}

Packing OrbitLevel::packing(std::size_t i) const {
  const auto r = representative(i);
  return Packing::unchecked(dim_, std::vector<Code>(r.begin(), r.end()));
}

CanonicalKey OrbitLevel::key(std::size_t i) const {
  const auto r = representative(i);
  return CanonicalKey{dim_, std::vector<Code>(r.begin(), r.end())};
}

bool OrbitLevel::contains(const CanonicalKey& key) const {
  if (key.dim != dim_ || static_cast<int>(key.codes.size()) != size_) return false;
  if (size_ == 0) return has_empty_;
  std::size_t lo = 0, hi = count();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto r = representative(mid);
    if (std::lexicographical_compare(r.begin(), r.end(), key.codes.begin(), key.codes.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == count()) return false;
  const auto r = representative(lo);
  return std::equal(r.begin(), r.end(), key.codes.begin());
}

OrbitLevel extend_level(const OrbitLevel& level, const EnumerationOptions& options) {
  const int dim = level.dim();
  const int next_size = level.size() + 1;
  const auto stride = static_cast<std::size_t>(next_size);
  const CompatibilityGraph graph(dim);
  const std::size_t reps = level.count();
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::size_t>(reps, 1))));

  auto work = [&](std::size_t begin, std::size_t end, KeyStore& store) {
    Canonicalizer canon(dim);
    std::vector<Code> set(stride);
    for (std::size_t i = begin; i < end; ++i) {
      const auto rep = level.representative(i);
      const CodeSet free = graph.free_set(rep);
      free.for_each([&](Code y) {
        // Insert y keeping the set sorted; remember its position.
        std::size_t pos = 0;
        std::size_t k = 0;
        bool placed = false;
        for (Code x : rep) {
          if (!placed && y < x) {
            pos = k;
            set[k++] = y;
            placed = true;
          }
          set[k++] = x;
        }
        if (!placed) {
          pos = k;
          set[k++] = y;
        }
        const auto key = canon.canonicalize(set);
        if (options.canonical_augmentation) {
          const auto pre = canon.preimages_of_last();
          if (!std::binary_search(pre.begin(), pre.end(), pos)) return;
        }
        store.insert(key);
        check_cap(store.size(), options, next_size);
      });
    }
  };

  std::vector<Code> flat;
  if (threads == 1) {
    KeyStore store(stride);
    work(0, reps, store);
    flat = sort_unique(store.flat(), stride);
  } else {
    std::vector<KeyStore> stores(threads, KeyStore(stride));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = reps * t / threads;
      const std::size_t end = reps * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end, stores[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    std::vector<Code> all;
    for (auto& s : stores) {
      all.insert(all.end(), s.flat().begin(), s.flat().end());
      s.flat().clear();
      s.flat().shrink_to_fit();
    }
    flat = sort_unique(all, stride);
  }
  check_cap(flat.size() / stride, options, next_size);
  return OrbitLevel(dim, next_size, std::move(flat));
}

std::vector<bool> non_extendible_flags(const OrbitLevel& level) {
  const CompatibilityGraph graph(level.dim());
  std::vector<bool> flags(level.count());
  for (std::size_t i = 0; i < level.count(); ++i) {
    flags[i] = graph.free_set(level.representative(i)).empty();
  }
  return flags;
}

std::uint64_t CountTable::tiling_orbits() const { return orbits_at(1 << dim); }

std::uint64_t CountTable::non_extendible_at(int size) const {
  for (const auto& l : levels) {
    if (l.size == size) return l.non_extendible;
  }
  return 0;
}

std::uint64_t CountTable::orbits_at(int size) const {
  for (const auto& l : levels) {
    if (l.size == size) return l.orbits;
  }
  return 0;
}

std::string CountTable::to_text() const {
  std::ostringstream out;
  out << "d=" << dim << "\n";
  out << std::setw(4) << "N" << std::setw(14) << "orbits" << std::setw(14) << "nonext" << "\n";
  for (const auto& l : levels) {
    out << std::setw(4) << l.size << std::setw(14) << l.orbits << std::setw(14) << l.non_extendible << "\n";
  }
  return out.str();
}

CountTable enumerate_all(int dim, const EnumerationOptions& options, const LevelVisitor& visitor) {
  check_dim(dim);
  const int max_size = options.max_size < 0 ? (1 << dim) : std::min(options.max_size, 1 << dim);
  CountTable table;
  table.dim = dim;
  OrbitLevel level = OrbitLevel::initial(dim);
  for (int size = 0;; ++size) {
    const auto flags = non_extendible_flags(level);
    LevelCounts row;
    row.size = size;
    row.orbits = level.count();
    row.non_extendible = static_cast<std::uint64_t>(std::count(flags.begin(), flags.end(), true));
    table.levels.push_back(row);
    if (visitor) visitor(level, flags);
    if (size >= max_size || level.count() == 0) break;
    level = extend_level(level, options);
  }
  return table;
}

// ---------------------------------------------------------------------------

TilingCompleter::TilingCompleter(int dim) : dim_(dim), graph_(dim), cells_(label_count(dim)) {
  // Cell u is covered by label x iff u - x lies in {0,1}^d.
  const auto n = label_count(dim);
  for (std::size_t x = 0; x < n; ++x) {
    CodeSet cells(dim);
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
      unsigned offset = 0;
      for (int i = 0; i < dim; ++i) {
        if ((mask >> i) & 1u) offset |= 1u << digit_shift(dim, i);
      }
      cells.set(add_codes(static_cast<Code>(x), static_cast<Code>(offset)));
    }
    cells_[x] = std::move(cells);
  }
}

std::optional<Packing> TilingCompleter::complete(const Packing& p) const {
  if (p.dim() != dim_) throw std::invalid_argument("complete: dimension mismatch");
  std::vector<Code> chosen(p.codes().begin(), p.codes().end());
  CodeSet covered(dim_);
  for (Code x : chosen) covered |= cells_[x];
  if (!search(chosen, covered, graph_.free_set(chosen))) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return Packing::unchecked(dim_, std::move(chosen));
}

bool TilingCompleter::search(std::vector<Code>& chosen, const CodeSet& covered, CodeSet free) const {
  const std::size_t target = std::size_t{1} << dim_;
  while (true) {
    if (chosen.size() == target) return true;
    if (chosen.size() + free.count() < target) return false;
    // Every uncovered cell must still be reachable from a free label.
    CodeSet reach = covered;
    free.for_each([&](Code y) { reach |= cells_[y]; });
    if (reach.count() != label_count(dim_)) return false;

    Code pick = 0;
    std::size_t best = SIZE_MAX;
    free.for_each([&](Code y) {
      const std::size_t c = free.count_and(graph_.compatible(y));
      if (c < best) {
        best = c;
        pick = y;
      }
    });

    CodeSet with = free;
    graph_.restrict(with, pick);
    CodeSet covered_with = covered;
    covered_with |= cells_[pick];
    chosen.push_back(pick);
    if (search(chosen, covered_with, with)) return true;
    chosen.pop_back();
    free.reset(pick);
  }
}

std::optional<Packing> complete_to_tiling(const Packing& p) { return TilingCompleter(p.dim()).complete(p); }

}  // namespace cubepack
