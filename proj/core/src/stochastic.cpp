#include "cubepack/stochastic.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubepack {

PackingSampler::PackingSampler(int dim, SearchConfig config)
    : PackingSampler(dim, config, Rng(config.seed)) {}

PackingSampler::PackingSampler(int dim, SearchConfig config, Rng rng)
    : dim_(dim), config_(config), graph_(dim), rng_(std::move(rng)) {
  if (config_.greedy_samples <= 0) throw std::invalid_argument("greedy_samples must be positive");
  if (config_.metropolis_remove < 0) throw std::invalid_argument("metropolis_remove must be >= 0");
}

Packing PackingSampler::random_packing() { return complete_randomly(Packing(dim_)); }

Packing PackingSampler::complete_randomly(const Packing& partial) {
  if (partial.dim() != dim_) throw std::invalid_argument("complete_randomly: dimension mismatch");
  std::vector<Code> kept(partial.codes().begin(), partial.codes().end());
  const auto universe = label_count(dim_);
  const int threshold = config_.effective_rejection_threshold(dim_);

  int failures = 0;
  while (failures < threshold) {
    const auto y = static_cast<Code>(rng_.below(universe));
    bool ok = true;
    for (Code x : kept) {
      if (codes_overlap(x, y)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      kept.push_back(y);
      failures = 0;
    } else {
      ++failures;
    }
  }

  CodeSet free = graph_.free_set(kept);
  while (!free.empty()) {
    const Code y = free.nth(rng_.below(free.count()));
    kept.push_back(y);
    graph_.restrict(free, y);
  }
  std::sort(kept.begin(), kept.end());
  return Packing::unchecked(dim_, std::move(kept));
}

Packing PackingSampler::greedy_packing() {
  std::vector<Code> kept;
  CodeSet free(dim_, true);
  std::size_t remaining = free.count();
  while (remaining != 0) {
    Code pick = 0;
    std::size_t best_score = 0;
    for (int s = 0; s < config_.greedy_samples; ++s) {
      const Code y = free.nth(rng_.below(remaining));
      const std::size_t score = graph_.eliminated(free, y);
      const bool take = s == 0 || (config_.objective == Objective::kMinimize ? score > best_score
                                                                             : score < best_score);
      if (take) {
        best_score = score;
        pick = y;
      }
    }
    kept.push_back(pick);
    graph_.restrict(free, pick);
    remaining = free.count();
  }
  std::sort(kept.begin(), kept.end());
  return Packing::unchecked(dim_, std::move(kept));
}

bool PackingSampler::better(std::size_t candidate, std::size_t reference) const {
  return config_.objective == Objective::kMinimize ? candidate < reference : candidate > reference;
}

bool PackingSampler::within_bound(std::size_t size) const {
  if (config_.metropolis_bound < 0) return false;
  const auto bound = static_cast<std::size_t>(config_.metropolis_bound);
  return config_.objective == Objective::kMinimize ? size <= bound : size >= bound;
}

MetropolisResult PackingSampler::metropolis(const Packing& start,
                                            const std::function<void(const Packing&)>& on_accept) {
  if (start.dim() != dim_) throw std::invalid_argument("metropolis: dimension mismatch");
  if (!graph_.free_set(start.codes()).empty()) {
    throw std::invalid_argument("metropolis: start packing is extendible");
  }
  MetropolisResult result{start, start, {}};
  result.trace.improvements.emplace_back(0, start.size());
  Packing& current = result.last;
  for (std::uint64_t it = 1; it <= config_.max_iterations; ++it) {
    ++result.trace.iterations;
    if (config_.metropolis_remove == 0) continue;
    std::vector<Code> codes(current.codes().begin(), current.codes().end());
    const auto remove = std::min<std::size_t>(static_cast<std::size_t>(config_.metropolis_remove), codes.size());
    for (std::size_t k = 0; k < remove; ++k) {
      const auto j = rng_.below(codes.size());
      codes[j] = codes.back();
      codes.pop_back();
    }
    std::sort(codes.begin(), codes.end());
    Packing candidate = complete_randomly(Packing::unchecked(dim_, std::move(codes)));
    if (!better(candidate.size(), current.size()) && !within_bound(candidate.size())) continue;
    ++result.trace.accepted;
    current = std::move(candidate);
    if (on_accept) on_accept(current);
    if (better(current.size(), result.best.size())) {
      result.best = current;
      result.trace.improvements.emplace_back(it, current.size());
    }
  }
  return result;
}

Packing random_packing(int dim, const SearchConfig& config) {
  return PackingSampler(dim, config).random_packing();
}

Packing greedy_packing(int dim, const SearchConfig& config) {
  return PackingSampler(dim, config).greedy_packing();
}

MetropolisResult metropolis_walk(const Packing& start, const SearchConfig& config) {
  return PackingSampler(start.dim(), config).metropolis(start);
}

OrbitCensus::OrbitCensus(int dim) : dim_(dim), canon_(dim) {}

bool OrbitCensus::add(const Packing& p) {
  if (p.dim() != dim_) throw std::invalid_argument("census: dimension mismatch");
  ++samples_;
  const auto k = canon_.canonicalize(p.codes());
  return keys_.insert(CanonicalKey{dim_, std::vector<Code>(k.begin(), k.end())}).second;
}

bool OrbitCensus::add_key(const CanonicalKey& key) {
  if (key.dim != dim_) throw std::invalid_argument("census: dimension mismatch");
  return keys_.insert(key).second;
}

std::size_t OrbitCensus::orbits_of_size(std::size_t size) const {
  std::size_t n = 0;
  for (const auto& k : keys_) n += k.size() == size ? 1 : 0;
  return n;
}

std::map<std::size_t, std::size_t> OrbitCensus::orbits_by_size() const {
  std::map<std::size_t, std::size_t> out;
  for (const auto& k : keys_) ++out[k.size()];
  return out;
}

}  // namespace cubepack
