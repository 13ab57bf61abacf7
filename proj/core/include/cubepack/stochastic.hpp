#ifndef CUBEPACK_STOCHASTIC_HPP
#define CUBEPACK_STOCHASTIC_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "cubepack/code_set.hpp"
#include "cubepack/packing.hpp"
#include "cubepack/rng.hpp"
#include "cubepack/symmetry.hpp"

namespace cubepack {

enum class Objective { kMinimize, kMaximize };

struct SearchConfig {
  std::uint64_t seed = 1;
  // Consecutive rejected samples before switching to the free-list stage;
  // 0 selects the default 50 * d.
  int rejection_threshold = 0;
  int greedy_samples = 20;
  int metropolis_remove = 3;
  // Metropolis keeps any state whose size is within this bound (<= when
  // minimizing, >= when maximizing); negative disables it.
  int metropolis_bound = -1;
  Objective objective = Objective::kMinimize;
  std::uint64_t max_iterations = 1000;

  int effective_rejection_threshold(int dim) const {
    return rejection_threshold > 0 ? rejection_threshold : 50 * dim;
  }
};

struct MetropolisTrace {
  std::uint64_t iterations = 0;
  std::uint64_t accepted = 0;
  // (iteration, size) each time the best size improved; iteration 0 is the
  // start state.
  std::vector<std::pair<std::uint64_t, std::size_t>> improvements;
};

struct MetropolisResult {
  Packing best;
  Packing last;
  MetropolisTrace trace;
};

// Randomized generators of non-extendible packings sharing one
// compatibility graph and one random stream.
class PackingSampler {
 public:
  PackingSampler(int dim, SearchConfig config);
  PackingSampler(int dim, SearchConfig config, Rng rng);

  int dim() const { return dim_; }
  const SearchConfig& config() const { return config_; }
  Rng& rng() { return rng_; }

  // Two-stage random packer: rejection sampling until the configured run of
  // consecutive failures, then uniform picks from the free list until it is
  // empty.
  Packing random_packing();
  // Same procedure started from the cubes of partial.
  Packing complete_randomly(const Packing& partial);

  // Each step draws greedy_samples candidates from the free list and places
  // the one eliminating the most free labels (minimize) or fewest (maximize).
  Packing greedy_packing();

  // Remove metropolis_remove random cubes, re-complete randomly, accept if
  // strictly better or within metropolis_bound. on_accept sees each accepted
  // state.
  MetropolisResult metropolis(const Packing& start,
                              const std::function<void(const Packing&)>& on_accept = {});

 private:
  bool better(std::size_t candidate, std::size_t reference) const;
  bool within_bound(std::size_t size) const;

  int dim_;
  SearchConfig config_;
  CompatibilityGraph graph_;
  Rng rng_;
};

Packing random_packing(int dim, const SearchConfig& config);
Packing greedy_packing(int dim, const SearchConfig& config);
MetropolisResult metropolis_walk(const Packing& start, const SearchConfig& config);

// Counts distinct orbits of a stream of packings, by size. Feeding it the
// keys of an earlier census resumes that census.
class OrbitCensus {
 public:
  explicit OrbitCensus(int dim);

  // Returns true if the packing's orbit was not seen before.
  bool add(const Packing& p);
  bool add_key(const CanonicalKey& key);

  int dim() const { return dim_; }
  std::uint64_t samples() const { return samples_; }
  std::size_t orbits() const { return keys_.size(); }
  std::size_t orbits_of_size(std::size_t size) const;
  std::map<std::size_t, std::size_t> orbits_by_size() const;
  const std::set<CanonicalKey>& keys() const { return keys_; }

 private:
  int dim_;
  Canonicalizer canon_;
  std::uint64_t samples_ = 0;
  std::set<CanonicalKey> keys_;
};

}  // namespace cubepack

#endif  // CUBEPACK_STOCHASTIC_HPP
