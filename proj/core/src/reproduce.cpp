#include "cubepack/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "cubepack/analysis.hpp"
#include "cubepack/code_set.hpp"
#include "cubepack/enumeration.hpp"
#include "cubepack/flips.hpp"
#include "cubepack/packing.hpp"
#include "cubepack/stochastic.hpp"
#include "cubepack/symmetry.hpp"

namespace cubepack {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(s < 10 ? 2 : 1) << s << " s";
  return out.str();
}

const char* const kTitles[] = {
    "",
    "d=2 enumeration: 2 tiling orbits, nothing non-extendible below 4",
    "d=3 enumeration: unique non-extendible orbit at N=4, 9 tiling orbits",
    "d=4 enumeration: non-extendible orbit counts by N",
    "flip graph from the regular tiling reaches every tiling orbit (d<=4)",
    "blocking sets: listed sets block; exhaustive orbit counts",
    "h recurrence from h(4)=7 gives 10, 14",
    "moments: m2(regular)=(5/2)^d, m1=(3/4)^d N on every orbit",
    "second-moment lower bound and pair-window formula",
    "extension: every d=4 packing with N=13,14,15 completes to a tiling",
    "constructions: product and lift are non-extendible",
    "stochastic d=5 Metropolis search reaches 12 cubes; census <= 203",
    "merge operator: second moment monotone, composite is regular",
    "invariants: generator outputs, layer deficits, key inequality",
};

Code label(std::initializer_list<int> c) { return CubeLabel(c).code(); }

std::string join_keys(const std::vector<Code>& codes, int dim) {
  std::ostringstream out;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    out << (i ? " " : "") << "(";
    for (int k = 0; k < dim; ++k) out << (k ? "," : "") << digit(dim, codes[i], k);
    out << ")";
  }
  return out.str();
}

// Everything one enumeration pass over dimension d establishes.
struct DimensionData {
  int dim = 0;
  double seconds = 0;        // whole pass including checks
  double check_seconds = 0;  // per-entry checks only
  CountTable table;
  std::vector<CanonicalKey> tiling_keys;
  std::map<int, std::vector<CanonicalKey>> non_extendible_keys;

  std::uint64_t entries = 0;
  std::uint64_t m1_bad = 0;
  std::uint64_t m2_bad = 0;
  std::uint64_t deficit_bad = 0;
  std::uint64_t completion_tried = 0;
  std::uint64_t completion_failed = 0;
  Rational tiling_m2_max;
  std::uint64_t tilings_at_max = 0;
  bool regular_at_max = false;
};

class Result {
 public:
  Result(int id) {
    r_.id = id;
    r_.title = kTitles[id];
    r_.status = CriterionStatus::kPass;
  }

  void check(bool ok, const std::string& what) {
    r_.details.push_back((ok ? "ok    " : "FAIL  ") + what);
    if (!ok) r_.status = CriterionStatus::kFail;
  }
  void skip(const std::string& what) {
    r_.details.push_back("skip  " + what);
    if (r_.status == CriterionStatus::kPass) r_.status = CriterionStatus::kSkip;
  }
  void info(const std::string& what) { r_.details.push_back("info  " + what); }

  CriterionResult finish(Clock::time_point t0) {
    r_.seconds = since(t0);
    return r_;
  }

 private:
  CriterionResult r_;
};

class Harness {
 public:
  explicit Harness(const ReproductionOptions& options) : opt_(options) {}

  CriterionResult run(int id) {
    switch (id) {
      case 1: return c1();
      case 2: return c2();
      case 3: return c3();
      case 4: return c4();
      case 5: return c5();
      case 6: return c6();
      case 7: return c7();
      case 8: return c8();
      case 9: return c9();
      case 10: return c10();
      case 11: return c11();
      case 12: return c12();
      case 13: return c13();
      default: throw std::invalid_argument("no criterion " + std::to_string(id));
    }
  }

 private:
  void progress(const std::string& msg) const {
    if (opt_.progress) opt_.progress(msg);
  }

  EnumerationOptions enum_options() const {
    EnumerationOptions e;
    e.threads = std::max(1u, opt_.threads);
    return e;
  }

  const DimensionData& data(int d) {
    auto it = data_.find(d);
    if (it != data_.end()) return it->second;
    DimensionData dd;
    dd.dim = d;
    const WindowCounter counter(d);
    const TilingCompleter completer(d);
    const auto regular_key = canonical_form(regular_tiling(d));
    const auto t0 = Clock::now();
    dd.table = enumerate_all(d, enum_options(), [&](const OrbitLevel& level, const std::vector<bool>& flags) {
      const auto tc = Clock::now();
      const int n = level.size();
      const int deficit = (1 << d) - n;
      for (std::size_t i = 0; i < level.count(); ++i) {
        const Packing p = level.packing(i);
        ++dd.entries;
        if (flags[i]) dd.non_extendible_keys[n].push_back(level.key(i));
        if (n == (1 << d)) dd.tiling_keys.push_back(level.key(i));

        MomentReport m;
        try {
          m = moments(p, counter);
        } catch (const std::logic_error&) {
          ++dd.m1_bad;
          continue;
        }
        if (m.m2 < m.m2_lower_bound) ++dd.m2_bad;
        if (n == (1 << d)) {
          const bool regular = level.key(i) == regular_key;
          if (dd.tilings_at_max == 0 || m.m2 > dd.tiling_m2_max) {
            dd.tiling_m2_max = m.m2;
            dd.tilings_at_max = 0;
            dd.regular_at_max = false;
          }
          if (m.m2 == dd.tiling_m2_max) {
            ++dd.tilings_at_max;
            dd.regular_at_max = dd.regular_at_max || regular;
          }
        }

        if (d >= 2) {
          for (int c = 0; c < d; ++c) {
            const auto ld = layer_deficits(p, c);
            bool ok = ld.alternating_sum() == 0 && ld.total() == 2 * deficit;
            for (int v : ld.delta) ok = ok && v <= deficit;
            if (!ok) ++dd.deficit_bad;
          }
        }

        if (deficit >= 1 && deficit <= 3) {
          ++dd.completion_tried;
          const auto t = completer.complete(p);
          bool ok = t.has_value() && is_tiling(*t);
          for (Code x : p.codes()) ok = ok && t->contains(x);
          if (!ok) ++dd.completion_failed;
        }
      }
      dd.check_seconds += since(tc);
      if (d >= 4) progress("d=" + std::to_string(d) + " level N=" + std::to_string(n) + ": " +
                           std::to_string(level.count()) + " orbits, " + fmt_seconds(since(t0)));
    });
    dd.seconds = since(t0);
    return data_.emplace(d, std::move(dd)).first->second;
  }

  bool have(int d) const { return d <= opt_.max_dim; }

  // ---------------------------------------------------------------------

  CriterionResult c1() {
    Result r(1);
    const auto t0 = Clock::now();
    const auto table = enumerate_all(2, enum_options());
    const double secs = since(t0);
    r.check(table.tiling_orbits() == 2, "tiling orbits at N=4: " + std::to_string(table.tiling_orbits()) + " (want 2)");
    std::uint64_t below = 0;
    for (int n = 0; n < 4; ++n) below += table.non_extendible_at(n);
    r.check(below == 0, "non-extendible orbits with N<4: " + std::to_string(below) + " (want 0)");
    r.check(table.non_extendible_at(4) == 2, "non-extendible orbits at N=4: " + std::to_string(table.non_extendible_at(4)));
    r.check(secs < 1.0, "enumeration time " + fmt_seconds(secs) + " (budget 1 s)");
    return r.finish(t0);
  }

  CriterionResult c2() {
    Result r(2);
    const auto t0 = Clock::now();
    if (!have(3)) {
      r.skip("needs --dim 3");
      return r.finish(t0);
    }
    const auto table = enumerate_all(3, enum_options());
    const double secs = since(t0);
    const auto& dd = data(3);
    r.check(table.non_extendible_at(4) == 1, "non-extendible orbits at N=4: " + std::to_string(table.non_extendible_at(4)) + " (want 1)");
    const auto it = dd.non_extendible_keys.find(4);
    const bool key_ok = it != dd.non_extendible_keys.end() && it->second.size() == 1 &&
                        it->second[0] == canonical_form(chiral_packing_3d());
    r.check(key_ok, "its key equals the key of {(0,0,0),(3,2,3),(2,1,1),(1,3,2)}");
    for (int n : {5, 6, 7}) {
      r.check(table.non_extendible_at(n) == 0, "non-extendible orbits at N=" + std::to_string(n) + ": " + std::to_string(table.non_extendible_at(n)));
    }
    r.check(table.tiling_orbits() == 9, "tiling orbits at N=8: " + std::to_string(table.tiling_orbits()) + " (want 9)");
    r.check(secs < 10.0, "enumeration time " + fmt_seconds(secs) + " (budget 10 s)");
    return r.finish(t0);
  }

  CriterionResult c3() {
    Result r(3);
    const auto t0 = Clock::now();
    if (!have(4)) {
      r.skip("needs --dim 4");
      return r.finish(t0);
    }
    const auto& dd = data(4);
    const std::map<int, std::uint64_t> want = {{8, 38}, {9, 6}, {10, 24}, {11, 0}, {12, 71},
                                               {13, 0}, {14, 0}, {15, 0}, {16, 744}};
    for (const auto& [n, w] : want) {
      const auto got = dd.table.non_extendible_at(n);
      r.check(got == w, "N=" + std::to_string(n) + ": " + std::to_string(got) + " (want " + std::to_string(w) + ")");
    }
    std::uint64_t small = 0;
    for (int n = 0; n < 8; ++n) small += dd.table.non_extendible_at(n);
    r.check(small == 0, "N<8: " + std::to_string(small) + " non-extendible orbits");
    std::uint64_t total = 0;
    for (const auto& l : dd.table.levels) total += l.orbits;
    r.info("total orbits over all levels: " + std::to_string(total) + "; enumeration with checks " + fmt_seconds(dd.seconds));
    return r.finish(t0);
  }

  CriterionResult c4() {
    Result r(4);
    const auto t0 = Clock::now();
    const std::map<int, std::size_t> want = {{2, 2}, {3, 9}, {4, 744}};
    for (const auto& [d, w] : want) {
      if (!have(d)) {
        r.skip("d=" + std::to_string(d) + " needs --dim " + std::to_string(d));
        continue;
      }
      const auto g = explore_component(regular_tiling(d));
      r.check(g.orbits.size() == w, "d=" + std::to_string(d) + ": " + std::to_string(g.orbits.size()) + " orbits reached (want " + std::to_string(w) + "), " + std::to_string(g.edges.size()) + " orbit edges");
      r.check(g.orbits == data(d).tiling_keys, "d=" + std::to_string(d) + ": reached keys equal the enumerated tiling keys");
    }
    return r.finish(t0);
  }

  CriterionResult c5() {
    Result r(5);
    const auto t0 = Clock::now();
    const std::vector<std::vector<Code>> three = {
        {label({0, 0, 0}), label({1, 1, 1}), label({2, 2, 2}), label({3, 3, 3})},
        {label({0, 0, 0}), label({1, 1, 1}), label({2, 2, 3}), label({3, 3, 2})},
        {label({0, 0, 0}), label({3, 2, 3}), label({2, 1, 1}), label({1, 3, 2})},
    };
    std::set<CanonicalKey> listed;
    for (const auto& s : three) {
      r.check(is_blocking(3, s), "d=3 listed set " + join_keys(s, 3) + " is blocking");
      listed.insert(canonical_form(3, s));
    }
    r.check(listed.size() == 3, "the three listed d=3 sets lie in distinct orbits");

    const std::vector<Code> seven = {label({0, 0, 0, 0}), label({1, 1, 1, 1}), label({2, 2, 2, 2}), label({3, 3, 3, 3}),
                                     label({0, 0, 1, 1}), label({1, 1, 2, 2}), label({2, 2, 3, 3})};
    std::vector<Code> missed;
    for (Code v = 0; v < 256; ++v) {
      if (std::none_of(seven.begin(), seven.end(), [&](Code x) { return codes_overlap(x, v); })) missed.push_back(v);
    }
    r.check(is_blocking(4, seven), "d=4 listed 7-set " + join_keys(seven, 4) + " is blocking" +
                                       (missed.empty() ? "" : "; unblocked labels: " + join_keys(missed, 4)));
    auto fixed = seven;
    fixed[4] = label({3, 3, 1, 1});
    if (is_blocking(4, fixed)) {
      r.info("replacing (0,0,1,1) by (3,3,1,1) gives a blocking 7-set, so h(4) <= 7 still holds");
    }

    const auto b23 = min_blocking_search(2, 3);
    r.check(b23.size() == 2, "d=2 size 3: " + std::to_string(b23.size()) + " blocking orbits (want 2)");
    const auto b33 = min_blocking_search(3, 3);
    r.check(b33.empty(), "d=3 size 3: " + std::to_string(b33.size()) + " blocking orbits (want 0)");
    const auto b34 = min_blocking_search(3, 4);
    r.check(b34.size() == 3, "d=3 size 4: " + std::to_string(b34.size()) + " blocking orbits (want 3)");
    r.check(std::set<CanonicalKey>(b34.begin(), b34.end()) == listed, "d=3 size-4 orbits are exactly the listed sets");
    if (have(4)) {
      const auto t6 = Clock::now();
      const auto b46 = min_blocking_search(4, 6);
      r.info("d=4 size 6: " + std::to_string(b46.size()) + " blocking orbits by exhaustive search (" + fmt_seconds(since(t6)) + ")" +
             (b46.empty() ? ", so h(4) > 6" : ""));
    }
    const double secs = since(t0);
    r.check(secs < 60.0, "time " + fmt_seconds(secs) + " (budget 1 min)");
    return r.finish(t0);
  }

  CriterionResult c6() {
    Result r(6);
    const auto t0 = Clock::now();
    const auto seq = h_recurrence(7, 2);
    r.check(seq == std::vector<int>{10, 14}, "h(5) >= " + std::to_string(seq.at(0)) + ", h(6) >= " + std::to_string(seq.at(1)));
    return r.finish(t0);
  }

  CriterionResult c7() {
    Result r(7);
    const auto t0 = Clock::now();
    Rational expect = 1;
    for (int d = 1; d <= 6; ++d) {
      expect *= Rational(5, 2);
      const auto m = moments(regular_tiling(d));
      r.check(m.m2 == expect, "d=" + std::to_string(d) + ": m2(regular) = " + format_rational(m.m2));
    }
    double checks = since(t0);
    for (int d = 1; d <= 4; ++d) {
      if (!have(d)) {
        r.skip("database d=" + std::to_string(d) + " needs --dim " + std::to_string(d));
        continue;
      }
      const auto& dd = data(d);
      checks += dd.check_seconds;
      r.check(dd.m1_bad == 0, "d=" + std::to_string(d) + ": m1 = (3/4)^d N on all " + std::to_string(dd.entries) + " orbits (" + std::to_string(dd.m1_bad) + " violations)");
      r.info("d=" + std::to_string(d) + ": max m2 over tilings " + format_rational(dd.tiling_m2_max) + ", attained by " +
             std::to_string(dd.tilings_at_max) + " orbit(s)" + (dd.regular_at_max && dd.tilings_at_max == 1 ? ", only the regular tiling" : ""));
    }
    r.check(checks < 60.0, "check time " + fmt_seconds(checks) + " excluding enumeration (budget 1 min)");
    return r.finish(t0);
  }

  CriterionResult c8() {
    Result r(8);
    const auto t0 = Clock::now();
    for (int d = 1; d <= 4; ++d) {
      if (!have(d)) {
        r.skip("database d=" + std::to_string(d) + " needs --dim " + std::to_string(d));
        continue;
      }
      const auto& dd = data(d);
      r.check(dd.m2_bad == 0, "d=" + std::to_string(d) + ": m2 >= bound on all " + std::to_string(dd.entries) + " orbits (" + std::to_string(dd.m2_bad) + " violations)");
    }
    {
      PackingSampler sampler(5, SearchConfig{}, Rng::child(opt_.seed, 800));
      const WindowCounter counter(5);
      std::uint64_t bad = 0;
      Rational slack = -1;
      for (int i = 0; i < 10000; ++i) {
        const auto m = moments(sampler.random_packing(), counter);
        if (m.m2 < m.m2_lower_bound) ++bad;
        const Rational gap = m.m2 - m.m2_lower_bound;
        if (slack < 0 || gap < slack) slack = gap;
      }
      r.check(bad == 0, "d=5: m2 >= bound on 10000 seeded random packings (" + std::to_string(bad) + " violations; smallest gap " + format_rational(slack) + ")");
    }
    for (int d = 2; d <= 4; ++d) {
      PackingSampler sampler(d, SearchConfig{}, Rng::child(opt_.seed, 810 + static_cast<std::uint64_t>(d)));
      std::uint64_t pairs = 0, bad = 0, column_bad = 0;
      for (int i = 0; i < 100; ++i) {
        const auto s = window_pair_stats(sampler.random_packing());
        pairs += s.pairs.size();
        for (const auto& p : s.pairs) bad += p.formula == p.brute ? 0 : 1;
        column_bad += s.columns_meet_bound() ? 0 : 1;
      }
      r.check(bad == 0, "d=" + std::to_string(d) + ": t_ij closed form = brute force on " + std::to_string(pairs) + " pairs of 100 random packings");
      r.check(column_bad == 0, "d=" + std::to_string(d) + ": column pair counts R_l >= 2q(q-1)+rq on all 100");
    }
    return r.finish(t0);
  }

  CriterionResult c9() {
    Result r(9);
    const auto t0 = Clock::now();
    r.check(!complete_to_tiling(chiral_packing_3d()).has_value(), "d=3 chiral 4-packing has no completion");
    for (int d = 2; d <= 4; ++d) {
      if (!have(d)) {
        r.skip("d=" + std::to_string(d) + " needs --dim " + std::to_string(d));
        continue;
      }
      const auto& dd = data(d);
      r.check(dd.completion_failed == 0, "d=" + std::to_string(d) + ": " + std::to_string(dd.completion_tried - dd.completion_failed) + " of " +
                                            std::to_string(dd.completion_tried) + " orbits with deficit 1..3 complete to a tiling");
    }
    return r.finish(t0);
  }

  CriterionResult c10() {
    Result r(10);
    const auto t0 = Clock::now();
    const auto fig = chiral_packing_3d();
    const auto prod = product_packing(fig, fig);
    r.check(prod.dim() == 6 && prod.size() == 16 && is_packing(6, prod.codes()), "product: d=6 packing with 16 cubes");
    r.check(free_labels(prod).empty(), "product: free-label scan over 4096 labels is empty");
    const auto lifted = lift(fig, regular_tiling(3));
    r.check(lifted.dim() == 4 && lifted.size() == 12 && is_packing(4, lifted.codes()), "lift: d=4 packing with 12 cubes");
    r.check(free_labels(lifted).empty(), "lift: non-extendible");
    if (have(4)) {
      const auto& keys = data(4).non_extendible_keys.at(12);
      const bool found = std::find(keys.begin(), keys.end(), canonical_form(lifted)) != keys.end();
      r.check(found, "lift: key is among the " + std::to_string(keys.size()) + " non-extendible d=4 N=12 orbits");
    } else {
      r.skip("lift key lookup needs --dim 4");
    }
    return r.finish(t0);
  }

  CriterionResult c11() {
    Result r(11);
    const auto t0 = Clock::now();
    SearchConfig cfg;
    cfg.objective = Objective::kMinimize;
    cfg.metropolis_remove = 3;
    cfg.metropolis_bound = 14;
    cfg.max_iterations = opt_.stochastic_iterations;
    const int seeds = opt_.stochastic_seeds;
    r.info("config: remove=3 bound=14 iterations=" + std::to_string(cfg.max_iterations) + " seeds=" + std::to_string(seeds) + ", greedy start");

    struct SeedOutcome {
      std::size_t start = 0;
      std::size_t best = 0;
      std::uint64_t accepted = 0;
      std::uint64_t invalid = 0;
      std::set<CanonicalKey> twelve;
    };
    std::vector<SeedOutcome> out(static_cast<std::size_t>(seeds));
    std::mutex mu;
    int done = 0;
    auto work = [&](int s) {
      PackingSampler sampler(5, cfg, Rng::child(opt_.seed, 1100 + static_cast<std::uint64_t>(s)));
      const CompatibilityGraph graph(5);
      OrbitCensus census(5);
      SeedOutcome o;
      const auto start = sampler.greedy_packing();
      o.start = start.size();
      const auto res = sampler.metropolis(start, [&](const Packing& p) {
        if (!is_packing(5, p.codes()) || !graph.free_set(p.codes()).empty()) ++o.invalid;
        if (p.size() == 12) census.add(p);
      });
      o.best = res.best.size();
      o.accepted = res.trace.accepted;
      o.twelve = census.keys();
      std::lock_guard lock(mu);
      out[static_cast<std::size_t>(s)] = std::move(o);
      progress("stochastic seed " + std::to_string(s) + ": best " + std::to_string(out[static_cast<std::size_t>(s)].best) +
               " (" + std::to_string(++done) + "/" + std::to_string(seeds) + ")");
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(opt_.threads, static_cast<unsigned>(seeds)));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int s = static_cast<int>(w); s < seeds; s += static_cast<int>(workers)) work(s);
      });
    }
    for (auto& t : pool) t.join();

    OrbitCensus census(5);
    std::size_t best = 64;
    int hits = 0;
    std::uint64_t invalid = 0;
    std::ostringstream bests;
    for (const auto& o : out) {
      for (const auto& k : o.twelve) census.add_key(k);
      best = std::min(best, o.best);
      hits += o.best <= 12 ? 1 : 0;
      invalid += o.invalid;
      bests << (bests.tellp() > 0 ? " " : "") << o.best;
    }
    r.info("best size per seed: " + bests.str());
    r.check(best <= 12, std::to_string(hits) + " of " + std::to_string(seeds) + " runs reached <= 12 cubes (best " + std::to_string(best) + ")");
    r.check(census.orbits() <= 203, "distinct size-12 orbits seen: " + std::to_string(census.orbits()) + " (must not exceed 203)");
    if (census.orbits() > 203) r.info("FALSIFICATION: more than 203 orbits of non-extendible 12-cube packings in d=5");
    r.check(invalid == 0, "every accepted state is a non-extendible packing (" + std::to_string(invalid) + " invalid)");
    return r.finish(t0);
  }

  CriterionResult c12() {
    Result r(12);
    const auto t0 = Clock::now();
    for (int d = 1; d <= 3; ++d) {
      Rng rng = Rng::child(opt_.seed, 1200 + static_cast<std::uint64_t>(d));
      const auto regular = density_from_packing(regular_tiling(d));
      std::uint64_t outside = 0, decreases = 0, wrong_end = 0, strict = 0;
      for (int it = 0; it < 1000; ++it) {
        auto f = random_density(d, rng);
        if (!f.in_space()) ++outside;
        auto moment = f.second_moment();
        for (int i = 0; i < d; ++i) {
          auto g = merge(f, i);
          if (!g.in_space()) ++outside;
          const auto next = g.second_moment();
          if (next < moment) ++decreases;
          if (next > moment) ++strict;
          moment = next;
          f = std::move(g);
        }
        if (!(f == regular)) ++wrong_end;
      }
      r.check(outside == 0, "d=" + std::to_string(d) + ": all 1000 densities and their merges lie in the space");
      r.check(decreases == 0, "d=" + std::to_string(d) + ": no merge decreased the second moment (" + std::to_string(strict) + " strict increases)");
      r.check(wrong_end == 0, "d=" + std::to_string(d) + ": composite of all merges is the regular indicator (" + std::to_string(wrong_end) + " mismatches)");
    }
    const double secs = since(t0);
    r.check(secs < 300.0, "time " + fmt_seconds(secs) + " (budget 5 min)");
    return r.finish(t0);
  }

  CriterionResult c13() {
    Result r(13);
    const auto t0 = Clock::now();
    const std::map<int, std::set<std::size_t>> spectrum = {
        {1, {2}}, {2, {4}}, {3, {4, 8}}, {4, {8, 9, 10, 12, 16}}};
    for (int d = 1; d <= 5; ++d) {
      std::uint64_t outputs = 0, bad = 0, off_spectrum = 0;
      auto verify = [&](const Packing& p) {
        ++outputs;
        if (!is_packing(d, p.codes()) || !free_labels(p).empty()) ++bad;
        const auto it = spectrum.find(d);
        if (it != spectrum.end() && !it->second.count(p.size())) ++off_spectrum;
      };
      for (int s = 0; s < 100; ++s) {
        SearchConfig cfg;
        PackingSampler a(d, cfg, Rng::child(opt_.seed, 1300 + 100 * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(s)));
        verify(a.random_packing());
        verify(a.greedy_packing());
        cfg.objective = Objective::kMaximize;
        PackingSampler b(d, cfg, Rng::child(opt_.seed, 1900 + 100 * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(s)));
        verify(b.greedy_packing());
      }
      SearchConfig walk;
      walk.max_iterations = 2000;
      walk.metropolis_bound = 1 << d;  // accept every state so each one is checked
      PackingSampler m(d, walk, Rng::child(opt_.seed, 2500 + static_cast<std::uint64_t>(d)));
      const auto start = m.random_packing();
      verify(start);
      const auto res = m.metropolis(start, verify);
      verify(res.best);
      r.check(bad == 0, "d=" + std::to_string(d) + ": " + std::to_string(outputs) + " random/greedy/Metropolis outputs are non-extendible packings (" + std::to_string(bad) + " bad)");
      if (spectrum.count(d)) {
        r.check(off_spectrum == 0, "d=" + std::to_string(d) + ": all output sizes in the non-extendible spectrum (" + std::to_string(off_spectrum) + " outside)");
      }
    }
    for (int d = 2; d <= 4; ++d) {
      if (!have(d)) {
        r.skip("deficits on database d=" + std::to_string(d) + " need --dim " + std::to_string(d));
        continue;
      }
      const auto& dd = data(d);
      r.check(dd.deficit_bad == 0, "d=" + std::to_string(d) + ": layer deficits satisfy the lemma, alternating sum 0 and total 2*delta on all " +
                                       std::to_string(dd.entries) + " orbits x " + std::to_string(d) + " coordinates");
    }
    Rng rng = Rng::child(opt_.seed, 1399);
    std::uint64_t fails = 0;
    for (int i = 0; i < 100000; ++i) {
      std::array<Rational, 4> x;
      for (auto& v : x) v = Rational(static_cast<long long>(rng.below(1000)), static_cast<long long>(1 + rng.below(100)));
      if (!key_inequality_check(x[0], x[1], x[2], x[3])) ++fails;
    }
    r.check(fails == 0, "key inequality holds on 100000 random nonnegative rational quadruples");
    const double secs = since(t0);
    r.check(secs < 600.0, "time " + fmt_seconds(secs) + " (budget 10 min, excluding enumeration)");
    return r.finish(t0);
  }

  ReproductionOptions opt_;
  std::map<int, DimensionData> data_;
};

}  // namespace

int criterion_count() { return 13; }

std::string criterion_title(int id) {
  if (id < 1 || id > criterion_count()) throw std::invalid_argument("no criterion " + std::to_string(id));
  return kTitles[id];
}

std::vector<CriterionResult> run_reproduction(const ReproductionOptions& options,
                                              const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<int> ids = options.only;
  if (ids.empty()) {
    for (int i = 1; i <= criterion_count(); ++i) ids.push_back(i);
  }
  for (int id : ids) criterion_title(id);
  Harness h(options);
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(h.run(id));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r, bool with_details) {
  std::ostringstream out;
  const char* tag = r.status == CriterionStatus::kPass ? "PASS" : r.status == CriterionStatus::kFail ? "FAIL" : "SKIP";
  out << tag << "  " << std::setw(2) << r.id << "  " << r.title << "  (" << fmt_seconds(r.seconds) << ")\n";
  if (with_details) {
    for (const auto& d : r.details) out << "        " << d << "\n";
  }
  return out.str();
}

}  // namespace cubepack
