// Command-line front end: enumeration, flips, stochastic search, analysis,
// blocking sets, reproduction checks and canonical keys.
//
// Exit status: 0 success, 2 invalid input or failed verification, 3 resource
// cap reached.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cubepack/analysis.hpp"
#include "cubepack/enumeration.hpp"
#include "cubepack/flips.hpp"
#include "cubepack/io.hpp"
#include "cubepack/reproduce.hpp"
#include "cubepack/stochastic.hpp"
#include "cubepack/symmetry.hpp"

using namespace cubepack;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitLimit = 3;

struct Globals {
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::size_t limit = 0;
};

enum class Format { kText, kJson };

void emit(std::ostream& out, const PackingRecord& r, Format f) {
  if (f == Format::kJson) {
    out << to_json_line(r) << "\n";
  } else {
    out << to_text(r);
  }
}

PackingRecord describe(const Packing& p, const std::string& generator, std::optional<std::uint64_t> seed) {
  auto r = PackingRecord::from_packing(p);
  r.meta.generator = generator;
  r.meta.seed = seed;
  r.meta.key = canonical_form(p).serialize();
  r.meta.size = p.size();
  r.meta.non_extendible = free_labels(p).empty();
  return r;
}

std::vector<PackingRecord> load(const std::string& path, bool raw) {
  if (path == "-") return read_records(std::cin, raw);
  return read_records_file(path, raw);
}

// --- enumerate -------------------------------------------------------------

struct EnumerateArgs {
  int dim = 0;
  int max_size = -1;
  std::string out;
  bool json = false;
};

int run_enumerate(const EnumerateArgs& a, const Globals& g) {
  EnumerationOptions opt;
  opt.max_size = a.max_size;
  opt.threads = g.threads;
  opt.representative_cap = g.limit;
  std::optional<OrbitDatabase> db;
  if (!a.out.empty()) db.emplace(a.out, a.dim);
  const auto table = enumerate_all(a.dim, opt, [&](const OrbitLevel& level, const std::vector<bool>& flags) {
    if (db) db->write_level(level, flags);
  });
  if (a.json) {
    for (const auto& l : table.levels) {
      std::cout << "{\"d\":" << table.dim << ",\"n\":" << l.size << ",\"orbits\":" << l.orbits
                << ",\"nonExtendible\":" << l.non_extendible << "}\n";
    }
  } else {
    std::cout << table.to_text();
  }
  return 0;
}

// --- flips -----------------------------------------------------------------

struct FlipsArgs {
  int dim = 0;
  std::string start;
  bool raw = false;
  bool edges = false;
};

void print_graph(const FlipGraph& graph, bool edges) {
  std::cout << "orbits " << graph.orbits.size() << "\nedges " << graph.edges.size() << "\n";
  if (!edges) return;
  for (const auto& k : graph.orbits) std::cout << "orbit " << k.serialize() << "\n";
  for (const auto& [a, b] : graph.edges) {
    std::cout << "edge " << graph.orbits[a].serialize() << " " << graph.orbits[b].serialize() << "\n";
  }
}

int run_flips(const FlipsArgs& a, const Globals& g) {
  Packing start = regular_tiling(a.dim);
  if (!a.start.empty()) {
    const auto recs = load(a.start, false);
    if (recs.empty()) throw std::invalid_argument("no tiling in " + a.start);
    start = recs.front().to_packing();
  }
  ExploreOptions opt;
  opt.state_cap = g.limit;
  opt.raw_states = a.raw;
  try {
    print_graph(explore_component(start, opt), a.edges);
  } catch (const PartialExplorationError& e) {
    print_graph(e.partial(), a.edges);
    for (const auto& k : e.frontier()) std::cout << "frontier " << k.serialize() << "\n";
    throw;
  }
  return 0;
}

// --- random / greedy / metropolis ------------------------------------------

struct SearchArgs {
  int dim = 0;
  int count = 1;
  std::string objective = "min";
  std::string start;
  std::string format = "text";
  bool census = false;
  bool trace = false;
  SearchConfig config;
};

void print_census(const OrbitCensus& census) {
  std::cout << "# census samples=" << census.samples() << " orbits=" << census.orbits() << "\n";
  for (const auto& [size, n] : census.orbits_by_size()) std::cout << "# size " << size << ": " << n << " orbits\n";
}

int run_search(const std::string& kind, SearchArgs a, const Globals& g) {
  a.config.seed = g.seed;
  a.config.objective = a.objective == "max" ? Objective::kMaximize : Objective::kMinimize;
  const Format fmt = a.format == "json" ? Format::kJson : Format::kText;
  OrbitCensus census(a.dim);
  for (int i = 0; i < a.count; ++i) {
    // Run i uses child stream i of the global seed.
    PackingSampler sampler(a.dim, a.config, Rng::child(g.seed, static_cast<std::uint64_t>(i)));
    Packing p(a.dim);
    if (kind == "random") {
      p = sampler.random_packing();
    } else if (kind == "greedy") {
      p = sampler.greedy_packing();
    } else {
      Packing start = sampler.greedy_packing();
      if (!a.start.empty()) {
        const auto recs = load(a.start, false);
        if (recs.empty()) throw std::invalid_argument("no packing in " + a.start);
        start = recs.front().to_packing();
      }
      const auto res = sampler.metropolis(start);
      p = res.best;
      if (a.trace) {
        for (const auto& [it, size] : res.trace.improvements) std::cout << "# run " << i << " iteration " << it << " size " << size << "\n";
        std::cout << "# run " << i << " accepted " << res.trace.accepted << " of " << res.trace.iterations << "\n";
      }
    }
    if (a.census) census.add(p);
    auto rec = describe(p, kind, g.seed);
    if (a.count > 1) rec.meta.seed = g.seed;
    emit(std::cout, rec, fmt);
  }
  if (a.census) print_census(census);
  return 0;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string file;
  bool moments = false;
  bool deficits = false;
  bool holes = false;
  bool pairs = false;
};

int run_analyze(AnalyzeArgs a) {
  if (!a.moments && !a.deficits && !a.holes && !a.pairs) a.moments = true;
  for (const auto& rec : load(a.file, false)) {
    const auto p = rec.to_packing();
    if (a.moments) std::cout << moments(p).to_row() << "\n";
    if (a.deficits && p.dim() >= 2) {
      for (int i = 0; i < p.dim(); ++i) {
        const auto ld = layer_deficits(p, i);
        std::cout << "deficits coord=" << i << " (" << ld.delta[0] << "," << ld.delta[1] << "," << ld.delta[2] << ","
                  << ld.delta[3] << ")\n";
      }
    }
    if (a.holes) std::cout << "holes=" << hole_cells(p).size() << "\n";
    if (a.pairs) {
      const auto s = window_pair_stats(p);
      std::cout << "pairs=" << s.pairs.size() << " formula_matches=" << (s.formula_matches() ? 1 : 0)
                << " columns_meet_bound=" << (s.columns_meet_bound() ? 1 : 0) << "\n";
    }
  }
  return 0;
}

// --- blocking --------------------------------------------------------------

struct BlockingArgs {
  int dim = 0;
  int size = 0;
  std::string verify;
};

int run_blocking(const BlockingArgs& a, const Globals& g) {
  if (!a.verify.empty()) {
    for (const auto& rec : load(a.verify, true)) {
      std::cout << (is_blocking(rec.dim, rec.labels) ? "blocking " : "not-blocking ")
                << canonical_form(rec.dim, rec.labels).serialize() << "\n";
    }
    return 0;
  }
  BlockingSearchOptions opt;
  opt.representative_cap = g.limit;
  const auto found = min_blocking_search(a.dim, a.size, opt);
  std::cout << "orbits " << found.size() << "\n";
  for (const auto& k : found) std::cout << k.serialize() << "\n";
  return 0;
}

// --- verify-paper ----------------------------------------------------------

struct VerifyArgs {
  int dim = 4;
  std::vector<int> only;
  int seeds = 20;
  std::uint64_t iterations = 100000;
  bool quiet = false;
};

int run_verify(const VerifyArgs& a, const Globals& g) {
  ReproductionOptions opt;
  opt.max_dim = a.dim;
  opt.only = a.only;
  opt.threads = g.threads;
  opt.seed = g.seed;
  opt.stochastic_seeds = a.seeds;
  opt.stochastic_iterations = a.iterations;
  if (!a.quiet) opt.progress = [](const std::string& m) { std::cerr << "  .. " << m << "\n"; };
  bool failed = false;
  run_reproduction(opt, [&](const CriterionResult& r) {
    std::cout << format_result(r, !a.quiet) << std::flush;
    failed = failed || r.status == CriterionStatus::kFail;
  });
  return failed ? kExitInvalid : 0;
}

// --- canon -----------------------------------------------------------------

int run_canon(const std::string& file, bool raw) {
  for (const auto& rec : load(file, raw)) std::cout << canonical_form(rec.dim, rec.labels).serialize() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cube packings and tilings of the 4-periodic torus"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", g.seed, "Master random seed");
  app.add_option("--limit", g.limit, "Resource cap on stored states (0 = none)");

  auto dim_check = CLI::Range(1, kMaxDim);

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "Orbit counts by packing size");
  enumerate->add_option("--dim", ea.dim)->required()->check(dim_check);
  enumerate->add_option("--max-size", ea.max_size, "Stop after this size");
  enumerate->add_option("--out", ea.out, "Orbit database directory");
  enumerate->add_flag("--json", ea.json, "One JSON row per level");

  FlipsArgs fa;
  auto* flips = app.add_subcommand("flips", "Flip-graph component of a tiling");
  flips->add_option("--dim", fa.dim)->required()->check(dim_check);
  flips->add_option("--start", fa.start, "Start tiling file (default: regular tiling)");
  flips->add_flag("--raw", fa.raw, "Deduplicate raw tilings instead of orbits");
  flips->add_flag("--edges", fa.edges, "Print orbit keys and the edge list");

  SearchArgs sa;
  std::vector<CLI::App*> searches;
  for (const char* name : {"random", "greedy", "metropolis"}) {
    auto* cmd = app.add_subcommand(name, std::string(name) + " non-extendible packings");
    cmd->add_option("--dim", sa.dim)->required()->check(dim_check);
    cmd->add_option("--count", sa.count, "Number of runs")->check(CLI::PositiveNumber);
    cmd->add_option("--rejection-threshold", sa.config.rejection_threshold, "Stage-one failures before switching (0 = 50*d)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--greedy-samples", sa.config.greedy_samples)->check(CLI::PositiveNumber);
    cmd->add_option("--remove", sa.config.metropolis_remove, "Cubes removed per Metropolis step")->check(CLI::NonNegativeNumber);
    cmd->add_option("--bound", sa.config.metropolis_bound, "Accept states within this size (-1 = off)");
    cmd->add_option("--iterations", sa.config.max_iterations);
    cmd->add_option("--objective", sa.objective)->check(CLI::IsMember({"min", "max"}));
    cmd->add_option("--start", sa.start, "Metropolis start packing file");
    cmd->add_option("--format", sa.format)->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--census", sa.census, "Report distinct orbits of the outputs");
    cmd->add_flag("--trace", sa.trace, "Print Metropolis improvements");
    searches.push_back(cmd);
  }

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Moments, layer deficits, holes");
  analyze->add_option("file", aa.file, "Packing records ('-' for stdin)")->required();
  analyze->add_flag("--moments", aa.moments);
  analyze->add_flag("--deficits", aa.deficits);
  analyze->add_flag("--holes", aa.holes);
  analyze->add_flag("--pairs", aa.pairs);

  BlockingArgs ba;
  auto* blocking = app.add_subcommand("blocking", "Blocking-set search or verification");
  blocking->add_option("--dim", ba.dim)->check(dim_check);
  blocking->add_option("--size", ba.size)->check(CLI::NonNegativeNumber);
  blocking->add_option("--verify", ba.verify, "Label sets to check");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-paper", "Run the reproduction checks");
  verify->add_option("--dim", va.dim, "Largest enumerated dimension")->check(CLI::Range(1, 4));
  verify->add_option("--only", va.only, "Criteria to run")->delimiter(',')->check(CLI::Range(1, 13));
  verify->add_option("--stochastic-seeds", va.seeds)->check(CLI::PositiveNumber);
  verify->add_option("--stochastic-iterations", va.iterations);
  verify->add_flag("--quiet", va.quiet, "Summary lines only");

  std::string canon_file;
  bool canon_raw = false;
  auto* canon = app.add_subcommand("canon", "Canonical key of each record");
  canon->add_option("file", canon_file)->required();
  canon->add_flag("--raw", canon_raw, "Accept overlapping label sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*enumerate) return run_enumerate(ea, g);
    if (*flips) return run_flips(fa, g);
    for (auto* cmd : searches) {
      if (*cmd) return run_search(cmd->get_name(), sa, g);
    }
    if (*analyze) return run_analyze(aa);
    if (*blocking) {
      if (ba.verify.empty() && (ba.dim == 0 || ba.size == 0)) throw std::invalid_argument("blocking needs --dim and --size, or --verify");
      return run_blocking(ba, g);
    }
    if (*verify) return run_verify(va, g);
    if (*canon) return run_canon(canon_file, canon_raw);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitLimit;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
