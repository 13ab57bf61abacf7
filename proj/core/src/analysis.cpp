#include "cubepack/analysis.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cubepack/code_set.hpp"
#include "cubepack/flips.hpp"

namespace cubepack {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Rational power(const Rational& b, int e) {
  Rational r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool in_window(int dim, Code z, Code x) {
  for (int i = 0; i < dim; ++i) {
    if (digit(dim, z, i) == ((digit(dim, x, i) + 1) & 3)) return false;
  }
  return true;
}

// Codes of offset + v for v in {0..span-1}^d.
std::vector<Code> box(int dim, Code base, int span) {
  std::vector<Code> out;
  const auto n = ipow(static_cast<std::uint64_t>(span), dim);
  out.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    std::uint64_t rest = k;
    unsigned offset = 0;
    for (int i = dim - 1; i >= 0; --i) {
      offset |= static_cast<unsigned>(rest % static_cast<std::uint64_t>(span)) << digit_shift(dim, i);
      rest /= static_cast<std::uint64_t>(span);
    }
    out.push_back(add_codes(base, static_cast<Code>(offset)));
  }
  return out;
}

Code unit(int dim, int coord) { return static_cast<Code>(1u << digit_shift(dim, coord)); }

}  // namespace

std::string format_rational(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    using boost::multiprecision::cpp_int;
    if (slash == std::string::npos) return Rational(cpp_int(text));
    const cpp_int q(text.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(cpp_int(text.substr(0, slash)), q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

// ---------------------------------------------------------------------------

int window_count(const Packing& p, Code z) {
  if (z >= label_count(p.dim())) throw std::invalid_argument("window corner out of range");
  int n = 0;
  for (Code x : p.codes()) n += in_window(p.dim(), z, x) ? 1 : 0;
  return n;
}

int window_count(const Packing& p, const WindowCorner& z) {
  if (z.dim() != p.dim()) throw std::invalid_argument("window_count: dimension mismatch");
  return window_count(p, z.code());
}

WindowCounter::WindowCounter(int dim) : dim_(dim) {
  check_dim(dim);
  for (Code u : box(dim, 0, 3)) {
    unsigned neg = 0;
    for (int i = 0; i < dim; ++i) neg |= static_cast<unsigned>((4 - digit(dim, u, i)) & 3) << digit_shift(dim, i);
    back_offsets_.push_back(static_cast<Code>(neg));
  }
}

std::vector<int> WindowCounter::counts(std::span<const Code> labels) const {
  std::vector<int> out(label_count(dim_), 0);
  for (Code x : labels) {
    for (Code u : back_offsets_) ++out[add_codes(x, u)];
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> WindowCounter::power_sums(std::span<const Code> labels) const {
  const auto c = counts(labels);
  std::uint64_t s1 = 0, s2 = 0;
  for (int v : c) {
    s1 += static_cast<std::uint64_t>(v);
    s2 += static_cast<std::uint64_t>(v) * static_cast<std::uint64_t>(v);
  }
  return {s1, s2};
}

std::string MomentReport::to_row() const {
  std::ostringstream out;
  out << "d=" << dim << " n=" << size << " delta=" << deficit << " m1=" << format_rational(m1)
      << " m2=" << format_rational(m2) << " bound=" << format_rational(m2_lower_bound);
  return out.str();
}

MomentReport moments(const Packing& p) { return moments(p, WindowCounter(p.dim())); }

MomentReport moments(const Packing& p, const WindowCounter& counter) {
  if (counter.dim() != p.dim()) throw std::invalid_argument("moments: dimension mismatch");
  MomentReport r;
  r.dim = p.dim();
  r.size = p.size();
  r.deficit = p.deficit();
  r.window_counts = counter.counts(p.codes());
  std::uint64_t s1 = 0, s2 = 0;
  for (int v : r.window_counts) {
    s1 += static_cast<std::uint64_t>(v);
    s2 += static_cast<std::uint64_t>(v) * static_cast<std::uint64_t>(v);
  }
  const Rational windows(label_count(p.dim()));
  r.m1 = Rational(s1) / windows;
  r.m2 = Rational(s2) / windows;
  r.m2_lower_bound = m2_lower_bound(p.dim(), p.size());
  if (r.m1 != power(Rational(3, 4), p.dim()) * p.size()) {
    throw std::logic_error("first moment differs from (3/4)^d N");
  }
  return r;
}

Rational m2_lower_bound(int dim, std::size_t size) {
  const auto q = static_cast<std::uint64_t>(size / 4);
  const auto r = static_cast<std::uint64_t>(size % 4);
  const Rational two_d(ipow(2, dim));
  const auto n = static_cast<std::uint64_t>(size);
  const std::uint64_t columns = 2 * q * (q == 0 ? 0 : q - 1) + r * q;
  return power(Rational(3, 4), dim) * n + Rational(n * (n == 0 ? 0 : n - 1)) / two_d +
         Rational(static_cast<std::uint64_t>(dim) * columns) / two_d;
}

bool WindowPairStats::formula_matches() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairWindowStat& s) { return s.formula == s.brute; });
}

bool WindowPairStats::columns_meet_bound() const {
  return std::all_of(column_pairs.begin(), column_pairs.end(), [&](std::uint64_t c) { return c >= column_bound; });
}

WindowPairStats window_pair_stats(const Packing& p) {
  const int d = p.dim();
  WindowPairStats out;
  const auto codes = p.codes();
  const auto windows = label_count(d);
  for (std::size_t a = 0; a < codes.size(); ++a) {
    for (std::size_t b = a + 1; b < codes.size(); ++b) {
      PairWindowStat s;
      s.x = codes[a];
      s.y = codes[b];
      for (int i = 0; i < d; ++i) s.mu += digit(d, s.x, i) == digit(d, s.y, i) ? 1 : 0;
      s.formula = ipow(3, s.mu) * ipow(2, d - s.mu);
      for (std::size_t z = 0; z < windows; ++z) {
        const auto zc = static_cast<Code>(z);
        if (in_window(d, zc, s.x) && in_window(d, zc, s.y)) ++s.brute;
      }
      out.pairs.push_back(s);
    }
  }
  for (int l = 0; l < d; ++l) {
    std::array<std::uint64_t, 4> c{};
    for (Code x : codes) ++c[static_cast<std::size_t>(digit(d, x, l))];
    std::uint64_t sum = 0;
    for (auto v : c) sum += v * (v == 0 ? 0 : v - 1) / 2;
    out.column_pairs.push_back(sum);
  }
  const auto q = static_cast<std::uint64_t>(codes.size() / 4);
  const auto r = static_cast<std::uint64_t>(codes.size() % 4);
  out.column_bound = 2 * q * (q == 0 ? 0 : q - 1) + r * q;
  return out;
}

// ---------------------------------------------------------------------------

bool is_blocking(int dim, std::span<const Code> s) {
  check_dim(dim);
  const auto n = label_count(dim);
  for (Code x : s) {
    if (x >= n) throw std::invalid_argument("label out of range");
  }
  for (std::size_t v = 0; v < n; ++v) {
    bool hit = false;
    for (Code x : s) {
      if (codes_overlap(x, static_cast<Code>(v))) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

std::vector<CanonicalKey> min_blocking_search(int dim, int size, const BlockingSearchOptions& options) {
  check_dim(dim);
  if (size < 0) throw std::invalid_argument("blocking set size must be >= 0");
  const auto n = label_count(dim);
  const auto reach = ipow(3, dim);  // labels overlapped by any one label
  CompatibilityGraph graph(dim);
  Canonicalizer canon(dim);

  // Labels not overlapped by any member of s.
  auto unblocked = [&](const std::vector<Code>& s) { return graph.free_set(s).count(); };

  std::set<std::vector<Code>> level = {{}};
  for (int k = 0; k < size; ++k) {
    const auto left = static_cast<std::uint64_t>(size - k - 1);
    std::set<std::vector<Code>> next;
    for (const auto& s : level) {
      std::vector<Code> t(s.size() + 1);
      for (std::size_t y = 0; y < n; ++y) {
        const auto yc = static_cast<Code>(y);
        if (std::binary_search(s.begin(), s.end(), yc)) continue;
        std::merge(s.begin(), s.end(), &yc, &yc + 1, t.begin());
        if (unblocked(t) > left * reach) continue;
        const auto key = canon.canonicalize(t);
        next.emplace(key.begin(), key.end());
        if (options.representative_cap != 0 && next.size() > options.representative_cap) {
          throw ResourceLimitError("blocking search exceeded representative cap of " +
                                   std::to_string(options.representative_cap));
        }
      }
    }
    level.swap(next);
  }
  std::vector<CanonicalKey> out;
  for (const auto& s : level) {
    if (is_blocking(dim, s)) out.push_back(CanonicalKey{dim, s});
  }
  return out;
}

std::vector<int> h_recurrence(int h, int steps) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  std::vector<int> out;
  for (int s = 0; s < steps; ++s) {
    h = (4 * h - 1) / 3 + 1;
    out.push_back(h);
  }
  return out;
}

// ---------------------------------------------------------------------------

Packing induced_layer(const Packing& p, int coord, int layer) {
  const int d = p.dim();
  if (d < 2) throw std::invalid_argument("induced_layer needs dimension >= 2");
  if (coord < 0 || coord >= d) throw std::invalid_argument("coordinate out of range");
  if (layer < 0 || layer > 3) throw std::invalid_argument("layer out of range");
  std::vector<Code> out;
  for (Code x : p.codes()) {
    const int v = digit(d, x, coord);
    if (v != layer && v != ((layer + 1) & 3)) continue;
    unsigned y = 0;
    int k = 0;
    for (int i = 0; i < d; ++i) {
      if (i == coord) continue;
      y |= static_cast<unsigned>(digit(d, x, i)) << digit_shift(d - 1, k++);
    }
    out.push_back(static_cast<Code>(y));
  }
  return Packing(d - 1, std::move(out));
}

LayerDeficits layer_deficits(const Packing& p, int coord) {
  const int d = p.dim();
  if (d < 2) throw std::invalid_argument("layer_deficits needs dimension >= 2");
  if (coord < 0 || coord >= d) throw std::invalid_argument("coordinate out of range");
  // Layer j holds the cubes with x_coord in {j, j+1}.
  std::array<int, 4> column{};
  for (Code x : p.codes()) ++column[static_cast<std::size_t>(digit(d, x, coord))];
  LayerDeficits out;
  const int half = 1 << (d - 1);
  for (std::size_t j = 0; j < 4; ++j) out.delta[j] = half - column[j] - column[(j + 1) & 3];
  return out;
}

std::vector<Code> hole_cells(const Packing& p) {
  const int d = p.dim();
  CodeSet covered(d);
  for (Code x : p.codes()) {
    for (Code u : box(d, x, 2)) covered.set(u);
  }
  std::vector<Code> out;
  for (std::size_t u = 0; u < label_count(d); ++u) {
    if (!covered.test(static_cast<Code>(u))) out.push_back(static_cast<Code>(u));
  }
  return out;
}

// ---------------------------------------------------------------------------

DensityFunction::DensityFunction(int dim, std::vector<Rational> values) : dim_(dim), values_(std::move(values)) {
  check_dim(dim);
  if (values_.size() != label_count(dim)) throw std::invalid_argument("density needs 4^d values");
  for (const auto& v : values_) {
    if (v < 0) throw std::invalid_argument("density values must be nonnegative");
  }
}

DensityFunction DensityFunction::uniform(int dim) {
  check_dim(dim);
  return DensityFunction(dim, std::vector<Rational>(label_count(dim), Rational(1, ipow(2, dim))));
}

DensityFunction DensityFunction::indicator(const Packing& tiling) {
  if (!is_tiling(tiling)) throw std::invalid_argument("density of a packing requires a tiling");
  std::vector<Rational> v(label_count(tiling.dim()), Rational(0));
  for (Code x : tiling.codes()) v[x] = 1;
  return DensityFunction(tiling.dim(), std::move(v));
}

Rational DensityFunction::cell_sum(Code x) const {
  Rational s = 0;
  for (Code u : box(dim_, x, 2)) s += values_[u];
  return s;
}

bool DensityFunction::in_space() const {
  for (std::size_t x = 0; x < values_.size(); ++x) {
    if (values_[x] < 0 || cell_sum(static_cast<Code>(x)) != 1) return false;
  }
  return true;
}

Rational DensityFunction::window_sum(Code z) const {
  Rational s = 0;
  for (Code u : box(dim_, z, 3)) s += values_[u];
  return s;
}

Rational DensityFunction::second_moment() const {
  Rational s = 0;
  for (std::size_t z = 0; z < values_.size(); ++z) {
    const auto w = window_sum(static_cast<Code>(z));
    s += w * w;
  }
  return s / values_.size();
}

DensityFunction density_from_packing(const Packing& tiling) { return DensityFunction::indicator(tiling); }

Rational density_window_sum(const DensityFunction& f, Code z) { return f.window_sum(z); }

DensityFunction merge(const DensityFunction& f, int coord) {
  const int d = f.dim();
  if (coord < 0 || coord >= d) throw std::invalid_argument("coordinate out of range");
  std::vector<Rational> out(f.values().size(), Rational(0));
  const Code e = unit(d, coord);
  for (std::size_t x = 0; x < out.size(); ++x) {
    const auto xc = static_cast<Code>(x);
    if ((digit(d, xc, coord) & 1) == 0) out[x] = f(xc) + f(add_codes(xc, e));
  }
  return DensityFunction(d, std::move(out));
}

Packing random_tiling(int dim, Rng& rng, int steps) {
  Packing t = regular_tiling(dim);
  for (int s = 0; s < steps; ++s) {
    const auto moves = flip_moves(t);
    t = apply_flip(t, moves[rng.below(moves.size())]);
  }
  return Symmetry::random(dim, rng).apply(t);
}

DensityFunction random_density(int dim, Rng& rng) {
  const int parts = 1 + static_cast<int>(rng.below(3));
  std::vector<std::uint64_t> weights;
  std::uint64_t total = 0;
  for (int k = 0; k <= parts; ++k) {
    weights.push_back(rng.below(10));
    total += weights.back();
  }
  if (total == 0) {
    weights[0] = 1;
    total = 1;
  }
  std::vector<Rational> v(label_count(dim), Rational(0));
  const Rational uniform_share = Rational(weights[0], total) / ipow(2, dim);
  for (auto& x : v) x += uniform_share;
  for (int k = 1; k <= parts; ++k) {
    if (weights[static_cast<std::size_t>(k)] == 0) continue;
    const auto t = random_tiling(dim, rng, static_cast<int>(rng.below(4 * static_cast<std::uint64_t>(dim) + 1)));
    const Rational w(weights[static_cast<std::size_t>(k)], total);
    for (Code x : t.codes()) v[x] += w;
  }
  return DensityFunction(dim, std::move(v));
}

bool key_inequality_check(const Rational& x0, const Rational& x1, const Rational& x2, const Rational& x3) {
  if (x0 < 0 || x1 < 0 || x2 < 0 || x3 < 0) throw std::invalid_argument("key inequality needs nonnegative inputs");
  auto sq = [](const Rational& a) { return a * a; };
  const Rational lhs = sq(x0 + x1 + x2) + sq(x1 + x2 + x3) + sq(x2 + x3 + x0) + sq(x3 + x0 + x1);
  const Rational rhs = 2 * sq(x0 + x1 + x2 + x3) + sq(x0 + x1) + sq(x2 + x3);
  return lhs <= rhs;
}

}  // namespace cubepack
