#pragma once

/**
 * Finite groups as indexed element sets.
 *
 * Elements are the integers 0..n-1 and the identity is always 0. Two
 * backings exist: a dense n*n multiplication table (n <= kMaxDenseOrder) and
 * permutation words for symmetric groups too large to tabulate, where the
 * index of a permutation is its lexicographic rank.
 *
 * A GroupTable is immutable once built; copies share state and may be read
 * concurrently. Conjugacy data is computed on first request.
 */

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace cayleylab {

using Element = std::uint32_t;

inline constexpr std::size_t kMaxDenseOrder = 10000;
inline constexpr unsigned kMaxSymmetricDegree = 10;
inline constexpr std::size_t kExhaustiveAssociativityOrder = 256;
inline constexpr std::size_t kSampledAssociativityTriples = 1'000'000;
inline constexpr std::uint64_t kAssociativitySeed = 0x5eed'a55c'0000'0001ull;

enum class Backing { dense_table, permutation };

struct ConjugacyData {
  std::vector<std::uint32_t> class_of;    // element -> class id (ids by first occurrence)
  std::vector<std::uint32_t> class_size;  // class id -> size

  std::size_t num_classes() const noexcept { return class_size.size(); }
  std::uint32_t class_size_of(Element x) const { return class_size[class_of[x]]; }
};

/// Lexicographic ranking of permutations of {0..m-1}.
class PermutationCodec {
 public:
  using Perm = std::array<std::uint8_t, kMaxSymmetricDegree>;

  explicit PermutationCodec(unsigned degree) : degree_(degree) {
    factorial_[0] = 1;
    for (unsigned i = 1; i <= kMaxSymmetricDegree; ++i) factorial_[i] = factorial_[i - 1] * i;
  }

  unsigned degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return factorial_[degree_]; }

  std::uint32_t rank(const Perm& p) const noexcept {
    std::uint32_t r = 0;
    std::uint32_t used = 0;
    for (unsigned i = 0; i < degree_; ++i) {
      const unsigned below = static_cast<unsigned>(std::popcount(used & ((1u << p[i]) - 1u)));
      r += static_cast<std::uint32_t>((p[i] - below) * factorial_[degree_ - 1 - i]);
      used |= 1u << p[i];
    }
    return r;
  }

  Perm unrank(std::uint32_t r) const noexcept {
    Perm p{};
    std::uint32_t used = 0;
    for (unsigned i = 0; i < degree_; ++i) {
      const std::size_t f = factorial_[degree_ - 1 - i];
      unsigned skip = static_cast<unsigned>(r / f);
      r = static_cast<std::uint32_t>(r % f);
      unsigned v = 0;
      for (;; ++v) {
        if (used & (1u << v)) continue;
        if (skip == 0) break;
        --skip;
      }
      p[i] = static_cast<std::uint8_t>(v);
      used |= 1u << v;
    }
    return p;
  }

  /// (a*b)[k] = a[b[k]].
  Perm compose(const Perm& a, const Perm& b) const noexcept {
    Perm c{};
    for (unsigned k = 0; k < degree_; ++k) c[k] = a[b[k]];
    return c;
  }

  Perm inverse(const Perm& a) const noexcept {
    Perm c{};
    for (unsigned k = 0; k < degree_; ++k) c[a[k]] = static_cast<std::uint8_t>(k);
    return c;
  }

  Perm identity() const noexcept {
    Perm p{};
    for (unsigned k = 0; k < degree_; ++k) p[k] = static_cast<std::uint8_t>(k);
    return p;
  }

  /// Cycle notation with 1-based points, e.g. "(1 2 3)"; identity is "()".
  std::string cycle_string(const Perm& p) const {
    std::string out;
    std::uint32_t seen = 0;
    for (unsigned s = 0; s < degree_; ++s) {
      if ((seen >> s) & 1u || p[s] == s) continue;
      out += '(';
      unsigned k = s;
      bool first = true;
      while (!((seen >> k) & 1u)) {
        seen |= 1u << k;
        if (!first) out += ' ';
        out += std::to_string(k + 1);
        first = false;
        k = p[k];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

 private:
  unsigned degree_;
  std::array<std::size_t, kMaxSymmetricDegree + 1> factorial_{};
};

class GroupTable;
ConjugacyData conjugacy_classes(const GroupTable& g);

class GroupTable {
 public:
  using Labeler = std::function<std::string(Element)>;

  /// Dense table; `table[a*n+b]` is a*b. Validates unless `trusted`.
  static GroupTable from_table(std::vector<std::uint16_t> table, std::size_t n, std::string name,
                               Labeler labeler = {}, bool trusted = false);

  /// Symmetric group on `degree` points with permutation-word multiplication.
  static GroupTable symmetric_permutation_backed(unsigned degree);

  std::size_t order() const noexcept { return state_->order; }
  Backing backing() const noexcept { return state_->backing; }
  const std::string& name() const noexcept { return state_->name; }
  static constexpr Element identity() noexcept { return 0; }

  Element mul(Element a, Element b) const noexcept {
    const State& s = *state_;
    if (s.backing == Backing::dense_table) return s.table[static_cast<std::size_t>(a) * s.order + b];
    const auto& codec = *s.codec;
    return codec.rank(codec.compose(s.perms[a], s.perms[b]));
  }

  Element inv(Element a) const noexcept { return state_->inverse[a]; }

  /// Row `a` of the dense table (a*b for all b). Dense backing only.
  const std::uint16_t* dense_row(Element a) const noexcept {
    return state_->table.data() + static_cast<std::size_t>(a) * state_->order;
  }

  std::string label(Element x) const {
    return state_->labeler ? state_->labeler(x) : std::to_string(x);
  }

  /// Permutation for element x when the group is (a tabulation of) a
  /// symmetric group; empty codec otherwise.
  const PermutationCodec* permutation_codec() const noexcept { return state_->codec.get(); }

  bool is_abelian() const {
    std::call_once(state_->abelian_once, [this] {
      const std::size_t n = order();
      bool ok = true;
      for (Element a = 0; a < n && ok; ++a)
        for (Element b = a + 1; b < n && ok; ++b) ok = mul(a, b) == mul(b, a);
      state_->abelian = ok;
    });
    return state_->abelian;
  }

  const ConjugacyData& conjugacy() const {
    std::call_once(state_->conj_once, [this] {
      state_->conj = std::make_unique<ConjugacyData>(conjugacy_classes(*this));
    });
    return *state_->conj;
  }

  std::size_t num_classes() const { return conjugacy().num_classes(); }

  /// Attach a permutation codec to a dense tabulation of S_m so that
  /// generators for conjugacy closure and labels can be recovered.
  GroupTable with_codec(std::shared_ptr<const PermutationCodec> codec) const;

 private:
  struct State {
    std::size_t order = 0;
    Backing backing = Backing::dense_table;
    std::string name;
    std::vector<std::uint16_t> table;
    std::vector<Element> inverse;
    std::shared_ptr<const PermutationCodec> codec;
    std::vector<PermutationCodec::Perm> perms;  // permutation backing only
    Labeler labeler;
    mutable std::once_flag conj_once;
    mutable std::unique_ptr<ConjugacyData> conj;
    mutable std::once_flag abelian_once;
    mutable bool abelian = false;
  };

  explicit GroupTable(std::shared_ptr<State> s) : state_(std::move(s)) {}

  std::shared_ptr<State> state_;
};

namespace detail {

inline void validate_dense_table(const std::vector<std::uint16_t>& t, std::size_t n) {
  if (n == 0) throw ValidationError("order", "group order must be positive");
  if (t.size() != n * n)
    throw ValidationError("table-shape", "expected " + std::to_string(n * n) + " entries, got " +
                                             std::to_string(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= n)
      throw ValidationError("closure", "entry at row " + std::to_string(i / n) + ", column " +
                                           std::to_string(i % n) + " is out of range");
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t r = 0; r < n; ++r) {
    ++stamp;
    for (std::size_t c = 0; c < n; ++c) {
      auto& s = seen[t[r * n + c]];
      if (s == stamp)
        throw ValidationError("latin-rows", "row " + std::to_string(r) + " repeats element " +
                                                std::to_string(t[r * n + c]));
      s = stamp;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    ++stamp;
    for (std::size_t r = 0; r < n; ++r) {
      auto& s = seen[t[r * n + c]];
      if (s == stamp)
        throw ValidationError("latin-columns", "column " + std::to_string(c) +
                                                   " repeats element " +
                                                   std::to_string(t[r * n + c]));
      s = stamp;
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    if (t[x] != x || t[x * n] != x)
      throw ValidationError("identity", "element 0 is not a two-sided identity (fails at " +
                                            std::to_string(x) + ")");
}

inline void check_associativity(const GroupTable& g) {
  const std::size_t n = g.order();
  auto fail = [&](Element a, Element b, Element c) {
    throw ValidationError("associativity", "(" + std::to_string(a) + "*" + std::to_string(b) +
                                               ")*" + std::to_string(c) + " != " +
                                               std::to_string(a) + "*(" + std::to_string(b) +
                                               "*" + std::to_string(c) + ")");
  };
  if (n <= kExhaustiveAssociativityOrder) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element ab = g.mul(a, b);
        for (Element c = 0; c < n; ++c)
          if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) fail(a, b, c);
      }
    return;
  }
  RngStream rng(kAssociativitySeed);
  for (std::size_t k = 0; k < kSampledAssociativityTriples; ++k) {
    const auto a = static_cast<Element>(rng.below(n));
    const auto b = static_cast<Element>(rng.below(n));
    const auto c = static_cast<Element>(rng.below(n));
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) fail(a, b, c);
  }
}

}  // namespace detail

inline GroupTable GroupTable::from_table(std::vector<std::uint16_t> table, std::size_t n,
                                         std::string name, Labeler labeler, bool trusted) {
  if (n > kMaxDenseOrder)
    throw ParameterError("dense tables are limited to order " + std::to_string(kMaxDenseOrder));
  if (!trusted) detail::validate_dense_table(table, n);
  auto s = std::make_shared<State>();
  s->order = n;
  s->backing = Backing::dense_table;
  s->name = std::move(name);
  s->table = std::move(table);
  s->labeler = std::move(labeler);
  s->inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    const std::uint16_t* row = s->table.data() + a * n;
    const auto* hit = std::find(row, row + n, std::uint16_t{0});
    s->inverse[a] = static_cast<Element>(hit - row);
  }
  GroupTable g(std::move(s));
  if (!trusted) detail::check_associativity(g);
  return g;
}

inline GroupTable GroupTable::symmetric_permutation_backed(unsigned degree) {
  if (degree == 0 || degree > kMaxSymmetricDegree)
    throw ParameterError("symmetric degree must be in 1.." + std::to_string(kMaxSymmetricDegree));
  auto codec = std::make_shared<const PermutationCodec>(degree);
  auto s = std::make_shared<State>();
  s->order = codec->order();
  s->backing = Backing::permutation;
  s->name = "sym:" + std::to_string(degree);
  s->perms.reserve(s->order);
  auto p = codec->identity();
  do {
    s->perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + degree));
  s->inverse.resize(s->order);
  for (std::size_t i = 0; i < s->order; ++i) s->inverse[i] = codec->rank(codec->inverse(s->perms[i]));
  s->labeler = [codec](Element x) { return codec->cycle_string(codec->unrank(x)); };
  s->codec = std::move(codec);
  return GroupTable(std::move(s));
}

inline GroupTable GroupTable::with_codec(std::shared_ptr<const PermutationCodec> codec) const {
  auto s = std::make_shared<State>();
  s->order = state_->order;
  s->backing = state_->backing;
  s->name = state_->name;
  s->table = state_->table;
  s->inverse = state_->inverse;
  s->perms = state_->perms;
  s->labeler = [codec](Element x) { return codec->cycle_string(codec->unrank(x)); };
  s->codec = std::move(codec);
  return GroupTable(std::move(s));
}

/// Conjugacy classes. Dense groups sweep z^-1 x z over every z; permutation
/// backed groups close orbits under conjugation by a transposition and an
/// m-cycle, which generate S_m.
inline ConjugacyData conjugacy_classes(const GroupTable& g) {
  const std::size_t n = g.order();
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  ConjugacyData d;
  d.class_of.assign(n, kUnset);

  if (g.backing() == Backing::permutation) {
    const PermutationCodec& codec = *g.permutation_codec();
    auto transposition = codec.identity();
    auto cycle = codec.identity();
    if (codec.degree() >= 2) {
      std::swap(transposition[0], transposition[1]);
      for (unsigned k = 0; k < codec.degree(); ++k)
        cycle[k] = static_cast<std::uint8_t>((k + 1) % codec.degree());
    }
    const std::array<Element, 2> gens = {codec.rank(transposition), codec.rank(cycle)};
    std::vector<Element> frontier;
    for (Element x = 0; x < n; ++x) {
      if (d.class_of[x] != kUnset) continue;
      const auto id = static_cast<std::uint32_t>(d.class_size.size());
      d.class_of[x] = id;
      std::uint32_t size = 1;
      frontier.assign(1, x);
      while (!frontier.empty()) {
        const Element y = frontier.back();
        frontier.pop_back();
        for (Element z : gens) {
          const Element c = g.mul(g.mul(g.inv(z), y), z);
          if (d.class_of[c] == kUnset) {
            d.class_of[c] = id;
            ++size;
            frontier.push_back(c);
          }
        }
      }
      d.class_size.push_back(size);
    }
    return d;
  }

  for (Element x = 0; x < n; ++x) {
    if (d.class_of[x] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(d.class_size.size());
    std::uint32_t size = 0;
    for (Element z = 0; z < n; ++z) {
      const Element c = g.mul(g.mul(g.inv(z), x), z);
      if (d.class_of[c] == kUnset) {
        d.class_of[c] = id;
        ++size;
      }
    }
    d.class_size.push_back(size);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Counting statistics

/// Elements with x*x = 1. The identity is excluded unless asked for.
inline std::size_t involution_count(const GroupTable& g, bool include_identity = false) {
  std::size_t count = 0;
  for (Element x = 1; x < g.order(); ++x)
    if (g.mul(x, x) == GroupTable::identity()) ++count;
  return count + (include_identity ? 1 : 0);
}

struct InvolutionSeries {
  std::vector<std::uint64_t> terms;  // terms[k-1] = a_k, identity included
  std::vector<bool> within_bound;    // a_k <= 2^k sqrt(k!)
};

/// a_1 = 1, a_2 = 2, a_k = a_{k-1} + (k-1) a_{k-2}: the number of
/// permutations of k points squaring to the identity.
inline InvolutionSeries involution_series(unsigned m) {
  if (m == 0 || m > 20) throw ParameterError("involution_series: m must be in 1..20");
  InvolutionSeries out;
  for (unsigned k = 1; k <= m; ++k) {
    std::uint64_t a;
    if (k == 1) a = 1;
    else if (k == 2) a = 2;
    else a = out.terms[k - 2] + (k - 1) * out.terms[k - 3];
    out.terms.push_back(a);
    const double log_bound = k * std::log(2.0) + 0.5 * std::lgamma(k + 1.0);
    out.within_bound.push_back(std::log(static_cast<double>(a)) <= log_bound + 1e-12);
  }
  return out;
}

/// |{y : y^2 = x}|
inline std::size_t square_root_count(const GroupTable& g, Element x) {
  std::size_t count = 0;
  for (Element y = 0; y < g.order(); ++y)
    if (g.mul(y, y) == x) ++count;
  return count;
}

/// |{y : y^-1 x y = x}|
inline std::size_t centralizer_count(const GroupTable& g, Element x) {
  std::size_t count = 0;
  for (Element y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == g.mul(y, x)) ++count;
  return count;
}

/// |{y : y^-1 x y = x^-1}|
inline std::size_t inverting_count(const GroupTable& g, Element x) {
  std::size_t count = 0;
  const Element xi = g.inv(x);
  for (Element y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == g.mul(y, xi)) ++count;
  return count;
}

struct HypothesisCheck {
  std::size_t count = 0;
  double reference = 0.0;
  bool within_reference() const noexcept { return static_cast<double>(count) <= reference; }
};

/// Raw counts behind the three hypotheses on the involution structure and
/// small conjugacy classes, next to the magnitudes they are compared with.
struct SmallClassReport {
  double eps = 0.0;
  HypothesisCheck involutions;             // vs n^((1+eps)/2)
  HypothesisCheck small_class_elements;    // cl(x) <= 1/eps, vs n^((1+eps)/2)
  HypothesisCheck small_class_involutions; // vs n^((1+eps)/4)
};

inline SmallClassReport check_small_class_hypotheses(const GroupTable& g, double eps) {
  if (!(eps > 0.0 && eps < 0.25)) throw ParameterError("eps must lie in (0, 1/4)");
  const auto& conj = g.conjugacy();
  const double n = static_cast<double>(g.order());
  const double class_limit = 1.0 / eps;
  SmallClassReport r;
  r.eps = eps;
  r.involutions.reference = std::pow(n, (1.0 + eps) / 2.0);
  r.small_class_elements.reference = std::pow(n, (1.0 + eps) / 2.0);
  r.small_class_involutions.reference = std::pow(n, (1.0 + eps) / 4.0);
  for (Element x = 0; x < g.order(); ++x) {
    const bool involution = x != GroupTable::identity() && g.mul(x, x) == GroupTable::identity();
    const bool small = static_cast<double>(conj.class_size_of(x)) <= class_limit;
    r.involutions.count += involution;
    r.small_class_elements.count += small;
    r.small_class_involutions.count += involution && small;
  }
  return r;
}

}  // namespace cayleylab
