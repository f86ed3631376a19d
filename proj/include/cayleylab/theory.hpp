#pragma once

/**
 * Combinatorial structures behind the diameter-2 arguments, each paired
 * with a checker for the property that argument relies on.
 *
 * Throughout, x != 1 is the far endpoint, A_y is the event that 1-y-x is a
 * path, and C is the symmetric closure of the generating set. Greedy
 * choices ("maximal independent set", "maximal subset") always scan
 * elements in ascending index.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "group.hpp"
#include "latin.hpp"

namespace cayleylab {

namespace detail {

inline void require_non_identity(Element x, const char* what) {
  if (x == GroupTable::identity()) throw ParameterError(std::string(what) + ": x must not be the identity");
}

inline void sort_unique(std::vector<Element>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Gamma_x: generator pairs that jointly create a path 1 - y - x.

struct GammaX {
  std::size_t order = 0;
  Element x = 0;
  std::vector<std::vector<Element>> neighbors;  // sorted, unique; may contain the vertex itself

  std::size_t degree(Element v) const { return neighbors[v].size(); }

  std::size_t min_degree() const {
    std::size_t d = SIZE_MAX;
    for (const auto& nb : neighbors) d = std::min(d, nb.size());
    return neighbors.empty() ? 0 : d;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& nb : neighbors) d = std::max(d, nb.size());
    return d;
  }

  bool adjacent(Element u, Element v) const {
    return std::binary_search(neighbors[u].begin(), neighbors[u].end(), v);
  }

  /// Unordered pairs {u, v} with u <= v; loops included once.
  std::vector<std::pair<Element, Element>> edges() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element u = 0; u < neighbors.size(); ++u)
      for (Element v : neighbors[u])
        if (u <= v) out.emplace_back(u, v);
    return out;
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (Element u = 0; u < neighbors.size(); ++u)
      for (Element v : neighbors[u]) total += u <= v;
    return total;
  }

  bool symmetric() const {
    for (Element u = 0; u < neighbors.size(); ++u)
      for (Element v : neighbors[u])
        if (!adjacent(v, u)) return false;
    return true;
  }
};

/// {xg, xg^-1, x^-1g, x^-1g^-1, gx, gx^-1, g^-1x, g^-1x^-1}
inline std::array<Element, 8> gamma_x_candidates(const GroupTable& G, Element x, Element g) {
  const Element xi = G.inv(x), gi = G.inv(g);
  return {G.mul(x, g),  G.mul(x, gi),  G.mul(xi, g),  G.mul(xi, gi),
          G.mul(g, x),  G.mul(g, xi),  G.mul(gi, x),  G.mul(gi, xi)};
}

inline GammaX build_gamma_x(const GroupTable& G, Element x) {
  detail::require_non_identity(x, "build_gamma_x");
  GammaX gx;
  gx.order = G.order();
  gx.x = x;
  gx.neighbors.resize(G.order());
  for (Element g = 0; g < G.order(); ++g) {
    const auto c = gamma_x_candidates(G, x, g);
    gx.neighbors[g].assign(c.begin(), c.end());
    detail::sort_unique(gx.neighbors[g]);
  }
  return gx;
}

/// Number of x != 1 for which g and h are adjacent in Gamma_x.
inline std::size_t gamma_membership_count(const GroupTable& G, Element g, Element h) {
  std::size_t count = 0;
  for (Element x = 1; x < G.order(); ++x) {
    const auto c = gamma_x_candidates(G, x, g);
    if (std::find(c.begin(), c.end(), h) != c.end()) ++count;
  }
  return count;
}

/// For every unordered pair {g, h}, g != h, the number of Gamma_x containing
/// it; returns the maximum. O(8 n^2) time, O(n^2) memory.
inline std::size_t max_gamma_membership(const GroupTable& G) {
  const std::size_t n = G.order();
  std::vector<std::uint8_t> count(n * n, 0);
  std::size_t best = 0;
  std::vector<Element> nb;
  for (Element x = 1; x < n; ++x)
    for (Element g = 0; g < n; ++g) {
      const auto c = gamma_x_candidates(G, x, g);
      nb.assign(c.begin(), c.end());
      detail::sort_unique(nb);
      for (Element h : nb)
        if (h != g) best = std::max<std::size_t>(best, ++count[g * n + h]);
    }
  return best;
}

struct CommonEdgeSet {
  std::vector<Element> members;
  double overlap_threshold = 0.0;    // 30 n^(1-eps)
  double size_target = 0.0;          // n^(1-eps)
  std::size_t aux_max_degree = 0;
  bool maximal = false;

  bool meets_size_target() const { return static_cast<double>(members.size()) >= size_target; }
};

inline constexpr std::size_t kMaxCommonEdgeOrder = 300;

/// Greedy independent set in the graph on G \ {1} joining x, y whenever
/// Gamma_x and Gamma_y share more than 30 n^(1-eps) edges.
inline CommonEdgeSet build_common_edge_set_A(const GroupTable& G, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
  const std::size_t n = G.order();
  if (n > kMaxCommonEdgeOrder)
    throw ParameterError("build_common_edge_set_A: order " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxCommonEdgeOrder));
  CommonEdgeSet out;
  out.overlap_threshold = 30.0 * std::pow(static_cast<double>(n), 1.0 - eps);
  out.size_target = std::pow(static_cast<double>(n), 1.0 - eps);

  // (edge key, x) incidences, grouped by edge.
  std::vector<std::pair<std::uint32_t, Element>> inc;
  for (Element x = 1; x < n; ++x)
    for (const auto& [u, v] : build_gamma_x(G, x).edges())
      inc.emplace_back(static_cast<std::uint32_t>(u * n + v), x);
  std::sort(inc.begin(), inc.end());
  std::vector<std::uint32_t> common(n * n, 0);
  for (std::size_t lo = 0; lo < inc.size();) {
    std::size_t hi = lo;
    while (hi < inc.size() && inc[hi].first == inc[lo].first) ++hi;
    for (std::size_t a = lo; a < hi; ++a)
      for (std::size_t b = a + 1; b < hi; ++b) {
        ++common[inc[a].second * n + inc[b].second];
        ++common[inc[b].second * n + inc[a].second];
      }
    lo = hi;
  }
  auto joined = [&](Element a, Element b) { return common[a * n + b] > out.overlap_threshold; };
  for (Element a = 1; a < n; ++a) {
    std::size_t d = 0;
    for (Element b = 1; b < n; ++b) d += a != b && joined(a, b);
    out.aux_max_degree = std::max(out.aux_max_degree, d);
  }
  for (Element a = 1; a < n; ++a) {
    const bool free = std::none_of(out.members.begin(), out.members.end(),
                                   [&](Element m) { return joined(a, m); });
    if (free) out.members.push_back(a);
  }
  out.maximal = true;
  for (Element a = 1; a < n && out.maximal; ++a) {
    if (std::binary_search(out.members.begin(), out.members.end(), a)) continue;
    out.maximal = std::any_of(out.members.begin(), out.members.end(),
                              [&](Element m) { return joined(a, m); });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Five vertex types and the dependency graph H on G \ {1, x}.

enum class VertexType : std::uint8_t { T1, T2a, T2b, T3, T4 };

inline const char* to_string(VertexType t) {
  switch (t) {
    case VertexType::T1: return "T1";
    case VertexType::T2a: return "T2a";
    case VertexType::T2b: return "T2b";
    case VertexType::T3: return "T3";
    case VertexType::T4: return "T4";
  }
  return "?";
}

struct TypeOverlap {
  Element y;
  std::vector<VertexType> matched;
};

struct TypePartition {
  Element x = 0;
  std::vector<std::optional<VertexType>> label;  // nullopt exactly at 1 and x
  std::vector<TypeOverlap> overlaps;             // y matching more than one defining predicate
  std::array<std::size_t, 5> counts{};

  bool is(Element y, VertexType t) const { return label[y] == t; }
  std::vector<Element> of_type(VertexType t) const {
    std::vector<Element> out;
    for (Element y = 0; y < label.size(); ++y)
      if (label[y] == t) out.push_back(y);
    return out;
  }
};

inline TypePartition classify_types(const GroupTable& G, Element x) {
  detail::require_non_identity(x, "classify_types");
  const std::size_t n = G.order();
  const Element xi = G.inv(x);
  TypePartition tp;
  tp.x = x;
  tp.label.assign(n, std::nullopt);
  for (Element y = 0; y < n; ++y) {
    if (y == GroupTable::identity() || y == x) continue;
    const Element yi = G.inv(y);
    const bool self_inverse = y == yi;
    const bool balanced = G.mul(x, yi) == G.mul(y, xi);
    const bool root = y == G.mul(x, yi);
    std::vector<VertexType> matched;
    if (self_inverse && balanced) matched.push_back(VertexType::T1);
    if (self_inverse && !balanced) matched.push_back(VertexType::T2a);
    if (!self_inverse && balanced) matched.push_back(VertexType::T2b);
    if (root) matched.push_back(VertexType::T3);
    const VertexType t = matched.empty() ? VertexType::T4 : matched.front();
    if (matched.size() > 1) tp.overlaps.push_back({y, matched});
    tp.label[y] = t;
    ++tp.counts[static_cast<std::size_t>(t)];
  }
  return tp;
}

/// True iff the labels cover G \ {1, x} and no element matched two types.
inline bool partition_is_disjoint_cover(const TypePartition& tp) {
  std::size_t labelled = 0;
  for (Element y = 0; y < tp.label.size(); ++y) {
    const bool excluded = y == GroupTable::identity() || y == tp.x;
    if (excluded == tp.label[y].has_value()) return false;
    labelled += tp.label[y].has_value();
  }
  std::size_t total = 0;
  for (auto c : tp.counts) total += c;
  return tp.overlaps.empty() && total == labelled && labelled + 2 == tp.label.size();
}

struct DependencyGraphH {
  Element x = 0;
  std::vector<std::vector<Element>> neighbors;  // empty at 1 and x

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& nb : neighbors) d = std::max(d, nb.size());
    return d;
  }
  bool adjacent(Element u, Element v) const {
    return std::binary_search(neighbors[u].begin(), neighbors[u].end(), v);
  }
  bool symmetric() const {
    for (Element u = 0; u < neighbors.size(); ++u)
      for (Element v : neighbors[u])
        if (!adjacent(v, u)) return false;
    return true;
  }
};

/// {y^-1, yx^-1, xy^-1, xy^-1x, yx, y^-1x}
inline std::array<Element, 6> h_candidates(const GroupTable& G, Element x, Element y) {
  const Element xi = G.inv(x), yi = G.inv(y);
  return {yi, G.mul(y, xi), G.mul(x, yi), G.mul(G.mul(x, yi), x), G.mul(y, x), G.mul(yi, x)};
}

inline DependencyGraphH build_H(const GroupTable& G, Element x) {
  detail::require_non_identity(x, "build_H");
  DependencyGraphH h;
  h.x = x;
  h.neighbors.resize(G.order());
  for (Element y = 0; y < G.order(); ++y) {
    if (y == GroupTable::identity() || y == x) continue;
    auto& nb = h.neighbors[y];
    for (Element z : h_candidates(G, x, y))
      if (z != y && z != GroupTable::identity() && z != x) nb.push_back(z);
    detail::sort_unique(nb);
  }
  return h;
}

/// The neighbour list each type predicts for y, with 1, x and y removed.
inline std::vector<Element> predicted_h_neighbors(const GroupTable& G, Element x, Element y, VertexType t) {
  const Element xi = G.inv(x), yi = G.inv(y);
  std::vector<Element> v;
  switch (t) {
    case VertexType::T1: v = {G.mul(x, y), G.mul(y, x)}; break;
    case VertexType::T2a: v = {G.mul(y, xi), G.mul(x, y), G.mul(G.mul(x, y), x), G.mul(y, x)}; break;
    case VertexType::T2b: v = {yi, G.mul(x, yi), G.mul(y, x), G.mul(yi, x)}; break;
    case VertexType::T3: v = {yi, G.mul(G.mul(y, y), y)}; break;
    case VertexType::T4: {
      const auto c = h_candidates(G, x, y);
      v.assign(c.begin(), c.end());
      break;
    }
  }
  std::erase_if(v, [&](Element z) { return z == y || z == x || z == GroupTable::identity(); });
  detail::sort_unique(v);
  return v;
}

/// Every H-neighbour of a T1 vertex is T1.
inline bool verify_claim1(const TypePartition& tp, const DependencyGraphH& h) {
  for (Element y = 0; y < tp.label.size(); ++y) {
    if (!tp.is(y, VertexType::T1)) continue;
    for (Element z : h.neighbors[y])
      if (!tp.is(z, VertexType::T1)) return false;
  }
  return true;
}

inline bool verify_claim1(const GroupTable& G, Element x) {
  return verify_claim1(classify_types(G, x), build_H(G, x));
}

namespace detail {

/// Proper colouring of the subgraph of `adj` induced by `vertices` with at
/// most `colours` colours, by backtracking in most-constrained-first order.
/// Returns colour per entry of `vertices`.
inline std::optional<std::vector<int>> colour_induced(const std::vector<Element>& vertices,
                                                      const std::vector<std::vector<Element>>& adj,
                                                      int colours) {
  const std::size_t m = vertices.size();
  std::vector<int> local(adj.size(), -1);
  for (std::size_t i = 0; i < m; ++i) local[vertices[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> nb(m);
  for (std::size_t i = 0; i < m; ++i)
    for (Element z : adj[vertices[i]])
      if (local[z] >= 0 && local[z] != static_cast<int>(i)) nb[i].push_back(local[z]);

  std::vector<int> colour(m, -1);
  std::vector<std::size_t> order;
  order.reserve(m);

  // Iterative backtracking over a DSATUR-like static order.
  std::vector<bool> placed(m, false);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t best = m;
    int best_sat = -1, best_deg = -1;
    for (std::size_t i = 0; i < m; ++i) {
      if (placed[i]) continue;
      int sat = 0;
      for (int j : nb[i]) sat += placed[j];
      const int deg = static_cast<int>(nb[i].size());
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        best = i;
        best_sat = sat;
        best_deg = deg;
      }
    }
    placed[best] = true;
    order.push_back(best);
  }

  std::size_t pos = 0;
  while (pos < m) {
    const std::size_t v = order[pos];
    int c = colour[v] + 1;
    for (; c < colours; ++c) {
      bool ok = true;
      for (int j : nb[v])
        if (colour[j] == c) {
          ok = false;
          break;
        }
      if (ok) break;
    }
    if (c < colours) {
      colour[v] = c;
      ++pos;
    } else {
      colour[v] = -1;
      if (pos == 0) return std::nullopt;
      --pos;
    }
  }
  return colour;
}

inline bool has_clique_of_size(const std::vector<Element>& vertices,
                               const std::vector<std::vector<Element>>& adj, std::size_t size,
                               const std::vector<bool>& in_set) {
  auto linked = [&](Element a, Element b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
  };
  std::vector<Element> pool, pick;
  for (Element v : vertices) {
    pool.clear();
    for (Element z : adj[v])
      if (z > v && in_set[z]) pool.push_back(z);
    if (pool.size() + 1 < size) continue;
    // Choose size-1 vertices from pool forming a clique with v.
    std::vector<std::size_t> idx(size - 1);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    while (true) {
      bool clique = true;
      for (std::size_t a = 0; a < idx.size() && clique; ++a)
        for (std::size_t b = a + 1; b < idx.size() && clique; ++b)
          clique = linked(pool[idx[a]], pool[idx[b]]);
      if (clique) return true;
      std::size_t i = idx.size();
      while (i > 0 && idx[i - 1] == pool.size() - idx.size() + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

}  // namespace detail

struct Claim2Result {
  std::size_t vertices = 0;
  bool four_colourable = false;
  bool has_k5 = false;
  std::vector<Element> members;   // T2a u T2b, ascending
  std::vector<int> colouring;     // parallel to members when colourable
};

inline Claim2Result verify_claim2(const TypePartition& tp, const DependencyGraphH& h) {
  Claim2Result r;
  std::vector<bool> in_set(tp.label.size(), false);
  for (Element y = 0; y < tp.label.size(); ++y)
    if (tp.is(y, VertexType::T2a) || tp.is(y, VertexType::T2b)) {
      r.members.push_back(y);
      in_set[y] = true;
    }
  r.vertices = r.members.size();
  auto colours = detail::colour_induced(r.members, h.neighbors, 4);
  r.four_colourable = colours.has_value();
  if (colours) r.colouring = std::move(*colours);
  r.has_k5 = detail::has_clique_of_size(r.members, h.neighbors, 5, in_set);
  return r;
}

inline Claim2Result verify_claim2(const GroupTable& G, Element x) {
  return verify_claim2(classify_types(G, x), build_H(G, x));
}

struct BPartition {
  std::vector<Element> b1, b2, b3, b4;
  std::size_t lhs = 0;  // b1 + 4 b2 + 3 b3 + 7 b4
  std::size_t rhs = 0;  // n - 2
  bool independent = false;
  bool maximal = false;

  bool claim3_holds() const { return lhs >= rhs; }
};

/// B1 = T1; B3 greedy maximal independent in T3; B4 greedy maximal
/// independent among T4 vertices with no neighbour in B3; B2 among T2a/T2b
/// vertices with no neighbour in B3 u B4, seeded with the largest colour
/// class of a proper 4-colouring and then greedily extended.
inline BPartition build_B_partition(const GroupTable& G, Element x) {
  detail::require_non_identity(x, "build_B_partition");
  const TypePartition tp = classify_types(G, x);
  const DependencyGraphH h = build_H(G, x);
  const std::size_t n = G.order();
  BPartition out;
  std::vector<bool> chosen(n, false), blocked(n, false);
  auto take = [&](std::vector<Element>& into, Element y) {
    into.push_back(y);
    chosen[y] = true;
    for (Element z : h.neighbors[y]) blocked[z] = true;
  };
  auto greedy = [&](std::vector<Element>& into, const std::vector<Element>& pool) {
    for (Element y : pool)
      if (!chosen[y] && !blocked[y]) take(into, y);
  };

  out.b1 = tp.of_type(VertexType::T1);
  greedy(out.b3, tp.of_type(VertexType::T3));
  {
    std::vector<Element> pool;
    for (Element y : tp.of_type(VertexType::T4))
      if (!blocked[y]) pool.push_back(y);
    greedy(out.b4, pool);
  }
  {
    std::vector<Element> pool;
    for (Element y = 0; y < n; ++y)
      if ((tp.is(y, VertexType::T2a) || tp.is(y, VertexType::T2b)) && !blocked[y]) pool.push_back(y);
    if (auto colours = detail::colour_induced(pool, h.neighbors, 4)) {
      std::array<std::size_t, 4> sizes{};
      for (int c : *colours) ++sizes[static_cast<std::size_t>(c)];
      const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
      for (std::size_t i = 0; i < pool.size(); ++i)
        if ((*colours)[i] == best) take(out.b2, pool[i]);
    }
    greedy(out.b2, pool);
    std::sort(out.b2.begin(), out.b2.end());
  }

  out.lhs = out.b1.size() + 4 * out.b2.size() + 3 * out.b3.size() + 7 * out.b4.size();
  out.rhs = n - 2;

  // B2..B4 must be jointly independent in H and none can be extended.
  out.independent = true;
  std::vector<bool> in_b(n, false);
  for (const auto* b : {&out.b2, &out.b3, &out.b4})
    for (Element y : *b) in_b[y] = true;
  for (Element y = 0; y < n; ++y)
    if (in_b[y])
      for (Element z : h.neighbors[y]) out.independent = out.independent && !in_b[z];
  auto covered = [&](Element y) {
    if (in_b[y]) return true;
    for (Element z : h.neighbors[y])
      if (in_b[z]) return true;
    return false;
  };
  out.maximal = true;
  for (Element y = 0; y < n; ++y) {
    if (!tp.label[y] || tp.is(y, VertexType::T1)) continue;
    out.maximal = out.maximal && covered(y);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Probability that an independent p-sample of a k-cycle has no two
// cyclically consecutive vertices: trace(M^k), M = [[q, p], [q, 0]].

template <class Real>
Real cycle_no_adjacent_prob(unsigned k, const Real& p) {
  if (k == 0) throw ParameterError("cycle_no_adjacent_prob: k must be positive");
  if (k == 1) return Real(1);
  const Real q = Real(1) - p;
  // Powers of M tracked as [[a, b], [c, d]].
  Real a = q, b = p, c = q, d = Real(0);
  for (unsigned i = 1; i < k; ++i) {
    const Real na = a * q + b * q;
    const Real nb = a * p;
    const Real nc = c * q + d * q;
    const Real nd = c * p;
    a = na;
    b = nb;
    c = nc;
    d = nd;
  }
  return a + d;
}

inline double cycle_no_adjacent_prob(unsigned k, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("probability must lie in [0, 1]");
  return cycle_no_adjacent_prob<long double>(k, static_cast<long double>(p));
}

using Rational = boost::multiprecision::cpp_rational;

inline Rational cycle_no_adjacent_prob_exact(unsigned k, const Rational& p) {
  if (p < 0 || p > 1) throw ParameterError("probability must lie in [0, 1]");
  return cycle_no_adjacent_prob<Rational>(k, p);
}

/// The (1 - p^2)^(k/2) ceiling the T1 components are compared with.
inline double cycle_component_bound(unsigned k, double p) {
  return std::exp(0.5 * k * std::log1p(-p * p));
}

// ---------------------------------------------------------------------------
// Janson-side structures: S(x), the classes [y] = {y, y^-1}, F_i and I(x).

/// y with y^2 and (y^-1 x)^2 both outside {1, x, x^-1, x^2}.
inline std::vector<Element> build_S_set(const GroupTable& G, Element x) {
  detail::require_non_identity(x, "build_S_set");
  const std::array<Element, 4> bad = {GroupTable::identity(), x, G.inv(x), G.mul(x, x)};
  auto is_bad = [&](Element v) { return std::find(bad.begin(), bad.end(), v) != bad.end(); };
  std::vector<Element> s;
  for (Element y = 0; y < G.order(); ++y) {
    const Element w = G.mul(G.inv(y), x);
    if (!is_bad(G.mul(y, y)) && !is_bad(G.mul(w, w))) s.push_back(y);
  }
  return s;
}

/// n - 7 sqrt(n cl(G)).
inline double s_set_size_floor(const GroupTable& G) {
  const double n = static_cast<double>(G.order());
  return n - 7.0 * std::sqrt(n * static_cast<double>(G.num_classes()));
}

struct EquivClassIndex {
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint8_t> class_size;

  explicit EquivClassIndex(const GroupTable& G) : class_of(G.order(), ~std::uint32_t{0}) {
    for (Element y = 0; y < G.order(); ++y) {
      if (class_of[y] != ~std::uint32_t{0}) continue;
      const auto id = static_cast<std::uint32_t>(class_size.size());
      class_of[y] = id;
      class_of[G.inv(y)] = id;
      class_size.push_back(G.inv(y) == y ? 1 : 2);
    }
  }
  std::size_t num_classes() const { return class_size.size(); }
};

/// F_i = {[i], [x i^-1]} as a sorted pair of class ids (equal ids collapse).
struct ClassPair {
  std::uint32_t lo, hi;
  bool operator==(const ClassPair&) const = default;
};

inline ClassPair f_set(const GroupTable& G, const EquivClassIndex& eq, Element x, Element i) {
  const std::uint32_t a = eq.class_of[i];
  const std::uint32_t b = eq.class_of[G.mul(x, G.inv(i))];
  return {std::min(a, b), std::max(a, b)};
}

/// Which of the exclusion conditions forbid i and j together in I(x):
///   (1) x^2 = 1 and j = ix; (2) i commutes with x and j = x i^-1;
///   (3) i^-1 x i = x^-1 and j = i^-1. Checked in both directions.
inline bool i_set_conflict(const GroupTable& G, Element x, Element i, Element j) {
  const Element xx = G.mul(x, x);
  const Element xi = G.inv(x);
  auto one_way = [&](Element a, Element b) {
    const Element ainv = G.inv(a);
    const Element conj = G.mul(G.mul(ainv, x), a);
    if (xx == GroupTable::identity() && b == G.mul(a, x)) return true;
    if (conj == x && b == G.mul(x, ainv)) return true;
    if (conj == xi && b == ainv) return true;
    return false;
  };
  return one_way(i, j) || one_way(j, i);
}

struct ISet {
  Element x = 0;
  std::vector<Element> members;
  std::size_t s_size = 0;
  int case_number = 0;       // I..IV by (x^2 = 1?, cl(x) <= 1/eps?)
  double lower_bound = 0.0;  // guaranteed |I| given the exact centraliser / inverting counts
  bool conditions_hold = false;
  bool maximal = false;

  bool meets_lower_bound() const { return static_cast<double>(members.size()) + 1e-9 >= lower_bound; }
};

inline ISet build_I_set(const GroupTable& G, Element x, double eps = 0.1) {
  detail::require_non_identity(x, "build_I_set");
  const std::vector<Element> s = build_S_set(G, x);
  const std::size_t n = G.order();
  ISet out;
  out.x = x;
  out.s_size = s.size();
  std::vector<bool> in_i(n, false);
  // Each element has at most three conflict partners, so check them directly.
  auto partners = [&](Element i) {
    const Element ii = G.inv(i);
    return std::array<Element, 6>{G.mul(i, x),  G.mul(x, ii), ii,
                                  G.mul(i, G.inv(x)),  // j with j x = i when x^2 = 1
                                  G.mul(ii, x), G.inv(G.mul(G.inv(x), i))};
  };
  for (Element i : s) {
    bool free = true;
    for (Element j : partners(i))
      if (j != i && in_i[j] && i_set_conflict(G, x, i, j)) free = false;
    if (free) {
      in_i[i] = true;
      out.members.push_back(i);
    }
  }

  out.conditions_hold = true;
  for (Element i : out.members)
    for (Element j : partners(i))
      if (j != i && in_i[j] && i_set_conflict(G, x, i, j)) out.conditions_hold = false;
  out.maximal = true;
  for (Element i : s) {
    if (in_i[i]) continue;
    bool blocked = false;
    for (Element j : partners(i)) blocked = blocked || (j != i && in_i[j] && i_set_conflict(G, x, i, j));
    out.maximal = out.maximal && blocked;
  }

  const bool involution = G.mul(x, x) == GroupTable::identity();
  const bool small_class = static_cast<double>(G.conjugacy().class_size_of(x)) <= 1.0 / eps;
  out.case_number = (small_class ? 2 : 0) + (involution ? 2 : 1);
  const double sz = static_cast<double>(s.size());
  const double cent = static_cast<double>(centralizer_count(G, x));
  const double invt = static_cast<double>(inverting_count(G, x));
  out.lower_bound = involution ? std::max(sz / 4.0, sz / 2.0 - cent / 4.0)
                               : std::max(sz / 2.0, sz - (cent + invt) / 2.0);
  return out;
}

struct UnionSizeReport {
  std::size_t intersecting_pairs = 0;
  std::array<std::size_t, 6> per_case{};  // (a) i^-1 (b) x i^-1 (c) i x^-1 (d) i^-1 x (e) i x (f) x i^-1 x
  std::size_t union_violations = 0;
  std::size_t candidate_violations = 0;
  std::vector<std::pair<Element, Element>> counterexamples;

  bool clean() const { return union_violations == 0 && candidate_violations == 0; }
};

/// For ordered pairs i != j in I with F_i n F_j nonempty, check
/// |F_i u F_j| = 3 and that j is one of i^-1, x i^-1, i x^-1, i^-1 x, i x,
/// x i^-1 x.
inline UnionSizeReport verify_union_size_3(const GroupTable& G, Element x, const std::vector<Element>& members) {
  const EquivClassIndex eq(G);
  UnionSizeReport r;
  std::vector<std::vector<Element>> by_class(eq.num_classes());
  std::vector<ClassPair> f(G.order());
  for (Element i : members) {
    f[i] = f_set(G, eq, x, i);
    by_class[f[i].lo].push_back(i);
    if (f[i].hi != f[i].lo) by_class[f[i].hi].push_back(i);
  }
  const Element xi = G.inv(x);
  std::vector<Element> partners;
  for (Element i : members) {
    partners.clear();
    for (std::uint32_t c : {f[i].lo, f[i].hi})
      for (Element j : by_class[c])
        if (j != i) partners.push_back(j);
    detail::sort_unique(partners);
    const Element ii = G.inv(i);
    const std::array<Element, 6> cand = {ii, G.mul(x, ii), G.mul(i, xi), G.mul(ii, x), G.mul(i, x),
                                         G.mul(G.mul(x, ii), x)};
    for (Element j : partners) {
      ++r.intersecting_pairs;
      std::array<std::uint32_t, 4> u = {f[i].lo, f[i].hi, f[j].lo, f[j].hi};
      std::sort(u.begin(), u.end());
      const auto distinct = static_cast<std::size_t>(std::unique(u.begin(), u.end()) - u.begin());
      const auto hit = std::find(cand.begin(), cand.end(), j);
      bool bad = false;
      if (distinct != 3) {
        ++r.union_violations;
        bad = true;
      }
      if (hit == cand.end()) {
        ++r.candidate_violations;
        bad = true;
      } else {
        ++r.per_case[static_cast<std::size_t>(hit - cand.begin())];
      }
      if (bad && r.counterexamples.size() < 16) r.counterexamples.emplace_back(i, j);
    }
  }
  return r;
}

struct FRelationReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<Element> counterexamples;  // offending i
};

/// The coincidences between F sets that shape the exclusion rules:
///   x^2 = 1 => F_i = F_{ix};  i^-1 x i = x => F_i = F_{x i^-1};
///   i^-1 x i = x^-1 => F_i = F_{i^-1}; checked for every i in S(x).
inline FRelationReport verify_f_relations(const GroupTable& G, Element x) {
  const EquivClassIndex eq(G);
  FRelationReport r;
  const Element xi = G.inv(x);
  const bool involution = G.mul(x, x) == GroupTable::identity();
  for (Element i : build_S_set(G, x)) {
    const ClassPair fi = f_set(G, eq, x, i);
    const Element conj = G.mul(G.mul(G.inv(i), x), i);
    auto expect = [&](bool hyp, Element j) {
      if (!hyp) return;
      ++r.checked;
      if (!(f_set(G, eq, x, j) == fi)) {
        ++r.violations;
        if (r.counterexamples.size() < 16) r.counterexamples.push_back(i);
      }
    };
    expect(involution, G.mul(i, x));
    expect(conj == x, G.mul(x, G.inv(i)));
    expect(conj == xi, G.inv(i));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Latin-square analogues. Vertex 0 plays the role of the identity.

/// i ~ j iff some y has i in {L[0][y], L[y][0]} and j in {L[x][y], L[y][x]},
/// or the same with i and j exchanged.
inline GammaX build_latin_gamma_x(const LatinSquare& l, std::size_t x) {
  const std::size_t n = l.order();
  if (x == 0 || x >= n) throw ParameterError("build_latin_gamma_x: x must be a vertex other than 0");
  GammaX gx;
  gx.order = n;
  gx.x = static_cast<Element>(x);
  gx.neighbors.resize(n);
  for (std::size_t y = 0; y < n; ++y) {
    const std::array<Element, 2> near = {l.at(0, y), l.at(y, 0)};
    const std::array<Element, 2> far = {l.at(x, y), l.at(y, x)};
    for (Element a : near)
      for (Element b : far) {
        gx.neighbors[a].push_back(b);
        gx.neighbors[b].push_back(a);
      }
  }
  for (auto& nb : gx.neighbors) detail::sort_unique(nb);
  return gx;
}

inline std::size_t latin_gamma_membership_count(const LatinSquare& l, Element i, Element j) {
  std::size_t count = 0;
  for (std::size_t x = 1; x < l.order(); ++x) count += build_latin_gamma_x(l, x).adjacent(i, j);
  return count;
}

/// Maximum degree of the graph on vertices other than x and y that joins z
/// and w when {L[x][z], L[z][x], L[y][z], L[z][y]} meets the same set for w.
inline std::size_t latin_dependency_degree(const LatinSquare& l, std::size_t x, std::size_t y) {
  const std::size_t n = l.order();
  if (x == y || x >= n || y >= n) throw ParameterError("latin_dependency_degree: need distinct vertices");
  // For each symbol, the vertices w whose set contains it.
  std::vector<std::vector<std::uint32_t>> holders(n);
  auto symbols = [&](std::size_t z) {
    return std::array<Element, 4>{l.at(x, z), l.at(z, x), l.at(y, z), l.at(z, y)};
  };
  for (std::size_t z = 0; z < n; ++z) {
    if (z == x || z == y) continue;
    for (Element s : symbols(z)) holders[s].push_back(static_cast<std::uint32_t>(z));
  }
  std::size_t best = 0;
  std::vector<std::uint32_t> nb;
  for (std::size_t z = 0; z < n; ++z) {
    if (z == x || z == y) continue;
    nb.clear();
    for (Element s : symbols(z))
      for (auto w : holders[s])
        if (w != z) nb.push_back(w);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    best = std::max(best, nb.size());
  }
  return best;
}

}  // namespace cayleylab
