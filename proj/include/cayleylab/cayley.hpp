#pragma once

/**
 * Random generating sets and Cayley graphs with dense bit-vector rows.
 *
 * An edge joins g and h when h*g^-1 or g*h^-1 lies in the generating set;
 * loops are dropped, so the graph is determined by the symmetric closure
 * C = (S u S^-1) \ {1}, and row(g) = C*g.
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "rng.hpp"

namespace cayleylab {

struct GeneratorSet {
  DynamicBitset member;             // the sampled set S
  DynamicBitset symmetric_closure;  // (S u S^-1) \ {1}; sized 0 when built over bare symbols
  std::vector<Element> closure_list;
};

inline void close_symmetric(const GroupTable& g, GeneratorSet& s) {
  s.symmetric_closure = DynamicBitset(g.order());
  s.member.for_each([&](std::size_t i) {
    if (i == GroupTable::identity()) return;
    s.symmetric_closure.set(i);
    s.symmetric_closure.set(g.inv(static_cast<Element>(i)));
  });
  s.closure_list.clear();
  s.symmetric_closure.for_each([&](std::size_t i) { s.closure_list.push_back(static_cast<Element>(i)); });
}

inline void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("probability must lie in [0, 1]");
}

/// Each of the n symbols joins S independently with probability p. One raw
/// draw is consumed per symbol, so S grows monotonically with p for a fixed
/// stream.
inline GeneratorSet sample_symbols(std::size_t n, double p, RngStream& stream) {
  check_probability(p);
  GeneratorSet s;
  s.member = DynamicBitset(n);
  const BernoulliCutoff keep(p);
  for (std::size_t i = 0; i < n; ++i)
    if (keep(stream())) s.member.set(i);
  return s;
}

inline GeneratorSet sample_generators(const GroupTable& g, double p, RngStream& stream) {
  GeneratorSet s = sample_symbols(g.order(), p, stream);
  close_symmetric(g, s);
  return s;
}

inline GeneratorSet generators_from(const GroupTable& g, std::span<const Element> elements) {
  GeneratorSet s;
  s.member = DynamicBitset(g.order());
  for (Element e : elements) s.member.set(e);
  close_symmetric(g, s);
  return s;
}

enum class GraphSource { cayley, latin };

class CayleyGraph {
 public:
  CayleyGraph(std::size_t order, GraphSource source)
      : order_(order), source_(source), rows_(order, DynamicBitset(order)) {}

  std::size_t order() const noexcept { return order_; }
  GraphSource source() const noexcept { return source_; }
  const DynamicBitset& row(std::size_t v) const { return rows_[v]; }
  DynamicBitset& row(std::size_t v) { return rows_[v]; }
  bool adjacent(std::size_t u, std::size_t v) const { return rows_[u].test(v); }
  std::size_t degree(std::size_t v) const { return rows_[v].count(); }

  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) return;
    rows_[u].set(v);
    rows_[v].set(u);
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.count();
    return total / 2;
  }

  bool operator==(const CayleyGraph& other) const {
    return order_ == other.order_ && rows_ == other.rows_;
  }

 private:
  std::size_t order_;
  GraphSource source_;
  std::vector<DynamicBitset> rows_;
};

/// Rows are right translates of the identity row: row(h) = C*h.
inline CayleyGraph build_cayley(const GroupTable& g, const GeneratorSet& s) {
  const std::size_t n = g.order();
  CayleyGraph graph(n, GraphSource::cayley);
  if (g.backing() == Backing::dense_table) {
    for (Element c : s.closure_list) {
      const std::uint16_t* row = g.dense_row(c);
      for (std::size_t h = 0; h < n; ++h) graph.row(h).set(row[h]);
    }
  } else {
    for (Element c : s.closure_list)
      for (Element h = 0; h < n; ++h) graph.row(h).set(g.mul(c, h));
  }
  return graph;
}

/// True iff every pair of distinct vertices is adjacent or has a common
/// neighbour. Cayley graphs are vertex transitive, so only pairs (1, x) are
/// examined for them; Latin-square graphs check all pairs.
inline bool has_diameter_at_most_2(const CayleyGraph& graph) {
  const std::size_t n = graph.order();
  auto close = [&](std::size_t u, std::size_t v) {
    return graph.adjacent(u, v) || graph.row(u).intersects(graph.row(v));
  };
  if (graph.source() == GraphSource::cayley) {
    for (std::size_t x = 1; x < n; ++x)
      if (!close(0, x)) return false;
    return true;
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!close(u, v)) return false;
  return true;
}

inline constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);

/// BFS distances from `source`; unreachable vertices get kUnreachable.
inline std::vector<std::size_t> distances_from(const CayleyGraph& graph, std::size_t source) {
  std::vector<std::size_t> dist(graph.order(), kUnreachable);
  std::vector<std::size_t> frontier{source}, next;
  dist[source] = 0;
  for (std::size_t d = 1; !frontier.empty(); ++d) {
    next.clear();
    for (std::size_t u : frontier)
      graph.row(u).for_each([&](std::size_t v) {
        if (dist[v] == kUnreachable) {
          dist[v] = d;
          next.push_back(v);
        }
      });
    frontier.swap(next);
  }
  return dist;
}

/// Exact diameter; std::nullopt when the graph is disconnected.
inline std::optional<std::size_t> diameter(const CayleyGraph& graph) {
  const std::size_t n = graph.order();
  if (n == 0) return 0;
  std::size_t best = 0;
  const std::size_t sources = graph.source() == GraphSource::cayley ? 1 : n;
  for (std::size_t s = 0; s < sources; ++s) {
    for (std::size_t d : distances_from(graph, s)) {
      if (d == kUnreachable) return std::nullopt;
      best = std::max(best, d);
    }
  }
  return best;
}

/// Vertices at distance greater than two from the identity, computed from
/// the product set: d(1,x) <= 2 iff x is in {1} u C u C*C. Does not build
/// the graph.
inline DynamicBitset far_from_identity(const GroupTable& g, const GeneratorSet& s) {
  const std::size_t n = g.order();
  DynamicBitset near(n);
  near.set(GroupTable::identity());
  for (Element c : s.closure_list) near.set(c);
  const bool dense = g.backing() == Backing::dense_table;
  for (Element a : s.closure_list) {
    if (dense) {
      const std::uint16_t* row = g.dense_row(a);
      for (Element b : s.closure_list) near.set(row[b]);
    } else {
      for (Element b : s.closure_list) near.set(g.mul(a, b));
    }
  }
  DynamicBitset far(n);
  for (std::size_t x = 0; x < n; ++x)
    if (!near.test(x)) far.set(x);
  return far;
}

/// Same event as has_diameter_at_most_2(build_cayley(g, s)) without
/// materialising the graph; stops once {1} u C u C*C covers G.
inline bool cayley_diameter_at_most_2(const GroupTable& g, const GeneratorSet& s) {
  const std::size_t n = g.order();
  DynamicBitset near(n);
  std::size_t covered = 0;
  auto mark = [&](std::size_t v) {
    if (!near.test(v)) {
      near.set(v);
      ++covered;
    }
  };
  mark(GroupTable::identity());
  for (Element c : s.closure_list) mark(c);
  if (covered == n) return true;
  const bool dense = g.backing() == Backing::dense_table;
  for (Element a : s.closure_list) {
    if (dense) {
      const std::uint16_t* row = g.dense_row(a);
      for (Element b : s.closure_list) mark(row[b]);
    } else {
      for (Element b : s.closure_list) mark(g.mul(a, b));
    }
    if (covered == n) return true;
  }
  return false;
}

/// "u v" per line, u < v, 0-based.
inline void write_edge_list(std::ostream& out, const CayleyGraph& graph) {
  for (std::size_t u = 0; u < graph.order(); ++u)
    graph.row(u).for_each([&](std::size_t v) {
      if (u < v) out << u << ' ' << v << '\n';
    });
}

}  // namespace cayleylab
