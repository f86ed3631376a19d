#pragma once

/**
 * Latin squares, Latin-square graphs and a Jacobson-Matthews sampler.
 */

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "cayley.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "rng.hpp"

namespace cayleylab {

class LatinSquare {
 public:
  using Symbol = std::uint32_t;

  LatinSquare() = default;

  /// Row-major entries; throws ValidationError unless Latin.
  LatinSquare(std::size_t n, std::vector<Symbol> entries) : n_(n), entries_(std::move(entries)) {
    validate();
  }

  static LatinSquare cyclic(std::size_t n) {
    std::vector<Symbol> e(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) e[r * n + c] = static_cast<Symbol>((r + c) % n);
    return LatinSquare(n, std::move(e));
  }

  std::size_t order() const noexcept { return n_; }
  Symbol at(std::size_t r, std::size_t c) const noexcept { return entries_[r * n_ + c]; }
  const std::vector<Symbol>& entries() const noexcept { return entries_; }
  bool operator==(const LatinSquare&) const = default;

  void validate() const {
    if (n_ == 0) throw ValidationError("order", "Latin square order must be positive");
    if (entries_.size() != n_ * n_) throw ValidationError("shape", "entry count is not n*n");
    std::vector<std::uint32_t> seen(n_, 0);
    std::uint32_t stamp = 0;
    for (std::size_t r = 0; r < n_; ++r) {
      ++stamp;
      for (std::size_t c = 0; c < n_; ++c) {
        const Symbol s = at(r, c);
        if (s >= n_) throw ValidationError("symbols", "symbol out of range in row " + std::to_string(r));
        if (seen[s] == stamp) throw ValidationError("latin-rows", "row " + std::to_string(r) + " repeats " + std::to_string(s));
        seen[s] = stamp;
      }
    }
    for (std::size_t c = 0; c < n_; ++c) {
      ++stamp;
      for (std::size_t r = 0; r < n_; ++r) {
        const Symbol s = at(r, c);
        if (seen[s] == stamp) throw ValidationError("latin-columns", "column " + std::to_string(c) + " repeats " + std::to_string(s));
        seen[s] = stamp;
      }
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<Symbol> entries_;
};

/// L[x][y] = x * y^-1.
inline LatinSquare latin_from_group(const GroupTable& g) {
  if (g.backing() != Backing::dense_table)
    throw ParameterError("latin_from_group needs a dense-table group");
  const std::size_t n = g.order();
  std::vector<LatinSquare::Symbol> e(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) e[x * n + y] = g.mul(x, g.inv(y));
  return LatinSquare(n, std::move(e));
}

/// i ~ j iff L[i][j] or L[j][i] lies in S (the member set), loops dropped.
inline CayleyGraph build_latin_graph(const LatinSquare& l, const GeneratorSet& s) {
  const std::size_t n = l.order();
  CayleyGraph graph(n, GraphSource::latin);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (s.member.test(l.at(i, j)) || s.member.test(l.at(j, i))) graph.add_edge(i, j);
  return graph;
}

/// Jacobson-Matthews +-1 moves on the incidence cube of a Latin square.
class JacobsonMatthewsChain {
 public:
  explicit JacobsonMatthewsChain(const LatinSquare& start) : n_(start.order()), cube_(n_ * n_ * n_, 0) {
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) cell(r, c, start.at(r, c)) = 1;
  }

  bool proper() const noexcept { return proper_; }

  /// Advance until the next proper square is reached.
  void proper_move(RngStream& rng) {
    if (n_ < 2) return;
    do {
      step(rng);
    } while (!proper_);
  }

  LatinSquare square() const {
    std::vector<LatinSquare::Symbol> e(n_ * n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c)
        for (std::size_t s = 0; s < n_; ++s)
          if (cell(r, c, s) == 1) e[r * n_ + c] = static_cast<LatinSquare::Symbol>(s);
    return LatinSquare(n_, std::move(e));
  }

 private:
  std::int8_t& cell(std::size_t r, std::size_t c, std::size_t s) { return cube_[(r * n_ + c) * n_ + s]; }
  std::int8_t cell(std::size_t r, std::size_t c, std::size_t s) const { return cube_[(r * n_ + c) * n_ + s]; }

  // Positive cells on a line through (r,c,s) along one axis. A proper line
  // has exactly one; a line through the improper cell has two.
  template <class At>
  std::size_t pick_positive(At at, RngStream& rng, bool two) const {
    std::size_t found[2] = {0, 0};
    int k = 0;
    for (std::size_t i = 0; i < n_ && k < 2; ++i)
      if (at(i) == 1) found[k++] = i;
    return two ? found[rng.below(2)] : found[0];
  }

  void step(RngStream& rng) {
    std::size_t r, c, s;
    if (proper_) {
      do {
        r = rng.below(n_);
        c = rng.below(n_);
        s = rng.below(n_);
      } while (cell(r, c, s) != 0);
    } else {
      r = ir_;
      c = ic_;
      s = is_;
    }
    const bool two = !proper_;
    const std::size_t r1 = pick_positive([&](std::size_t i) { return cell(i, c, s); }, rng, two);
    const std::size_t c1 = pick_positive([&](std::size_t i) { return cell(r, i, s); }, rng, two);
    const std::size_t s1 = pick_positive([&](std::size_t i) { return cell(r, c, i); }, rng, two);

    ++cell(r, c, s);
    ++cell(r, c1, s1);
    ++cell(r1, c, s1);
    ++cell(r1, c1, s);
    --cell(r, c, s1);
    --cell(r, c1, s);
    --cell(r1, c, s);
    --cell(r1, c1, s1);

    if (cell(r1, c1, s1) < 0) {
      proper_ = false;
      ir_ = r1;
      ic_ = c1;
      is_ = s1;
    } else {
      proper_ = true;
    }
  }

  std::size_t n_;
  std::vector<std::int8_t> cube_;
  bool proper_ = true;
  std::size_t ir_ = 0, ic_ = 0, is_ = 0;
};

/// Burn-in length in proper moves for random_latin_square.
inline std::size_t latin_burn_in(std::size_t n) { return n * n * n; }

/// Start from the cyclic square and run the chain for n^3 proper moves.
inline LatinSquare random_latin_square(std::size_t n, RngStream& stream) {
  if (n == 0) throw ParameterError("Latin square order must be positive");
  JacobsonMatthewsChain chain(LatinSquare::cyclic(n));
  const std::size_t moves = latin_burn_in(n);
  for (std::size_t k = 0; k < moves; ++k) chain.proper_move(stream);
  return chain.square();
}

inline void write_latin_square(std::ostream& out, const LatinSquare& l) {
  out << l.order() << '\n';
  for (std::size_t r = 0; r < l.order(); ++r) {
    for (std::size_t c = 0; c < l.order(); ++c) out << (c ? " " : "") << l.at(r, c);
    out << '\n';
  }
}

inline LatinSquare read_latin_square(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n <= 0) throw ValidationError("shape", "first token must be a positive order");
  const auto order = static_cast<std::size_t>(n);
  std::vector<LatinSquare::Symbol> e(order * order);
  for (auto& v : e) {
    long long x = 0;
    if (!(in >> x)) throw ValidationError("shape", "too few entries");
    if (x < 0 || static_cast<std::size_t>(x) >= order) throw ValidationError("symbols", "symbol out of range");
    v = static_cast<LatinSquare::Symbol>(x);
  }
  return LatinSquare(order, std::move(e));
}

}  // namespace cayleylab
