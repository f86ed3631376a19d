#pragma once

/**
 * Named group families and their string / file forms.
 *
 *   "cyclic:5"            Z_5 (addition mod 5)
 *   "z2^:6"               Z_2^6 (bitwise xor)
 *   "dihedral:12"         D_12 of order 24
 *   "sym:5"               S_5
 *   "prod:cyclic:3,sym:4" Z_3 x S_4
 *   "file:PATH"           multiplication table file
 *
 * Table files hold the order on the first line followed by n rows of n
 * whitespace-separated 0-based indices; row x, column y holds x*y.
 */

#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "group.hpp"

namespace cayleylab {

struct FamilySpec {
  enum class Kind { cyclic, elem_abelian_2, dihedral, symmetric, direct_product, custom };

  Kind kind = Kind::cyclic;
  unsigned long param = 0;                       // n, k, m or m depending on kind
  std::shared_ptr<const FamilySpec> left, right; // direct products
  std::string path;                              // custom tables

  static FamilySpec cyclic(unsigned long n) { return {Kind::cyclic, n, {}, {}, {}}; }
  static FamilySpec elem_abelian_2(unsigned long k) { return {Kind::elem_abelian_2, k, {}, {}, {}}; }
  static FamilySpec dihedral(unsigned long m) { return {Kind::dihedral, m, {}, {}, {}}; }
  static FamilySpec symmetric(unsigned long m) { return {Kind::symmetric, m, {}, {}, {}}; }
  static FamilySpec custom(std::string path) { return {Kind::custom, 0, {}, {}, std::move(path)}; }
  static FamilySpec product(FamilySpec a, FamilySpec b) {
    return {Kind::direct_product, 0, std::make_shared<const FamilySpec>(std::move(a)),
            std::make_shared<const FamilySpec>(std::move(b)), {}};
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::cyclic: return "cyclic:" + std::to_string(param);
      case Kind::elem_abelian_2: return "z2^:" + std::to_string(param);
      case Kind::dihedral: return "dihedral:" + std::to_string(param);
      case Kind::symmetric: return "sym:" + std::to_string(param);
      case Kind::direct_product: return "prod:" + left->to_string() + "," + right->to_string();
      case Kind::custom: return "file:" + path;
    }
    return {};
  }

  /// Order implied by the kind; 0 for custom tables (unknown until loaded)
  /// and for values that overflow.
  std::size_t expected_order() const {
    auto safe_mul = [](std::size_t a, std::size_t b) -> std::size_t {
      if (a != 0 && b > SIZE_MAX / a) return 0;
      return a * b;
    };
    switch (kind) {
      case Kind::cyclic: return param;
      case Kind::elem_abelian_2: return param < 40 ? std::size_t{1} << param : 0;
      case Kind::dihedral: return safe_mul(2, param);
      case Kind::symmetric: {
        std::size_t f = 1;
        for (unsigned long i = 2; i <= param && f; ++i) f = safe_mul(f, i);
        return param > 20 ? 0 : f;
      }
      case Kind::direct_product: return safe_mul(left->expected_order(), right->expected_order());
      case Kind::custom: return 0;
    }
    return 0;
  }
};

namespace detail {

inline unsigned long parse_positive(std::string_view text, std::string_view what) {
  unsigned long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || v == 0)
    throw ParameterError("bad " + std::string(what) + " parameter '" + std::string(text) + "'");
  return v;
}

/// Split "a,b" at the comma that separates two well-formed family specs.
/// Nested products are parsed greedily from the left.
inline std::pair<std::string_view, std::string_view> split_product(std::string_view body);

}  // namespace detail

inline FamilySpec parse_family(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParameterError("family spec '" + std::string(text) + "' lacks a ':'");
  const auto head = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (head == "cyclic") return FamilySpec::cyclic(detail::parse_positive(body, "cyclic"));
  if (head == "z2^" || head == "z2") return FamilySpec::elem_abelian_2(detail::parse_positive(body, "z2^"));
  if (head == "dihedral") return FamilySpec::dihedral(detail::parse_positive(body, "dihedral"));
  if (head == "sym") return FamilySpec::symmetric(detail::parse_positive(body, "sym"));
  if (head == "file") {
    if (body.empty()) throw ParameterError("file: spec needs a path");
    return FamilySpec::custom(std::string(body));
  }
  if (head == "prod") {
    const auto [a, b] = detail::split_product(body);
    return FamilySpec::product(parse_family(a), parse_family(b));
  }
  throw ParameterError("unknown family kind '" + std::string(head) + "'");
}

namespace detail {

inline std::pair<std::string_view, std::string_view> split_product(std::string_view body) {
  // Try every comma; the first split where both halves parse wins.
  for (std::size_t pos = body.find(','); pos != std::string_view::npos;
       pos = body.find(',', pos + 1)) {
    try {
      (void)parse_family(body.substr(0, pos));
      (void)parse_family(body.substr(pos + 1));
      return {body.substr(0, pos), body.substr(pos + 1)};
    } catch (const ParameterError&) {
    }
  }
  throw ParameterError("prod: spec must look like prod:A,B (got '" + std::string(body) + "')");
}

inline GroupTable tabulate(std::size_t n, std::string name, GroupTable::Labeler labeler,
                           const auto& op) {
  if (n > kMaxDenseOrder)
    throw ParameterError(name + ": order " + std::to_string(n) + " exceeds the dense limit " +
                         std::to_string(kMaxDenseOrder));
  std::vector<std::uint16_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint16_t>(op(a, b));
  return GroupTable::from_table(std::move(t), n, std::move(name), std::move(labeler), true);
}

}  // namespace detail

/// Dense tabulation of S_m using the same element indexing (lexicographic
/// rank) as the permutation-backed form.
inline GroupTable symmetric_dense(unsigned m) {
  if (m == 0 || m > kMaxSymmetricDegree) throw ParameterError("sym: degree must be in 1..10");
  auto codec = std::make_shared<const PermutationCodec>(m);
  const std::size_t n = codec->order();
  std::vector<PermutationCodec::Perm> perms(n);
  for (std::size_t i = 0; i < n; ++i) perms[i] = codec->unrank(static_cast<std::uint32_t>(i));
  auto g = detail::tabulate(n, "sym:" + std::to_string(m), {}, [&](std::size_t a, std::size_t b) {
    return codec->rank(codec->compose(perms[a], perms[b]));
  });
  return g.with_codec(std::move(codec));
}

inline GroupTable load_group_table(const std::string& path, std::string name = {});

inline GroupTable build_group(const FamilySpec& spec) {
  using K = FamilySpec::Kind;
  const std::string name = spec.to_string();
  switch (spec.kind) {
    case K::cyclic:
      return detail::tabulate(spec.param, name, {}, [n = spec.param](std::size_t a, std::size_t b) {
        return (a + b) % n;
      });
    case K::elem_abelian_2: {
      if (spec.param > 13) throw ParameterError(name + ": order exceeds the dense limit");
      const unsigned k = static_cast<unsigned>(spec.param);
      auto labeler = [k](Element x) {
        std::string s(k, '0');
        for (unsigned i = 0; i < k; ++i)
          if ((x >> i) & 1u) s[k - 1 - i] = '1';
        return s;
      };
      return detail::tabulate(std::size_t{1} << k, name, labeler,
                              [](std::size_t a, std::size_t b) { return a ^ b; });
    }
    case K::dihedral: {
      // r^k -> k, s r^k -> m + k, with r^a s = s r^-a.
      const std::size_t m = spec.param;
      if (m > kMaxDenseOrder / 2) throw ParameterError(name + ": order exceeds the dense limit");
      auto labeler = [m](Element x) {
        return x < m ? "r^" + std::to_string(x) : "s r^" + std::to_string(x - m);
      };
      return detail::tabulate(2 * m, name, labeler, [m](std::size_t a, std::size_t b) {
        const bool ra = a < m, rb = b < m;
        const std::size_t ka = a % m, kb = b % m;
        if (ra && rb) return (ka + kb) % m;
        if (ra) return m + (kb + m - ka) % m;
        if (rb) return m + (ka + kb) % m;
        return (kb + m - ka) % m;
      });
    }
    case K::symmetric: {
      if (spec.param > kMaxSymmetricDegree) throw ParameterError("sym: degree must be in 1..10");
      const auto m = static_cast<unsigned>(spec.param);
      if (spec.expected_order() > kMaxDenseOrder) return GroupTable::symmetric_permutation_backed(m);
      return symmetric_dense(m);
    }
    case K::direct_product: {
      const GroupTable a = build_group(*spec.left);
      const GroupTable b = build_group(*spec.right);
      const std::size_t nb = b.order();
      const std::size_t n = a.order() * nb;
      auto labeler = [a, b, nb](Element x) {
        return "(" + a.label(static_cast<Element>(x / nb)) + "," +
               b.label(static_cast<Element>(x % nb)) + ")";
      };
      return detail::tabulate(n, name, labeler, [&](std::size_t x, std::size_t y) {
        return static_cast<std::size_t>(a.mul(static_cast<Element>(x / nb), static_cast<Element>(y / nb))) * nb +
               b.mul(static_cast<Element>(x % nb), static_cast<Element>(y % nb));
      });
    }
    case K::custom: return load_group_table(spec.path, name);
  }
  throw ParameterError("unhandled family kind");
}

inline GroupTable build_group(std::string_view spec) { return build_group(parse_family(spec)); }

/// Parse a table from text. If the identity is not element 0 the labels 0
/// and e are swapped so that it becomes element 0 (recorded in labels).
inline GroupTable parse_group_table(std::istream& in, std::string name) {
  long long n_raw = 0;
  if (!(in >> n_raw) || n_raw <= 0)
    throw ValidationError("table-shape", "first token must be a positive order");
  if (static_cast<unsigned long long>(n_raw) > kMaxDenseOrder)
    throw ValidationError("table-shape", "order exceeds the dense limit");
  const auto n = static_cast<std::size_t>(n_raw);
  std::vector<std::uint16_t> t(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    long long v = 0;
    if (!(in >> v))
      throw ValidationError("table-shape", "expected " + std::to_string(n * n) +
                                               " entries, got " + std::to_string(i));
    if (v < 0 || static_cast<std::size_t>(v) >= n)
      throw ValidationError("closure", "entry " + std::to_string(v) + " at row " +
                                           std::to_string(i / n) + " is out of range");
    t[i] = static_cast<std::uint16_t>(v);
  }
  std::string extra;
  if (in >> extra) throw ValidationError("table-shape", "trailing data after table");

  // Locate a two-sided identity before the axiom pass so a relabelled
  // identity is accepted.
  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = t[c * n + x] == x && t[x * n + c] == x;
    if (ok) e = c;
  }
  GroupTable::Labeler labeler;
  if (e != n && e != 0) {
    auto relabel = [e](std::size_t v) -> std::size_t { return v == 0 ? e : v == e ? 0 : v; };
    std::vector<std::uint16_t> r(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        r[a * n + b] = static_cast<std::uint16_t>(relabel(t[relabel(a) * n + relabel(b)]));
    t = std::move(r);
    labeler = [relabel](Element x) { return std::to_string(relabel(x)); };
  }
  detail::validate_dense_table(t, n);
  return GroupTable::from_table(std::move(t), n, std::move(name), std::move(labeler));
}

inline GroupTable load_group_table(const std::string& path, std::string name) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open group table '" + path + "'");
  return parse_group_table(in, name.empty() ? "file:" + path : std::move(name));
}

inline void write_group_table(std::ostream& out, const GroupTable& g) {
  const std::size_t n = g.order();
  out << n << '\n';
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
}

}  // namespace cayleylab
