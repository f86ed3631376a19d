#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include <cayleylab/family.hpp>
#include <cayleylab/theory.hpp>

using namespace cayleylab;
using boost::multiprecision::cpp_rational;

namespace {

std::vector<std::string> small_battery() {
  return {"cyclic:5", "cyclic:7", "cyclic:12", "cyclic:16", "z2^:3", "z2^:4", "dihedral:3", "dihedral:6",
          "dihedral:8", "sym:3", "sym:4", "prod:cyclic:3,sym:3", "prod:cyclic:2,cyclic:4"};
}

Element element_of(const GroupTable& g, std::initializer_list<int> perm) {
  PermutationCodec::Perm p{};
  int i = 0;
  for (int v : perm) p[i++] = static_cast<std::uint8_t>(v);
  return g.permutation_codec()->rank(p);
}

// Generator classes used by the event "1 - y - x is a path": {y, y^-1, x y^-1, y x^-1}.
std::set<Element> witnesses(const GroupTable& g, Element x, Element y) {
  const Element a = y, b = g.mul(x, g.inv(y));
  return {a, g.inv(a), b, g.inv(b)};
}

}  // namespace

// ---------------------------------------------------------------------------

TEST(GammaX, DegreesAndLoops) {
  for (const auto& s : small_battery()) {
    const GroupTable g = build_group(s);
    for (Element x = 1; x < g.order(); ++x) {
      const GammaX gx = build_gamma_x(g, x);
      EXPECT_GE(gx.min_degree(), 1u) << s;
      EXPECT_LE(gx.max_degree(), g.is_abelian() ? 4u : 8u) << s;
      EXPECT_TRUE(gx.symmetric());
      for (Element v = 0; v < g.order(); ++v) EXPECT_TRUE(gx.adjacent(v, g.mul(v, x)));
      EXPECT_GE(2 * gx.edge_count(), g.order());
      EXPECT_LE(gx.edge_count(), 4 * g.order());
    }
  }
  EXPECT_THROW(build_gamma_x(build_group("cyclic:5"), 0), ParameterError);
}

TEST(GammaX, EdgesAreWitnessPairs) {
  // g ~ h exactly when some y makes {g, h} the two generators (up to
  // inversion) of a path 1 - y - x.
  for (const char* s : {"cyclic:9", "dihedral:5", "sym:3", "sym:4"}) {
    const GroupTable g = build_group(s);
    const std::size_t n = g.order();
    for (Element x = 1; x < n; ++x) {
      std::vector<std::set<Element>> want(n);
      for (Element y = 0; y < n; ++y) {
        const Element a = y, b = g.mul(x, g.inv(y));
        for (Element u : {a, g.inv(a)})
          for (Element v : {b, g.inv(b)}) {
            want[u].insert(v);
            want[v].insert(u);
          }
      }
      const GammaX gx = build_gamma_x(g, x);
      for (Element u = 0; u < n; ++u)
        EXPECT_EQ(std::set<Element>(gx.neighbors[u].begin(), gx.neighbors[u].end()), want[u]) << s << " x=" << x;
    }
  }
}

TEST(GammaX, Sym3Transposition) {
  const GroupTable g = build_group("sym:3");
  const GammaX gx = build_gamma_x(g, element_of(g, {1, 0, 2}));
  for (Element v = 0; v < 6; ++v) {
    EXPECT_GE(gx.degree(v), 1u);
    EXPECT_LE(gx.degree(v), 8u);
  }
}

TEST(GammaMembership, BruteForce) {
  const GroupTable c12 = build_group("cyclic:12");
  std::size_t brute = 0;
  for (Element x = 1; x < 12; ++x) brute += build_gamma_x(c12, x).adjacent(1, 5);
  EXPECT_EQ(gamma_membership_count(c12, 1, 5), brute);
  EXPECT_LE(brute, 8u);

  const GroupTable s4 = build_group("sym:4");
  RngStream rng(50);
  for (int k = 0; k < 50; ++k) {
    const auto a = static_cast<Element>(rng.below(24));
    auto b = static_cast<Element>(rng.below(24));
    if (a == b) b = (b + 1) % 24;
    EXPECT_LE(gamma_membership_count(s4, a, b), 8u);
  }
  for (const auto& s : small_battery()) EXPECT_LE(max_gamma_membership(build_group(s)), 8u) << s;
}

TEST(GammaMembership, MaxMatchesPairScan) {
  const GroupTable g = build_group("dihedral:5");
  std::size_t best = 0;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (a != b) best = std::max(best, gamma_membership_count(g, a, b));
  EXPECT_EQ(max_gamma_membership(g), best);
}

TEST(CommonEdgeSet, Examples) {
  const auto c60 = build_common_edge_set_A(build_group("cyclic:60"), 0.5);
  EXPECT_GE(c60.members.size(), 8u);
  EXPECT_TRUE(c60.meets_size_target());
  EXPECT_TRUE(c60.maximal);
  const auto s4 = build_common_edge_set_A(build_group("sym:4"), 0.5);
  EXPECT_GE(s4.members.size(), 5u);
  EXPECT_TRUE(std::find(s4.members.begin(), s4.members.end(), 0u) == s4.members.end());
  EXPECT_THROW(build_common_edge_set_A(build_group("cyclic:301"), 0.5), ParameterError);
  EXPECT_THROW(build_common_edge_set_A(build_group("cyclic:30"), 1.0), ParameterError);
}

TEST(CommonEdgeSet, PairwiseOverlapBelowThreshold) {
  const GroupTable g = build_group("dihedral:10");
  const auto a = build_common_edge_set_A(g, 0.3);
  std::vector<std::set<std::pair<Element, Element>>> edges(g.order());
  for (Element x : a.members) {
    const auto e = build_gamma_x(g, x).edges();
    edges[x] = {e.begin(), e.end()};
  }
  for (Element x : a.members)
    for (Element y : a.members) {
      if (x >= y) continue;
      std::size_t common = 0;
      for (const auto& e : edges[x]) common += edges[y].count(e);
      EXPECT_LE(double(common), a.overlap_threshold);
    }
  // Larger eps lowers the threshold, so the set can only shrink or stay.
  EXPECT_GE(build_common_edge_set_A(g, 0.9).members.size(), 1u);
}

// ---------------------------------------------------------------------------

TEST(Types, ElementaryAbelianAllType1) {
  const GroupTable g = build_group("z2^:4");
  for (Element x = 1; x < 16; ++x) {
    const auto tp = classify_types(g, x);
    EXPECT_EQ(tp.counts[0], 14u);
    EXPECT_TRUE(partition_is_disjoint_cover(tp));
  }
}

TEST(Types, OddCyclicUniqueSquareRoot) {
  for (int n : {5, 7, 9, 15}) {
    const GroupTable g = build_group("cyclic:" + std::to_string(n));
    for (Element x = 1; x < g.order(); ++x)
      EXPECT_EQ(classify_types(g, x).counts[static_cast<int>(VertexType::T3)], 1u) << n << " " << x;
  }
  const auto tp = classify_types(build_group("cyclic:5"), 1);
  EXPECT_TRUE(tp.is(3, VertexType::T3));
}

TEST(Types, DefinitionsAndCover) {
  for (const auto& s : small_battery()) {
    const GroupTable g = build_group(s);
    for (Element x = 1; x < g.order(); ++x) {
      const auto tp = classify_types(g, x);
      EXPECT_TRUE(partition_is_disjoint_cover(tp)) << s;
      EXPECT_TRUE(tp.overlaps.empty());
      for (Element y = 0; y < g.order(); ++y) {
        if (y == 0 || y == x) {
          EXPECT_FALSE(tp.label[y].has_value());
          continue;
        }
        const bool inv = g.inv(y) == y;
        const bool bal = g.mul(x, g.inv(y)) == g.mul(y, g.inv(x));
        const bool root = g.mul(y, y) == x;
        VertexType want = VertexType::T4;
        if (inv && bal) want = VertexType::T1;
        else if (inv) want = VertexType::T2a;
        else if (bal) want = VertexType::T2b;
        else if (root) want = VertexType::T3;
        EXPECT_EQ(*tp.label[y], want) << s << " x=" << x << " y=" << y;
      }
    }
  }
}

TEST(HGraph, MatchesSharedWitnessOracle) {
  for (const auto& s : small_battery()) {
    const GroupTable g = build_group(s);
    const std::size_t n = g.order();
    for (Element x = 1; x < n; ++x) {
      const auto h = build_H(g, x);
      const auto tp = classify_types(g, x);
      EXPECT_LE(h.max_degree(), 6u);
      EXPECT_TRUE(h.symmetric());
      for (Element y = 1; y < n; ++y) {
        if (y == x) continue;
        const auto wy = witnesses(g, x, y);
        std::vector<Element> want;
        for (Element z = 1; z < n; ++z) {
          if (z == x || z == y) continue;
          const auto wz = witnesses(g, x, z);
          if (std::any_of(wz.begin(), wz.end(), [&](Element e) { return wy.count(e) > 0; })) want.push_back(z);
        }
        EXPECT_EQ(h.neighbors[y], want) << s << " x=" << x << " y=" << y;
        EXPECT_EQ(predicted_h_neighbors(g, x, y, *tp.label[y]), h.neighbors[y]) << s << " x=" << x << " y=" << y;
        if (tp.is(y, VertexType::T3)) EXPECT_LE(h.neighbors[y].size(), 2u);
      }
    }
  }
}

TEST(HGraph, Cyclic7) {
  const auto h = build_H(build_group("cyclic:7"), 1);
  EXPECT_LE(h.max_degree(), 6u);
  EXPECT_TRUE(h.neighbors[0].empty());
  EXPECT_TRUE(h.neighbors[1].empty());
}

TEST(Claims, OneTwoThreeOnSmallBattery) {
  for (const auto& s : small_battery()) {
    const GroupTable g = build_group(s);
    for (Element x = 1; x < g.order(); ++x) {
      EXPECT_TRUE(verify_claim1(g, x)) << s << " " << x;
      const auto c2 = verify_claim2(g, x);
      EXPECT_TRUE(c2.four_colourable) << s << " " << x;
      EXPECT_FALSE(c2.has_k5);
      const auto b = build_B_partition(g, x);
      EXPECT_TRUE(b.claim3_holds()) << s << " " << x << " lhs " << b.lhs;
      EXPECT_TRUE(b.independent);
      EXPECT_TRUE(b.maximal);
    }
  }
}

TEST(Claims, ColouringIsProper) {
  const GroupTable g = build_group("dihedral:8");
  for (Element x = 1; x < g.order(); ++x) {
    const auto tp = classify_types(g, x);
    const auto h = build_H(g, x);
    const auto c2 = verify_claim2(tp, h);
    ASSERT_TRUE(c2.four_colourable);
    ASSERT_EQ(c2.colouring.size(), c2.members.size());
    for (std::size_t i = 0; i < c2.members.size(); ++i)
      for (std::size_t j = 0; j < c2.members.size(); ++j)
        if (i != j && h.adjacent(c2.members[i], c2.members[j])) EXPECT_NE(c2.colouring[i], c2.colouring[j]);
    EXPECT_FALSE(c2.has_k5);
  }
}

TEST(Claims, CliqueSearchFindsPlantedClique) {
  // K5 on 0..4 inside a 7-vertex graph.
  std::vector<std::vector<Element>> adj(7);
  for (Element a = 0; a < 5; ++a)
    for (Element b = 0; b < 5; ++b)
      if (a != b) adj[a].push_back(b);
  adj[5] = {6};
  adj[6] = {5};
  std::vector<Element> all = {0, 1, 2, 3, 4, 5, 6};
  std::vector<bool> in(7, true);
  EXPECT_TRUE(detail::has_clique_of_size(all, adj, 5, in));
  EXPECT_FALSE(detail::has_clique_of_size(all, adj, 6, in));
  EXPECT_FALSE(detail::colour_induced(all, adj, 4).has_value());
  EXPECT_TRUE(detail::colour_induced(all, adj, 5).has_value());
}

TEST(BPartition, Examples) {
  const auto z = build_B_partition(build_group("z2^:4"), 3);
  EXPECT_EQ(z.b1.size(), 14u);
  EXPECT_TRUE(z.b2.empty() && z.b3.empty() && z.b4.empty());
  EXPECT_EQ(z.lhs, z.rhs);

  const auto c9 = build_B_partition(build_group("cyclic:9"), 1);
  // Odd order: no involutions, so no T1/T2a; T3 = {5}.
  EXPECT_TRUE(c9.b1.empty());
  EXPECT_EQ(c9.b3, std::vector<Element>{5});
  EXPECT_GE(c9.lhs, c9.rhs);
  EXPECT_THROW(build_B_partition(build_group("cyclic:9"), 0), ParameterError);
}

// ---------------------------------------------------------------------------

namespace {

cpp_rational subset_enumeration(unsigned k, const cpp_rational& p) {
  cpp_rational total = 0;
  const cpp_rational q = 1 - p;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    bool ok = true;
    if (k >= 2)
      for (unsigned i = 0; i < k && ok; ++i) {
        const unsigned j = (i + 1) % k;
        if (i != j && ((mask >> i) & 1u) && ((mask >> j) & 1u)) ok = false;
      }
    if (!ok) continue;
    cpp_rational w = 1;
    for (unsigned i = 0; i < k; ++i) w *= ((mask >> i) & 1u) ? p : q;
    total += w;
  }
  return total;
}

}  // namespace

TEST(CycleProb, Examples) {
  EXPECT_DOUBLE_EQ(cycle_no_adjacent_prob(2, 0.5), 0.75);
  EXPECT_DOUBLE_EQ(cycle_no_adjacent_prob(3, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(cycle_no_adjacent_prob(4, 0.5), 7.0 / 16);
  EXPECT_EQ(cycle_no_adjacent_prob_exact(4, cpp_rational(1, 2)), cpp_rational(7, 16));
  EXPECT_DOUBLE_EQ(cycle_no_adjacent_prob(1, 0.3), 1.0);
  EXPECT_THROW(cycle_no_adjacent_prob(0, 0.3), ParameterError);
}

TEST(CycleProb, ExactMatchesSubsetEnumeration) {
  for (const cpp_rational& p : {cpp_rational(1, 2), cpp_rational(1, 3), cpp_rational(2, 7), cpp_rational(1, 10)})
    for (unsigned k = 2; k <= 12; ++k) EXPECT_EQ(cycle_no_adjacent_prob_exact(k, p), subset_enumeration(k, p)) << k;
}

TEST(CycleProb, BelowComponentBound) {
  for (unsigned k = 2; k <= 40; ++k)
    for (int i = 1; i <= 10; ++i) {
      const double p = 0.05 * i;
      EXPECT_LE(cycle_no_adjacent_prob(k, p), cycle_component_bound(k, p) * (1 + 1e-12)) << k << " " << p;
    }
}

// ---------------------------------------------------------------------------

TEST(SSet, ElementaryAbelianEmpty) {
  const GroupTable g = build_group("z2^:4");
  for (Element x = 1; x < 16; ++x) EXPECT_TRUE(build_S_set(g, x).empty());
}

TEST(SSet, OddCyclicLarge) {
  for (int n : {7, 11, 21, 45}) {
    const GroupTable g = build_group("cyclic:" + std::to_string(n));
    for (Element x = 1; x < g.order(); ++x) EXPECT_GE(build_S_set(g, x).size() + 6, g.order()) << n;
  }
}

TEST(SSet, Sym4ByPermutations) {
  const GroupTable g = build_group("sym:4");
  const auto* codec = g.permutation_codec();
  const Element x = element_of(g, {1, 0, 2, 3});
  const auto px = codec->unrank(x);
  const auto bad = std::set<std::uint32_t>{codec->rank(codec->identity()), x, codec->rank(codec->inverse(px)),
                                           codec->rank(codec->compose(px, px))};
  std::vector<Element> want;
  for (Element y = 0; y < 24; ++y) {
    const auto py = codec->unrank(y);
    const auto w = codec->compose(codec->inverse(py), px);
    if (!bad.count(codec->rank(codec->compose(py, py))) && !bad.count(codec->rank(codec->compose(w, w))))
      want.push_back(y);
  }
  EXPECT_EQ(build_S_set(g, x), want);
}

TEST(SSet, SizeFloor) {
  for (const auto& s : small_battery()) {
    const GroupTable g = build_group(s);
    for (Element x = 1; x < g.order(); ++x) EXPECT_GE(double(build_S_set(g, x).size()), s_set_size_floor(g));
  }
}

TEST(EquivClasses, Partition) {
  const GroupTable g = build_group("dihedral:7");
  const EquivClassIndex eq(g);
  for (Element y = 0; y < g.order(); ++y) {
    EXPECT_EQ(eq.class_of[y], eq.class_of[g.inv(y)]);
    EXPECT_EQ(eq.class_size[eq.class_of[y]], g.inv(y) == y ? 1 : 2);
  }
  std::size_t total = 0;
  for (auto s : eq.class_size) total += s;
  EXPECT_EQ(total, g.order());
}

namespace {

// Direct reading of the exclusion rules over an arbitrary pair.
bool rule_conflict(const GroupTable& g, Element x, Element i, Element j) {
  auto one = [&](Element a, Element b) {
    const Element ai = g.inv(a);
    if (g.mul(x, x) == 0 && b == g.mul(a, x)) return true;
    if (g.mul(a, x) == g.mul(x, a) && b == g.mul(x, ai)) return true;
    if (g.mul(g.mul(ai, x), a) == g.inv(x) && b == ai) return true;
    return false;
  };
  return one(i, j) || one(j, i);
}

}  // namespace

TEST(ISet, ConditionsMaximalityAndBounds) {
  for (const auto& s : small_battery()) {
    const GroupTable g = build_group(s);
    for (Element x = 1; x < g.order(); ++x) {
      const ISet is = build_I_set(g, x);
      const auto S = build_S_set(g, x);
      std::set<Element> in(is.members.begin(), is.members.end());
      for (Element i : is.members) {
        EXPECT_TRUE(std::binary_search(S.begin(), S.end(), i));
        for (Element j : is.members)
          if (i != j) EXPECT_FALSE(rule_conflict(g, x, i, j)) << s << " x=" << x << " " << i << "," << j;
      }
      for (Element i : S) {
        if (in.count(i)) continue;
        EXPECT_TRUE(std::any_of(is.members.begin(), is.members.end(), [&](Element j) { return rule_conflict(g, x, i, j); }))
            << s << " x=" << x << " i=" << i << " could be added";
      }
      EXPECT_TRUE(is.conditions_hold);
      EXPECT_TRUE(is.maximal);
      EXPECT_TRUE(is.meets_lower_bound()) << s << " x=" << x;
    }
  }
}

TEST(ISet, OddCyclicHalf) {
  for (int n : {11, 21, 35}) {
    const GroupTable g = build_group("cyclic:" + std::to_string(n));
    for (Element x = 1; x < g.order(); ++x) {
      const ISet is = build_I_set(g, x);
      EXPECT_GE(2 * is.members.size(), is.s_size);
      EXPECT_GE(2.0 * double(is.members.size()), double(n) - 6.0);
    }
  }
  EXPECT_TRUE(build_I_set(build_group("z2^:3"), 5).members.empty());
}

TEST(ISet, CaseNumbers) {
  const GroupTable g = build_group("sym:4");
  const Element transposition = element_of(g, {1, 0, 2, 3});
  const Element three_cycle = element_of(g, {1, 2, 0, 3});
  // cl((12)) = 6 <= 10, cl((123)) = 8 <= 10 at eps = 0.1; both small.
  EXPECT_EQ(build_I_set(g, transposition, 0.1).case_number, 4);
  EXPECT_EQ(build_I_set(g, three_cycle, 0.1).case_number, 3);
  EXPECT_EQ(build_I_set(g, transposition, 0.2).case_number, 2);
  EXPECT_EQ(build_I_set(g, three_cycle, 0.2).case_number, 1);
}

TEST(UnionSize, BruteForceOracle) {
  for (const char* s : {"cyclic:11", "sym:4", "dihedral:7", "prod:cyclic:3,sym:3"}) {
    const GroupTable g = build_group(s);
    for (Element x = 1; x < g.order(); ++x) {
      const ISet is = build_I_set(g, x);
      auto F = [&](Element i) {
        std::set<Element> cls;
        for (Element e : {i, g.mul(x, g.inv(i))}) cls.insert(std::min(e, g.inv(e)));
        return cls;
      };
      std::size_t pairs = 0, bad = 0;
      for (Element i : is.members)
        for (Element j : is.members) {
          if (i == j) continue;
          const auto fi = F(i), fj = F(j);
          std::set<Element> u(fi.begin(), fi.end());
          u.insert(fj.begin(), fj.end());
          if (u.size() == fi.size() + fj.size()) continue;
          ++pairs;
          bad += u.size() != 3;
        }
      const auto r = verify_union_size_3(g, x, is.members);
      EXPECT_EQ(r.intersecting_pairs, pairs) << s << " x=" << x;
      EXPECT_EQ(r.union_violations, bad);
      EXPECT_TRUE(r.clean()) << s << " x=" << x;
    }
  }
}

TEST(UnionSize, CyclicOnlyFirstTwoCases) {
  const GroupTable g = build_group("cyclic:11");
  for (Element x = 1; x < 11; ++x) {
    const auto r = verify_union_size_3(g, x, build_I_set(g, x).members);
    EXPECT_TRUE(r.clean());
  }
  EXPECT_EQ(verify_union_size_3(g, 1, {}).intersecting_pairs, 0u);
  EXPECT_EQ(verify_union_size_3(g, 1, {4}).intersecting_pairs, 0u);
}

TEST(FRelations, HoldOnBattery) {
  for (const auto& s : small_battery()) {
    const GroupTable g = build_group(s);
    for (Element x = 1; x < g.order(); ++x) EXPECT_EQ(verify_f_relations(g, x).violations, 0u) << s << " x=" << x;
  }
  // In abelian groups every i commutes with x, so F_i = F_{x i^-1} is checked for all of S.
  const GroupTable c = build_group("cyclic:13");
  for (Element x = 1; x < 13; ++x) EXPECT_EQ(verify_f_relations(c, x).checked, build_S_set(c, x).size());
}

// ---------------------------------------------------------------------------

TEST(LatinGamma, CoincidesWithGroupGamma) {
  const GroupTable g = build_group("cyclic:8");
  const LatinSquare l = latin_from_group(g);
  for (Element x = 1; x < 8; ++x) EXPECT_EQ(build_latin_gamma_x(l, x).neighbors, build_gamma_x(g, x).neighbors);
  const GroupTable s = build_group("sym:3");
  const LatinSquare ls = latin_from_group(s);
  for (Element x = 1; x < 6; ++x) EXPECT_EQ(build_latin_gamma_x(ls, x).neighbors, build_gamma_x(s, x).neighbors);
}

TEST(LatinGamma, RandomSquareDegrees) {
  RngStream rng(10);
  const LatinSquare l = random_latin_square(10, rng);
  for (std::size_t x = 1; x < 10; ++x) {
    const GammaX gx = build_latin_gamma_x(l, x);
    EXPECT_GE(gx.min_degree(), 1u);
    EXPECT_LE(gx.max_degree(), 8u);
  }
  for (Element i = 0; i < 10; ++i)
    for (Element j = 0; j < 10; ++j)
      if (i != j) EXPECT_LE(latin_gamma_membership_count(l, i, j), 8u);
  EXPECT_THROW(build_latin_gamma_x(l, 0), ParameterError);
}

namespace {

std::size_t brute_dependency_degree(const LatinSquare& l, std::size_t x, std::size_t y) {
  const std::size_t n = l.order();
  auto sym = [&](std::size_t z) {
    return std::set<LatinSquare::Symbol>{l.at(x, z), l.at(z, x), l.at(y, z), l.at(z, y)};
  };
  std::size_t best = 0;
  for (std::size_t z = 0; z < n; ++z) {
    if (z == x || z == y) continue;
    std::size_t d = 0;
    const auto sz = sym(z);
    for (std::size_t w = 0; w < n; ++w) {
      if (w == x || w == y || w == z) continue;
      const auto sw = sym(w);
      d += std::any_of(sw.begin(), sw.end(), [&](auto s) { return sz.count(s) > 0; });
    }
    best = std::max(best, d);
  }
  return best;
}

}  // namespace

TEST(LatinDependency, MatchesBruteForce) {
  RngStream rng(12);
  const LatinSquare l = random_latin_square(9, rng);
  for (std::size_t x = 0; x < 9; ++x)
    for (std::size_t y = 0; y < 9; ++y)
      if (x != y) {
        EXPECT_EQ(latin_dependency_degree(l, x, y), brute_dependency_degree(l, x, y));
        EXPECT_LE(latin_dependency_degree(l, x, y), 12u);
      }
  EXPECT_THROW(latin_dependency_degree(l, 2, 2), ParameterError);
}

TEST(LatinDependency, CyclicSixAndSmallOrders) {
  const LatinSquare c6 = LatinSquare::cyclic(6);
  for (std::size_t x = 0; x < 6; ++x)
    for (std::size_t y = x + 1; y < 6; ++y) EXPECT_LE(latin_dependency_degree(c6, x, y), 12u);
  const LatinSquare c3 = LatinSquare::cyclic(3);
  EXPECT_EQ(latin_dependency_degree(c3, 0, 1), 0u);
  // Every Latin square of order 4, every pair.
  std::vector<LatinSquare::Symbol> cells(16);
  std::size_t squares = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == 16) {
      const LatinSquare l(4, cells);
      ++squares;
      for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = x + 1; y < 4; ++y) EXPECT_LE(latin_dependency_degree(l, x, y), 1u);
      return;
    }
    const std::size_t r = pos / 4, c = pos % 4;
    for (LatinSquare::Symbol s = 0; s < 4; ++s) {
      bool ok = true;
      for (std::size_t k = 0; k < c && ok; ++k) ok = cells[r * 4 + k] != s;
      for (std::size_t k = 0; k < r && ok; ++k) ok = cells[k * 4 + c] != s;
      if (!ok) continue;
      cells[pos] = s;
      rec(pos + 1);
    }
  };
  rec(0);
  EXPECT_EQ(squares, 576u);
}
