#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <cayleylab/family.hpp>
#include <cayleylab/group.hpp>

using namespace cayleylab;

namespace {

// Number of integer partitions of m (= conjugacy classes of S_m).
std::size_t partitions(int m) {
  std::vector<std::size_t> p(m + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= m; ++part)
    for (int s = part; s <= m; ++s) p[s] += p[s - part];
  return p[m];
}

// Brute-force conjugacy class sizes by orbit computation over all z.
std::vector<std::size_t> brute_class_sizes(const GroupTable& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> size(n);
  for (Element x = 0; x < n; ++x) {
    std::set<Element> orbit;
    for (Element z = 0; z < n; ++z) orbit.insert(g.mul(g.mul(g.inv(z), x), z));
    size[x] = orbit.size();
  }
  return size;
}

// Count permutations of m points with p o p = id by std::next_permutation.
std::uint64_t brute_square_to_identity(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int k = 0; k < m && ok; ++k) ok = p[p[k]] == k;
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace

TEST(Group, InverseAndIdentity) {
  for (const char* s : {"cyclic:9", "z2^:4", "dihedral:6", "sym:4", "prod:cyclic:3,sym:3"}) {
    const GroupTable g = build_group(s);
    for (Element x = 0; x < g.order(); ++x) {
      EXPECT_EQ(g.mul(x, g.inv(x)), GroupTable::identity()) << s;
      EXPECT_EQ(g.mul(g.inv(x), x), GroupTable::identity()) << s;
      EXPECT_EQ(g.mul(GroupTable::identity(), x), x) << s;
    }
  }
}

TEST(Group, Abelian) {
  EXPECT_TRUE(build_group("cyclic:12").is_abelian());
  EXPECT_TRUE(build_group("z2^:5").is_abelian());
  EXPECT_TRUE(build_group("dihedral:2").is_abelian());
  EXPECT_FALSE(build_group("dihedral:3").is_abelian());
  EXPECT_FALSE(build_group("sym:3").is_abelian());
}

TEST(Conjugacy, MatchesBruteForceOrbits) {
  for (const char* s : {"cyclic:10", "dihedral:5", "dihedral:8", "sym:4", "prod:cyclic:3,sym:3", "sym:5"}) {
    const GroupTable g = build_group(s);
    const auto sizes = brute_class_sizes(g);
    const auto& c = g.conjugacy();
    std::size_t total = 0;
    for (auto s2 : c.class_size) total += s2;
    EXPECT_EQ(total, g.order());
    for (Element x = 0; x < g.order(); ++x) EXPECT_EQ(c.class_size_of(x), sizes[x]) << s << " x=" << x;
    for (Element x = 0; x < g.order(); ++x)
      for (Element z = 0; z < g.order(); ++z)
        EXPECT_EQ(c.class_of[x], c.class_of[g.mul(g.mul(g.inv(z), x), z)]);
  }
}

TEST(Conjugacy, ClassCounts) {
  EXPECT_EQ(build_group("cyclic:7").num_classes(), 7u);
  EXPECT_EQ(build_group("z2^:4").num_classes(), 16u);
  // D_m: (m+3)/2 classes for odd m, (m+6)/2 for even m.
  for (int m = 3; m <= 16; ++m)
    EXPECT_EQ(build_group("dihedral:" + std::to_string(m)).num_classes(),
              static_cast<std::size_t>(m % 2 ? (m + 3) / 2 : (m + 6) / 2))
        << m;
  for (int m = 1; m <= 7; ++m) EXPECT_EQ(build_group("sym:" + std::to_string(m)).num_classes(), partitions(m)) << m;
}

TEST(Conjugacy, PermutationBacked) {
  const GroupTable g = build_group("sym:8");
  ASSERT_EQ(g.backing(), Backing::permutation);
  EXPECT_EQ(g.order(), 40320u);
  EXPECT_EQ(g.num_classes(), partitions(8));
  // Transpositions form a class of size 28.
  const auto* codec = g.permutation_codec();
  auto t = codec->identity();
  std::swap(t[0], t[1]);
  EXPECT_EQ(g.conjugacy().class_size_of(codec->rank(t)), 28u);
}

TEST(Conjugacy, DenseAndPermutationSymmetricAgree) {
  const GroupTable dense = build_group("sym:5");
  const GroupTable perm = GroupTable::symmetric_permutation_backed(5);
  ASSERT_EQ(dense.order(), perm.order());
  for (Element a = 0; a < 120; ++a) {
    EXPECT_EQ(dense.inv(a), perm.inv(a));
    for (Element b = 0; b < 120; b += 7) EXPECT_EQ(dense.mul(a, b), perm.mul(a, b));
  }
  EXPECT_EQ(dense.num_classes(), perm.num_classes());
  for (Element a = 0; a < 120; ++a)
    EXPECT_EQ(dense.conjugacy().class_size_of(a), perm.conjugacy().class_size_of(a));
}

TEST(Codec, RankUnrankAndComposition) {
  const PermutationCodec c(5);
  for (std::uint32_t r = 0; r < 120; ++r) EXPECT_EQ(c.rank(c.unrank(r)), r);
  EXPECT_EQ(c.rank(c.identity()), 0u);
  // Lexicographic order: rank 1 swaps the last two points.
  EXPECT_EQ(c.cycle_string(c.unrank(1)), "(4 5)");
  // (a*b)[k] = a[b[k]]: apply b first.
  auto a = c.identity(), b = c.identity();
  std::swap(a[0], a[1]);  // (1 2)
  std::swap(b[1], b[2]);  // (2 3)
  const auto ab = c.compose(a, b);
  EXPECT_EQ(ab[0], 1);
  EXPECT_EQ(ab[1], 2);
  EXPECT_EQ(ab[2], 0);
  EXPECT_EQ(c.cycle_string(ab), "(1 2 3)");
}

TEST(Counts, Sym5) {
  const GroupTable g = build_group("sym:5");
  EXPECT_EQ(g.order(), 120u);
  EXPECT_EQ(g.num_classes(), 7u);
  EXPECT_EQ(involution_count(g), 25u);
  EXPECT_EQ(involution_count(g, true), 26u);
  EXPECT_EQ(involution_count(build_group("cyclic:7")), 0u);
  EXPECT_EQ(involution_count(build_group("z2^:4")), 15u);
}

TEST(Counts, CentralizerAndInvertingIdentities) {
  for (const char* s : {"cyclic:12", "dihedral:6", "dihedral:7", "sym:4", "prod:cyclic:3,sym:3", "z2^:3"}) {
    const GroupTable g = build_group(s);
    const std::size_t n = g.order();
    for (Element x = 0; x < n; ++x) {
      const std::size_t cl = g.conjugacy().class_size_of(x);
      EXPECT_EQ(centralizer_count(g, x) * cl, n) << s << " x=" << x;
      const std::size_t inv = inverting_count(g, x);
      EXPECT_TRUE(inv == 0 || inv * cl == n) << s << " x=" << x << " inv=" << inv;
    }
  }
}

TEST(Counts, SquareRootsBrute) {
  const GroupTable g = build_group("dihedral:6");
  std::map<Element, std::size_t> roots;
  for (Element y = 0; y < g.order(); ++y) ++roots[g.mul(y, y)];
  for (Element x = 0; x < g.order(); ++x) EXPECT_EQ(square_root_count(g, x), roots[x]);
  // Identity in D_6: r^0, r^3 and the six reflections.
  EXPECT_EQ(square_root_count(g, 0), 8u);
}

TEST(Counts, SquareRootBound) {
  for (const char* s : {"cyclic:16", "z2^:5", "dihedral:9", "dihedral:10", "sym:4", "sym:5"}) {
    const GroupTable g = build_group(s);
    std::size_t best = 0;
    for (Element x = 0; x < g.order(); ++x) best = std::max(best, square_root_count(g, x));
    EXPECT_LE(best, std::sqrt(double(g.order()) * double(g.num_classes())) + 1e-9) << s;
  }
}

TEST(InvolutionSeries, MatchesBruteForce) {
  const auto series = involution_series(8);
  ASSERT_EQ(series.terms.size(), 8u);
  for (int m = 1; m <= 8; ++m) {
    EXPECT_EQ(series.terms[m - 1], brute_square_to_identity(m)) << m;
    EXPECT_TRUE(series.within_bound[m - 1]);
  }
  // With the identity excluded, the count for S_5 is a_5 - 1.
  EXPECT_EQ(involution_count(build_group("sym:5")) + 1, series.terms[4]);
}

TEST(InvolutionSeries, BoundHoldsToTwenty) {
  const auto s = involution_series(20);
  for (unsigned k = 1; k <= 20; ++k) {
    EXPECT_TRUE(s.within_bound[k - 1]);
    EXPECT_LE(std::log(double(s.terms[k - 1])), k * std::log(2.0) + 0.5 * std::lgamma(k + 1.0));
  }
  EXPECT_EQ(s.terms[19], 23758664096ull);
  EXPECT_THROW(involution_series(0), ParameterError);
  EXPECT_THROW(involution_series(21), ParameterError);
}

TEST(SmallClassHypotheses, Sym5) {
  const auto r = check_small_class_hypotheses(build_group("sym:5"), 0.1);
  EXPECT_EQ(r.involutions.count, 25u);
  // cl(x) <= 10: the identity and the ten transpositions.
  EXPECT_EQ(r.small_class_elements.count, 11u);
  EXPECT_EQ(r.small_class_involutions.count, 10u);
  EXPECT_NEAR(r.involutions.reference, std::pow(120.0, 0.55), 1e-9);
  EXPECT_NEAR(r.small_class_involutions.reference, std::pow(120.0, 0.275), 1e-9);
  EXPECT_THROW(check_small_class_hypotheses(build_group("sym:3"), 0.25), ParameterError);
  EXPECT_THROW(check_small_class_hypotheses(build_group("sym:3"), 0.0), ParameterError);
}

TEST(SmallClassHypotheses, AbelianAllSmall) {
  const auto r = check_small_class_hypotheses(build_group("cyclic:50"), 0.2);
  EXPECT_EQ(r.small_class_elements.count, 50u);
  EXPECT_EQ(r.involutions.count, 1u);
}
