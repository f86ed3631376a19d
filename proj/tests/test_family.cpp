#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <cayleylab/family.hpp>

using namespace cayleylab;

TEST(ParseFamily, RoundTrip) {
  for (const char* s : {"cyclic:5", "z2^:6", "dihedral:12", "sym:5", "prod:cyclic:3,sym:4", "prod:prod:cyclic:2,cyclic:2,z2^:3",
                        "file:some/path.tbl"})
    EXPECT_EQ(parse_family(s).to_string(), s);
}

TEST(ParseFamily, ExpectedOrders) {
  EXPECT_EQ(parse_family("cyclic:5").expected_order(), 5u);
  EXPECT_EQ(parse_family("z2^:6").expected_order(), 64u);
  EXPECT_EQ(parse_family("dihedral:12").expected_order(), 24u);
  EXPECT_EQ(parse_family("sym:5").expected_order(), 120u);
  EXPECT_EQ(parse_family("prod:cyclic:3,sym:4").expected_order(), 72u);
}

TEST(ParseFamily, Rejects) {
  for (const char* s : {"", "cyclic", "cyclic:", "cyclic:0", "cyclic:-3", "cyclic:abc", "foo:3", "prod:cyclic:3", "file:",
                        "sym:x"})
    EXPECT_THROW(parse_family(s), ParameterError) << s;
}

TEST(BuildGroup, OrdersMatch) {
  for (const char* s : {"cyclic:1", "cyclic:17", "z2^:5", "dihedral:1", "dihedral:7", "sym:1", "sym:4",
                        "prod:cyclic:3,sym:3", "prod:cyclic:2,cyclic:4"}) {
    const auto spec = parse_family(s);
    EXPECT_EQ(build_group(spec).order(), spec.expected_order()) << s;
  }
}

TEST(BuildGroup, LimitsEnforced) {
  EXPECT_THROW(build_group("cyclic:10001"), ParameterError);
  EXPECT_THROW(build_group("sym:11"), ParameterError);
  EXPECT_NO_THROW(build_group("cyclic:10000"));
  EXPECT_EQ(build_group("sym:8").backing(), Backing::permutation);
  EXPECT_EQ(build_group("sym:7").backing(), Backing::dense_table);
}

TEST(BuildGroup, ProductIndexing) {
  const GroupTable g = build_group("prod:cyclic:2,cyclic:4");
  // (a,b) -> 4a + b, componentwise addition.
  for (Element x = 0; x < 8; ++x)
    for (Element y = 0; y < 8; ++y) EXPECT_EQ(g.mul(x, y), ((x / 4 + y / 4) % 2) * 4 + (x % 4 + y % 4) % 4);
}

TEST(BuildGroup, DihedralRelations) {
  const std::size_t m = 7;
  const GroupTable g = build_group("dihedral:7");
  const Element r = 1, s = static_cast<Element>(m);
  Element rk = 0;
  for (std::size_t k = 0; k < m; ++k) rk = g.mul(rk, r);
  EXPECT_EQ(rk, 0u);
  EXPECT_EQ(g.mul(s, s), 0u);
  // s r s = r^-1
  EXPECT_EQ(g.mul(g.mul(s, r), s), g.inv(r));
}

namespace {
std::string tmp_path(const char* name) { return ::testing::TempDir() + name; }
}  // namespace

TEST(TableFile, RoundTrip) {
  const GroupTable g = build_group("dihedral:4");
  const std::string path = tmp_path("d4.tbl");
  {
    std::ofstream out(path);
    write_group_table(out, g);
  }
  const GroupTable h = build_group("file:" + path);
  ASSERT_EQ(h.order(), g.order());
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) EXPECT_EQ(h.mul(a, b), g.mul(a, b));
  std::remove(path.c_str());
}

TEST(TableFile, RelabelsIdentity) {
  // Z_3 written with 2 as the identity.
  std::istringstream in("3\n1 2 0\n2 0 1\n0 1 2\n");
  const GroupTable g = parse_group_table(in, "z3");
  EXPECT_EQ(g.order(), 3u);
  for (Element x = 0; x < 3; ++x) {
    EXPECT_EQ(g.mul(0, x), x);
    EXPECT_EQ(g.mul(x, 0), x);
  }
  EXPECT_EQ(g.label(0), "2");
  EXPECT_EQ(g.label(2), "0");
}

namespace {
std::string axiom_of(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_group_table(in, "t");
  } catch (const ValidationError& e) {
    return e.axiom();
  }
  return "none";
}
}  // namespace

TEST(TableFile, NamesViolatedAxiom) {
  EXPECT_EQ(axiom_of("2\n0 1\n1\n"), "table-shape");
  EXPECT_EQ(axiom_of("2\n0 1\n1 5\n"), "closure");
  EXPECT_EQ(axiom_of("3\n0 1 2\n1 1 0\n2 0 1\n"), "latin-rows");
  EXPECT_EQ(axiom_of("3\n0 1 2\n1 2 0\n1 0 2\n"), "latin-columns");
  EXPECT_EQ(axiom_of("3\n1 2 0\n0 1 2\n2 0 1\n"), "identity");
  EXPECT_EQ(axiom_of("5\n0 1 2 3 4\n1 4 0 2 3\n2 3 1 4 0\n3 0 4 1 2\n4 2 3 0 1\n"), "associativity");
  EXPECT_EQ(axiom_of("2\n0 1\n1 0\n"), "none");
}

TEST(TableFile, MissingFile) { EXPECT_THROW(build_group("file:/nonexistent/x.tbl"), ParameterError); }
