#pragma once

/**
 * Invariant battery: runs the structural and counting checks over a list of
 * groups (every x != 1) and Latin squares, collecting one record per
 * (subject, x, check). Records carry element indices so a failure can be
 * replayed with the library calls directly.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bounds.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "group.hpp"
#include "latin.hpp"
#include "rng.hpp"
#include "theory.hpp"

namespace cayleylab {

struct LatinSubject {
  std::string name;
  std::size_t order;
  std::uint64_t seed;  // 0 selects the cyclic square

  LatinSquare build() const {
    if (seed == 0) return LatinSquare::cyclic(order);
    RngStream stream(seed, order);
    return random_latin_square(order, stream);
  }
};

struct Battery {
  std::vector<std::string> groups;
  std::vector<LatinSubject> latin;
};

inline Battery default_battery() {
  Battery b;
  for (int n = 5; n <= 64; ++n) b.groups.push_back("cyclic:" + std::to_string(n));
  for (int k = 2; k <= 6; ++k) b.groups.push_back("z2^:" + std::to_string(k));
  for (int m = 3; m <= 16; ++m) b.groups.push_back("dihedral:" + std::to_string(m));
  for (int m = 3; m <= 5; ++m) b.groups.push_back("sym:" + std::to_string(m));
  b.groups.push_back("prod:cyclic:3,sym:3");
  b.groups.push_back("prod:cyclic:2,cyclic:4");
  const std::size_t orders[] = {8, 10, 12, 8, 12};
  for (std::uint64_t i = 0; i < 5; ++i)
    b.latin.push_back({"latin-random:" + std::to_string(orders[i]) + "@" + std::to_string(i + 1), orders[i], i + 1});
  b.latin.push_back({"latin-cyclic:6", 6, 0});
  return b;
}

inline Battery quick_battery() {
  Battery b;
  for (const char* g : {"cyclic:5", "cyclic:12", "z2^:3", "dihedral:4", "dihedral:5", "sym:3", "sym:4",
                        "prod:cyclic:2,cyclic:4"})
    b.groups.emplace_back(g);
  b.latin.push_back({"latin-random:8@1", 8, 1});
  b.latin.push_back({"latin-cyclic:6", 6, 0});
  return b;
}

/// "default", "quick", or family specs separated by ';'.
inline Battery parse_battery(const std::string& selector) {
  if (selector == "default" || selector.empty()) return default_battery();
  if (selector == "quick") return quick_battery();
  Battery b;
  std::stringstream ss(selector);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    parse_family(item);  // reject malformed specs before any work
    b.groups.push_back(item);
  }
  if (b.groups.empty()) throw ParameterError("empty battery selector");
  return b;
}

// Per-(group, x) checks, per-group checks, and Latin-square checks.
inline const std::vector<std::string>& element_checks() {
  static const std::vector<std::string> v = {"partition", "h-graph",     "claim1",      "claim2",
                                             "claim3",    "gamma-degree", "gamma-edges", "s-set",
                                             "i-set",     "union3",       "f-relations", "counts",
                                             "refined-exponent"};
  return v;
}
inline const std::vector<std::string>& group_checks() {
  static const std::vector<std::string> v = {"gamma-membership", "sqrt-bound", "common-edges"};
  return v;
}
inline const std::vector<std::string>& latin_checks() {
  static const std::vector<std::string> v = {"latin-gamma", "latin-dependency"};
  return v;
}

inline std::set<std::string> parse_checks(const std::string& selector) {
  std::set<std::string> known;
  for (const auto* list : {&element_checks(), &group_checks(), &latin_checks()}) known.insert(list->begin(), list->end());
  if (selector.empty() || selector == "all") return known;
  std::set<std::string> out;
  std::stringstream ss(selector);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (!known.count(item)) throw ParameterError("unknown check '" + item + "'");
    out.insert(item);
  }
  if (out.empty()) throw ParameterError("empty check selector");
  return out;
}

struct Finding {
  std::string subject;
  std::optional<std::uint64_t> x;
  std::string check;
  bool pass = true;
  nlohmann::json detail;  // counterexample or measured values
};

struct VerifyReport {
  std::vector<Finding> records;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_check;  // check -> (evaluated, failed)

  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& [_, v] : per_check) f += v.second;
    return f;
  }

  void add(Finding f) {
    auto& slot = per_check[f.check];
    ++slot.first;
    if (!f.pass) ++slot.second;
    records.push_back(std::move(f));
  }
};

struct VerifyOptions {
  double common_edge_eps = 0.5;
  double refined_p = 0.2;
};

namespace detail {

inline std::vector<std::uint64_t> as_indices(const std::vector<Element>& v) { return {v.begin(), v.end()}; }

inline void check_element(const GroupTable& G, Element x, const std::set<std::string>& want, VerifyReport& rep,
                          const VerifyOptions& opt) {
  using nlohmann::json;
  const std::string& name = G.name();
  auto on = [&](const char* c) { return want.count(c) > 0; };
  auto add = [&](const char* check, bool pass, json detail) {
    rep.add({name, x, check, pass, std::move(detail)});
  };
  const std::size_t n = G.order();

  const bool need_types = on("partition") || on("h-graph") || on("claim1") || on("claim2");
  std::optional<TypePartition> tp;
  std::optional<DependencyGraphH> h;
  if (need_types) {
    tp = classify_types(G, x);
    h = build_H(G, x);
  }

  if (on("partition")) {
    json d = {{"counts", tp->counts}};
    if (!tp->overlaps.empty()) {
      json o = json::array();
      for (const auto& ov : tp->overlaps) {
        json types = json::array();
        for (auto t : ov.matched) types.push_back(to_string(t));
        o.push_back({{"y", ov.y}, {"types", types}});
      }
      d["overlaps"] = o;
    }
    add("partition", partition_is_disjoint_cover(*tp), d);
  }

  if (on("h-graph")) {
    bool ok = h->max_degree() <= 6 && h->symmetric();
    json d = {{"max_degree", h->max_degree()}, {"symmetric", h->symmetric()}};
    for (Element y = 0; y < n && ok; ++y) {
      if (!tp->label[y]) continue;
      if (predicted_h_neighbors(G, x, y, *tp->label[y]) != h->neighbors[y]) {
        ok = false;
        d["y"] = y;
        d["type"] = to_string(*tp->label[y]);
        d["neighbors"] = as_indices(h->neighbors[y]);
        d["predicted"] = as_indices(predicted_h_neighbors(G, x, y, *tp->label[y]));
      }
    }
    add("h-graph", ok, d);
  }

  if (on("claim1")) {
    json d = json::object();
    bool ok = true;
    for (Element y = 0; y < n && ok; ++y) {
      if (!tp->is(y, VertexType::T1)) continue;
      for (Element z : h->neighbors[y])
        if (!tp->is(z, VertexType::T1)) {
          ok = false;
          d = {{"y", y}, {"z", z}, {"z_type", to_string(tp->label[z].value())}};
          break;
        }
    }
    add("claim1", ok, d);
  }

  if (on("claim2")) {
    const Claim2Result c2 = verify_claim2(*tp, *h);
    add("claim2", c2.four_colourable && !c2.has_k5,
        {{"vertices", c2.vertices}, {"four_colourable", c2.four_colourable}, {"k5", c2.has_k5}});
  }

  if (on("claim3") || on("refined-exponent")) {
    const BPartition b = build_B_partition(G, x);
    const json sizes = {b.b1.size(), b.b2.size(), b.b3.size(), b.b4.size()};
    if (on("claim3"))
      add("claim3", b.claim3_holds() && b.independent && b.maximal,
          {{"b", sizes}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"independent", b.independent}, {"maximal", b.maximal}});
    if (on("refined-exponent")) {
      const auto r = refined_exponent_bound(static_cast<double>(b.b1.size()), static_cast<double>(b.b2.size()),
                                            static_cast<double>(b.b3.size()), static_cast<double>(b.b4.size()),
                                            opt.refined_p, static_cast<long long>(n));
      add("refined-exponent", r.ordered(),
          {{"b", sizes}, {"p", opt.refined_p}, {"log_intermediate", r.intermediate.log_value},
           {"log_simplified", r.simplified.log_value}});
    }
  }

  if (on("gamma-degree") || on("gamma-edges")) {
    const GammaX gx = build_gamma_x(G, x);
    if (on("gamma-degree")) {
      const std::size_t cap = G.is_abelian() ? 4 : 8;
      bool ok = gx.min_degree() >= 1 && gx.max_degree() <= cap && gx.symmetric();
      json d = {{"min_degree", gx.min_degree()}, {"max_degree", gx.max_degree()}, {"cap", cap}};
      for (Element g = 0; g < n && ok; ++g)
        if (!gx.adjacent(g, G.mul(g, x))) {
          ok = false;
          d["g"] = g;
        }
      add("gamma-degree", ok, d);
    }
    if (on("gamma-edges")) {
      const std::size_t e = gx.edge_count();
      add("gamma-edges", 2 * e >= n && e <= 4 * n, {{"edges", e}, {"n", n}});
    }
  }

  if (on("s-set")) {
    const auto s = build_S_set(G, x);
    const double floor = s_set_size_floor(G);
    add("s-set", static_cast<double>(s.size()) >= floor, {{"size", s.size()}, {"floor", floor}});
  }

  const bool need_i = on("i-set") || on("union3");
  std::optional<ISet> iset;
  if (need_i) iset = build_I_set(G, x);
  if (on("i-set")) {
    add("i-set", iset->conditions_hold && iset->maximal && iset->meets_lower_bound(),
        {{"size", iset->members.size()}, {"s_size", iset->s_size}, {"case", iset->case_number},
         {"lower_bound", iset->lower_bound}, {"conditions_hold", iset->conditions_hold}, {"maximal", iset->maximal}});
  }
  if (on("union3")) {
    const UnionSizeReport u = verify_union_size_3(G, x, iset->members);
    json d = {{"pairs", u.intersecting_pairs}, {"per_case", u.per_case}, {"union_violations", u.union_violations},
              {"candidate_violations", u.candidate_violations}};
    if (!u.counterexamples.empty()) {
      json ce = json::array();
      for (auto [i, j] : u.counterexamples) ce.push_back({i, j});
      d["counterexamples"] = ce;
    }
    add("union3", u.clean(), d);
  }

  if (on("f-relations")) {
    const FRelationReport f = verify_f_relations(G, x);
    json d = {{"checked", f.checked}, {"violations", f.violations}};
    if (!f.counterexamples.empty()) d["i"] = as_indices(f.counterexamples);
    add("f-relations", f.violations == 0, d);
  }

  if (on("counts")) {
    const std::size_t cent = centralizer_count(G, x);
    const std::size_t inv = inverting_count(G, x);
    const std::size_t cl = G.conjugacy().class_size_of(x);
    const bool ok = cent * cl == n && (inv == 0 || inv * cl == n);
    add("counts", ok, {{"centralizer", cent}, {"inverting", inv}, {"class_size", cl}, {"n", n}});
  }
}

inline void check_group(const GroupTable& G, const std::set<std::string>& want, VerifyReport& rep,
                        const VerifyOptions& opt) {
  const std::string& name = G.name();
  const std::size_t n = G.order();
  if (want.count("gamma-membership")) {
    const std::size_t m = max_gamma_membership(G);
    rep.add({name, std::nullopt, "gamma-membership", m <= 8, {{"max_membership", m}}});
  }
  if (want.count("sqrt-bound")) {
    std::size_t best = 0;
    Element arg = 0;
    for (Element x = 0; x < n; ++x) {
      const std::size_t r = square_root_count(G, x);
      if (r > best) {
        best = r;
        arg = x;
      }
    }
    const double bound = std::sqrt(static_cast<double>(n) * static_cast<double>(G.num_classes()));
    rep.add({name, std::nullopt, "sqrt-bound", static_cast<double>(best) <= bound + 1e-9,
             {{"max_square_roots", best}, {"at", arg}, {"bound", bound}}});
  }
  if (want.count("common-edges") && n <= kMaxCommonEdgeOrder) {
    const CommonEdgeSet a = build_common_edge_set_A(G, opt.common_edge_eps);
    rep.add({name, std::nullopt, "common-edges", a.meets_size_target() && a.maximal,
             {{"size", a.members.size()}, {"target", a.size_target}, {"eps", opt.common_edge_eps},
              {"aux_max_degree", a.aux_max_degree}}});
  }
}

inline void check_latin(const LatinSubject& subject, const std::set<std::string>& want, VerifyReport& rep) {
  const LatinSquare l = subject.build();
  const std::size_t n = l.order();
  if (want.count("latin-gamma")) {
    std::vector<std::uint8_t> count(n * n, 0);
    std::size_t worst_membership = 0;
    for (std::size_t x = 1; x < n; ++x) {
      const GammaX gx = build_latin_gamma_x(l, x);
      const bool ok = gx.min_degree() >= 1 && gx.max_degree() <= 8;
      rep.add({subject.name, x, "latin-gamma", ok, {{"min_degree", gx.min_degree()}, {"max_degree", gx.max_degree()}}});
      for (Element i = 0; i < n; ++i)
        for (Element j : gx.neighbors[i])
          if (i != j) worst_membership = std::max<std::size_t>(worst_membership, ++count[i * n + j]);
    }
    rep.add({subject.name, std::nullopt, "latin-gamma", worst_membership <= 8, {{"max_membership", worst_membership}}});
  }
  if (want.count("latin-dependency")) {
    std::size_t worst = 0;
    std::pair<std::size_t, std::size_t> at{0, 0};
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        const std::size_t d = latin_dependency_degree(l, x, y);
        if (d > worst) {
          worst = d;
          at = {x, y};
        }
      }
    rep.add({subject.name, std::nullopt, "latin-dependency", worst <= 12,
             {{"max_degree", worst}, {"pair", {at.first, at.second}}}});
  }
}

}  // namespace detail

inline VerifyReport run_verify(const Battery& battery, const std::set<std::string>& checks,
                               const VerifyOptions& opt = {}) {
  VerifyReport rep;
  std::set<std::string> elem, grp;
  for (const auto& c : element_checks())
    if (checks.count(c)) elem.insert(c);
  for (const auto& c : group_checks())
    if (checks.count(c)) grp.insert(c);
  const bool any_latin = std::any_of(latin_checks().begin(), latin_checks().end(),
                                     [&](const std::string& c) { return checks.count(c) > 0; });
  for (const auto& spec : battery.groups) {
    if (elem.empty() && grp.empty()) break;
    const GroupTable G = build_group(spec);
    if (!elem.empty())
      for (Element x = 1; x < G.order(); ++x) detail::check_element(G, x, elem, rep, opt);
    if (!grp.empty()) detail::check_group(G, grp, rep, opt);
  }
  if (any_latin)
    for (const auto& subject : battery.latin) detail::check_latin(subject, checks, rep);
  return rep;
}

inline nlohmann::json finding_to_json(const Finding& f) {
  nlohmann::json j = {{"group", f.subject}, {"check", f.check}, {"status", f.pass ? "pass" : "fail"}};
  j["x"] = f.x ? nlohmann::json(*f.x) : nlohmann::json(nullptr);
  j[f.pass ? "detail" : "counterexample"] = f.detail;
  return j;
}

inline nlohmann::json report_to_json(const VerifyReport& rep, bool all_records) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& f : rep.records)
    if (all_records || !f.pass) findings.push_back(finding_to_json(f));
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [check, v] : rep.per_check) summary[check] = {{"evaluated", v.first}, {"failed", v.second}};
  return {{"findings", findings}, {"summary", summary}, {"violations", rep.failures()}};
}

}  // namespace cayleylab
