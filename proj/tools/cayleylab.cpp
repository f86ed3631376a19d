// cayleylab: command-line front end.
//
// stdout carries data only (JSON, CSV, edge lists, square text); the
// resolved configuration and all diagnostics go to stderr.
// Exit codes: 0 ok, 1 a verified property failed, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cayleylab/cayleylab.hpp>

namespace {

using namespace cayleylab;
using ojson = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

void echo_config(const std::string& command, const ojson& cfg) {
  std::cerr << "# " << command << " " << cfg.dump() << '\n';
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

unsigned env_workers() {
  if (const char* w = std::getenv("CAYLEYLAB_WORKERS")) {
    try {
      const long v = std::stol(w);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw ParameterError("CAYLEYLAB_WORKERS must be a positive integer");
  }
  return default_workers();
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("config file '" + path + "': " + e.what());
  }
}

// Fill `target` from config key `key` unless the flag was given explicitly.
template <class T>
void from_config(const nlohmann::json& cfg, const char* key, const CLI::Option* flag, T& target) {
  if (!cfg.contains(key) || (flag && flag->count() > 0)) return;
  try {
    target = cfg.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config key '") + key + "': " + e.what());
  }
}

void reject_unknown_keys(const nlohmann::json& cfg, std::initializer_list<const char*> known) {
  if (!cfg.is_object()) throw ParameterError("config file must hold a JSON object");
  for (const auto& [k, _] : cfg.items()) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) throw ParameterError("unknown config key '" + k + "'");
  }
}

// ---------------------------------------------------------------------------

struct GroupInfoArgs {
  std::string spec;
  double eps = 0.0;
};

int run_group_info(const GroupInfoArgs& a) {
  echo_config("group-info", {{"spec", a.spec}, {"eps", a.eps > 0 ? ojson(a.eps) : ojson(nullptr)}});
  const GroupTable g = build_group(a.spec);
  const auto& conj = g.conjugacy();
  std::size_t max_roots = 0;
  for (Element x = 0; x < g.order(); ++x) max_roots = std::max(max_roots, square_root_count(g, x));
  std::map<std::uint32_t, std::size_t> sizes;
  for (auto s : conj.class_size) ++sizes[s];
  ojson hist = ojson::object();
  for (auto [s, c] : sizes) hist[std::to_string(s)] = c;

  ojson out;
  out["group"] = g.name();
  out["order"] = g.order();
  out["backing"] = g.backing() == Backing::dense_table ? "dense" : "permutation";
  out["abelian"] = g.is_abelian();
  out["classes"] = conj.num_classes();
  out["class_sizes"] = hist;
  out["involutions"] = involution_count(g);
  out["max_square_roots"] = max_roots;
  out["sqrt_bound"] = std::sqrt(static_cast<double>(g.order()) * static_cast<double>(conj.num_classes()));
  if (a.eps > 0.0) {
    const SmallClassReport r = check_small_class_hypotheses(g, a.eps);
    auto h = [](const HypothesisCheck& c) {
      return ojson{{"count", c.count}, {"reference", c.reference}, {"within", c.within_reference()}};
    };
    out["hypotheses"] = {{"eps", a.eps},
                         {"involutions", h(r.involutions)},
                         {"small_class_elements", h(r.small_class_elements)},
                         {"small_class_involutions", h(r.small_class_involutions)}};
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string family;
  std::vector<unsigned long> sizes;
  std::vector<double> p, c;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::string model = "cayley";
  unsigned workers = 0;
  bool no_timing = false;
  std::string out;
  CLI::Option *o_family, *o_sizes, *o_p, *o_c, *o_trials, *o_seed, *o_model, *o_workers, *o_no_timing;
};

int run_sweep_cmd(SweepArgs& a) {
  SweepConfig cfg;
  bool have_seed = a.o_seed->count() > 0;
  if (!a.config.empty()) {
    const auto j = read_json_file(a.config);
    reject_unknown_keys(j, {"family", "sizes", "p_values", "c_values", "trials", "master_seed", "model", "workers",
                            "record_timing"});
    from_config(j, "family", a.o_family, a.family);
    from_config(j, "sizes", a.o_sizes, a.sizes);
    from_config(j, "p_values", a.o_p, a.p);
    from_config(j, "c_values", a.o_c, a.c);
    from_config(j, "trials", a.o_trials, a.trials);
    from_config(j, "model", a.o_model, a.model);
    from_config(j, "workers", a.o_workers, a.workers);
    if (j.contains("master_seed") && !have_seed) {
      from_config(j, "master_seed", a.o_seed, a.seed);
      have_seed = true;
    }
    if (j.contains("record_timing") && a.o_no_timing->count() == 0) a.no_timing = !j.at("record_timing").get<bool>();
  }
  if (a.family.empty()) throw ParameterError("sweep needs --family");
  // An explicit flag on one grid axis replaces a config-supplied other axis.
  if (a.o_p->count() > 0 && a.o_c->count() == 0) a.c.clear();
  if (a.o_c->count() > 0 && a.o_p->count() == 0) a.p.clear();
  if (!have_seed) a.seed = fresh_seed();
  cfg.family = a.family;
  cfg.sizes = a.sizes;
  cfg.p_values = a.p;
  cfg.c_values = a.c;
  cfg.trials = a.trials;
  cfg.master_seed = a.seed;
  cfg.model = parse_model(a.model);
  cfg.workers = a.workers ? a.workers : env_workers();
  cfg.record_timing = !a.no_timing;
  cfg.validate();

  echo_config("sweep", {{"family", cfg.family},
                        {"sizes", cfg.sizes},
                        {"p_values", cfg.p_values},
                        {"c_values", cfg.c_values},
                        {"trials", cfg.trials},
                        {"master_seed", cfg.master_seed},
                        {"model", to_string(cfg.model)},
                        {"workers", cfg.workers},
                        {"record_timing", cfg.record_timing}});
  const SweepResult r = run_sweep(cfg);
  if (a.out.empty() || a.out == "-") {
    write_sweep_csv(std::cout, r);
  } else {
    std::ofstream f(a.out);
    if (!f) throw ParameterError("cannot write '" + a.out + "'");
    write_sweep_csv(f, r);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct ThresholdArgs {
  std::vector<std::string> families;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string model = "cayley";
  unsigned workers = 0;
  CLI::Option* o_seed = nullptr;
};

ojson estimate_json(const ThresholdEstimate& e) {
  ojson probes = ojson::array();
  for (const auto& p : e.probes) probes.push_back({{"c", p.c}, {"p", p.p}, {"successes", p.successes}, {"rate", p.rate}});
  return {{"family", e.family},
          {"n", e.n},
          {"c_hat", e.c_hat},
          {"bracket", {e.c_low, e.c_high}},
          {"rates", {e.rate_low, e.rate_high}},
          {"straddles", e.straddles},
          {"log2_convention", {{"c_hat", e.c_hat_log2()}, {"bracket", {e.c_low_log2(), e.c_high_log2()}}}},
          {"trials_per_probe", e.trials_per_probe},
          {"seed", e.master_seed},
          {"note", e.note},
          {"probes", probes}};
}

int run_threshold_cmd(ThresholdArgs& a) {
  if (a.o_seed->count() == 0) a.seed = fresh_seed();
  const unsigned workers = a.workers ? a.workers : env_workers();
  const GraphModel model = parse_model(a.model);
  echo_config("threshold", {{"families", a.families},
                            {"trials_per_probe", a.trials},
                            {"master_seed", a.seed},
                            {"model", a.model},
                            {"workers", workers}});
  std::vector<ThresholdEstimate> est;
  for (const auto& f : a.families) est.push_back(estimate_threshold(f, a.trials, a.seed, workers, model));
  ojson out;
  ojson list = ojson::array();
  for (const auto& e : est) list.push_back(estimate_json(e));
  out["estimates"] = list;
  if (est.size() >= 2) {
    const FamilyComparison cmp = compare_families(est);
    ojson order = ojson::array();
    for (const auto& e : cmp.estimates) order.push_back(e.family);
    out["comparison"] = {{"order_by_c_hat", order},
                         {"ordering_holds", cmp.ordering_holds},
                         {"brackets_disjoint", cmp.brackets_disjoint},
                         {"z2_over_cyclic", cmp.z2_over_cyclic ? ojson(*cmp.z2_over_cyclic) : ojson(nullptr)}};
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string battery = "default";
  std::string checks = "all";
  bool all_records = false;
  double eps = 0.5;
};

int run_verify_cmd(const VerifyArgs& a) {
  const Battery battery = parse_battery(a.battery);
  const auto checks = parse_checks(a.checks);
  echo_config("verify", {{"battery", a.battery}, {"checks", std::vector<std::string>(checks.begin(), checks.end())},
                         {"common_edge_eps", a.eps}});
  VerifyOptions opt;
  opt.common_edge_eps = a.eps;
  const VerifyReport rep = run_verify(battery, checks, opt);
  nlohmann::json out = report_to_json(rep, a.all_records);
  out["config"] = {{"battery", a.battery}, {"checks", std::vector<std::string>(checks.begin(), checks.end())}};
  std::cout << out.dump(2) << '\n';
  std::cerr << "# verify: " << rep.records.size() << " records, " << rep.failures() << " violations\n";
  return rep.failures() == 0 ? kOk : kViolation;
}

// ---------------------------------------------------------------------------

struct FormulaArgs {
  std::string id;
  long long N = 0, n = 0, k = 0, divisor = 7;
  double p = -1, c = -1, ex = 0, exx1 = 0, edges = -1, i_size = -1, neighbours = 4;
  double b1 = 0, b2 = 0, b3 = 0, b4 = 0;
  bool pairs = false, exact = false;
  std::string p_exact;
};

int run_formula_cmd(const FormulaArgs& a) {
  ojson inputs = ojson::object();
  auto need_p = [&] {
    if (a.p < 0) throw ParameterError("formula " + a.id + " needs --p");
    inputs["p"] = a.p;
    return a.p;
  };
  auto need_i = [&](long long v, const char* name) {
    if (v <= 0) throw ParameterError("formula " + a.id + " needs --" + name);
    inputs[name] = v;
    return v;
  };
  BoundReport r;
  ojson extra = nullptr;
  if (a.id == "threshold-p") {
    if (a.c < 0) throw ParameterError("threshold-p needs --c");
    inputs["c"] = a.c;
    const double p = threshold_p(a.c, need_i(a.n, "n"));
    r = {p, std::log(p), "threshold-p"};
  } else if (a.id == "ex-z2") {
    const long long N = need_i(a.N, "N");
    r = expected_far_vertices_Z2(N, need_p());
  } else if (a.id == "exx-z2") {
    const long long N = need_i(a.N, "N");
    r = second_factorial_moment_Z2(N, need_p());
  } else if (a.id == "chebyshev") {
    inputs["ex"] = a.ex;
    inputs["exx1"] = a.exx1;
    r = chebyshev_prob_zero_upper(a.ex, a.exx1);
  } else if (a.id == "kleitman") {
    if (a.edges < 0) throw ParameterError("kleitman needs --edges");
    inputs["edges"] = a.edges;
    r = kleitman_lower_Bx(a.edges, need_p());
  } else if (a.id == "janson") {
    if (a.i_size < 0) throw ParameterError("janson needs --i-size");
    inputs["i_size"] = a.i_size;
    inputs["neighbours"] = a.neighbours;
    r = janson_upper(a.i_size, need_p(), a.neighbours);
  } else if (a.id == "union") {
    const long long n = need_i(a.n, "n");
    inputs["divisor"] = a.divisor;
    inputs["pairs"] = a.pairs;
    r = union_bound_diam2(n, need_p(), a.divisor, a.pairs);
  } else if (a.id == "refined") {
    const long long n = need_i(a.n, "n");
    inputs["b"] = {a.b1, a.b2, a.b3, a.b4};
    const auto re = refined_exponent_bound(a.b1, a.b2, a.b3, a.b4, need_p(), n);
    r = re.intermediate;
    extra = {{"simplified", {{"value", re.simplified.value}, {"log_value", re.simplified.log_value}}},
             {"ordered", re.ordered()}};
  } else if (a.id == "cycle") {
    const auto k = static_cast<unsigned>(need_i(a.k, "k"));
    double p_value = 0.0;
    double v = 0.0;
    if (!a.p_exact.empty()) {
      inputs["p"] = a.p_exact;
      Rational p;
      try {
        p = Rational(a.p_exact);
      } catch (const std::exception&) {
        throw ParameterError("--p-exact must look like a/b");
      }
      const Rational exact = cycle_no_adjacent_prob_exact(k, p);
      p_value = static_cast<double>(p);
      v = static_cast<double>(exact);
      extra = {{"exact", exact.str()}};
    } else {
      p_value = need_p();
      v = cycle_no_adjacent_prob(k, p_value);
      extra = ojson::object();
    }
    r = {v, v > 0 ? std::log(v) : -INFINITY, "cycle"};
    extra["reference"] = cycle_component_bound(k, p_value);
  } else {
    throw ParameterError("unknown formula '" + a.id +
                         "' (threshold-p, ex-z2, exx-z2, chebyshev, kleitman, janson, union, refined, cycle)");
  }
  echo_config("formula", {{"formula_id", a.id}, {"inputs", inputs}});
  ojson out = {{"formula_id", r.formula_id}, {"inputs", inputs}, {"value", r.value}};
  out["log_value"] = std::isfinite(r.log_value) ? ojson(r.log_value) : ojson("-inf");
  if (!extra.is_null())
    for (auto& [k, v] : extra.items()) out[k] = v;
  std::cout << out.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct LatinArgs {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string spec, path;
  CLI::Option* o_seed = nullptr;
};

int run_latin_random(LatinArgs& a) {
  if (a.n == 0) throw ParameterError("latin random needs --n >= 1");
  if (a.n > 256) throw ParameterError("latin random is limited to order 256");
  if (a.o_seed->count() == 0) a.seed = fresh_seed();
  echo_config("latin random", {{"n", a.n}, {"seed", a.seed}, {"burn_in", latin_burn_in(a.n)}});
  RngStream stream(a.seed);
  write_latin_square(std::cout, random_latin_square(a.n, stream));
  return kOk;
}

int run_latin_from_group(const LatinArgs& a) {
  echo_config("latin from-group", {{"spec", a.spec}});
  write_latin_square(std::cout, latin_from_group(build_group(a.spec)));
  return kOk;
}

int run_latin_check(const LatinArgs& a) {
  echo_config("latin check", {{"path", a.path}});
  std::ifstream in(a.path);
  if (!in) throw ParameterError("cannot open '" + a.path + "'");
  try {
    const LatinSquare l = read_latin_square(in);
    std::cout << ojson{{"valid", true}, {"order", l.order()}}.dump() << '\n';
    return kOk;
  } catch (const ValidationError& e) {
    std::cout << ojson{{"valid", false}, {"axiom", e.axiom()}, {"detail", e.what()}}.dump() << '\n';
    return kViolation;
  }
}

// ---------------------------------------------------------------------------

struct SampleArgs {
  std::string spec;
  double p = -1, c = -1;
  std::uint64_t seed = 0;
  std::string model = "cayley";
  CLI::Option* o_seed = nullptr;
};

int run_sample(SampleArgs& a) {
  const GroupTable g = build_group(a.spec);
  if ((a.p >= 0) == (a.c >= 0)) throw ParameterError("sample needs exactly one of --p or --c");
  const double p = a.p >= 0 ? a.p : threshold_p(a.c, static_cast<long long>(g.order()));
  if (a.o_seed->count() == 0) a.seed = fresh_seed();
  const GraphModel model = parse_model(a.model);
  if (model == GraphModel::latin_random) throw ParameterError("sample supports the cayley and latin-group models");
  RngStream stream = RngStream(a.seed).split(0);
  const GeneratorSet s = sample_generators(g, p, stream);
  const CayleyGraph graph = model == GraphModel::cayley ? build_cayley(g, s) : build_latin_graph(latin_from_group(g), s);
  const auto d = diameter(graph);
  echo_config("sample", {{"spec", a.spec}, {"p", p}, {"seed", a.seed}, {"model", a.model}});
  std::cerr << "# vertices " << graph.order() << " edges " << graph.edge_count() << " generators "
            << s.member.count() << " diameter " << (d ? std::to_string(*d) : std::string("inf")) << '\n';
  write_edge_list(std::cout, graph);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Cayley graphs: diameter-two experiments and structural checks"};
  app.require_subcommand(1);

  GroupInfoArgs gi;
  auto* c_gi = app.add_subcommand("group-info", "Order, classes, involutions and hypothesis counts");
  c_gi->add_option("spec", gi.spec, "Group spec, e.g. sym:5 or file:PATH")->required();
  c_gi->add_option("--eps", gi.eps, "Report the small-class hypothesis counts at this eps in (0, 1/4)");

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("sweep", "Monte Carlo grid of Pr(diameter <= 2), CSV to stdout");
  c_sw->add_option("--config", sw.config, "JSON config; explicit flags take precedence");
  sw.o_family = c_sw->add_option("--family", sw.family, "Family spec; '*' is replaced by each --sizes entry");
  sw.o_sizes = c_sw->add_option("--sizes", sw.sizes, "Sizes substituted for '*'")->delimiter(',');
  sw.o_p = c_sw->add_option("--p", sw.p, "Comma-separated p grid")->delimiter(',');
  sw.o_c = c_sw->add_option("--c", sw.c, "Comma-separated c grid, p = sqrt(c ln n / n)")->delimiter(',');
  sw.o_trials = c_sw->add_option("--trials", sw.trials, "Trials per grid point");
  sw.o_seed = c_sw->add_option("--seed", sw.seed, "Master seed (generated and echoed when absent)");
  sw.o_model = c_sw->add_option("--model", sw.model, "cayley | latin-group | latin-random");
  sw.o_workers = c_sw->add_option("--workers", sw.workers, "Worker threads (default CAYLEYLAB_WORKERS or all cores)");
  sw.o_no_timing = c_sw->add_flag("--no-timing", sw.no_timing, "Write 0 in wall_ms so output is byte-reproducible");
  c_sw->add_option("--out", sw.out, "Write CSV here instead of stdout");

  ThresholdArgs th;
  auto* c_th = app.add_subcommand("threshold", "Bisection estimate of the 50% crossing constant c");
  c_th->add_option("--family", th.families, "Family spec; repeat to compare families")->required();
  c_th->add_option("--trials", th.trials, "Trials per probe (>= 100)");
  th.o_seed = c_th->add_option("--seed", th.seed, "Master seed (generated and echoed when absent)");
  c_th->add_option("--model", th.model, "cayley | latin-group | latin-random");
  c_th->add_option("--workers", th.workers, "Worker threads");

  VerifyArgs vf;
  auto* c_vf = app.add_subcommand("verify", "Run invariant checks over a battery; exit 1 on any violation");
  c_vf->add_option("--battery", vf.battery, "default | quick | spec;spec;...");
  c_vf->add_option("--checks", vf.checks, "all, or a comma list of check names");
  c_vf->add_flag("--all-records", vf.all_records, "Include passing records in the output");
  c_vf->add_option("--eps", vf.eps, "eps for the common-edge set check");

  FormulaArgs fm;
  auto* c_fm = app.add_subcommand("formula", "Evaluate one closed-form bound");
  c_fm->add_option("id", fm.id, "threshold-p ex-z2 exx-z2 chebyshev kleitman janson union refined cycle")->required();
  c_fm->add_option("--N", fm.N, "Order of Z2^k");
  c_fm->add_option("--n", fm.n, "Order");
  c_fm->add_option("--k", fm.k, "Cycle length");
  c_fm->add_option("--p", fm.p, "Probability");
  c_fm->add_option("--p-exact", fm.p_exact, "Rational probability a/b (cycle only)");
  c_fm->add_option("--c", fm.c, "Threshold constant");
  c_fm->add_option("--ex", fm.ex, "E X");
  c_fm->add_option("--exx1", fm.exx1, "E X(X-1)");
  c_fm->add_option("--edges", fm.edges, "Edge count");
  c_fm->add_option("--i-size", fm.i_size, "|I|");
  c_fm->add_option("--neighbours", fm.neighbours, "Dependent neighbours per event");
  c_fm->add_option("--divisor", fm.divisor, "Exponent divisor");
  c_fm->add_flag("--pairs", fm.pairs, "Count all vertex pairs");
  c_fm->add_option("--b1", fm.b1);
  c_fm->add_option("--b2", fm.b2);
  c_fm->add_option("--b3", fm.b3);
  c_fm->add_option("--b4", fm.b4);

  LatinArgs la;
  auto* c_la = app.add_subcommand("latin", "Latin squares");
  c_la->require_subcommand(1);
  auto* c_la_r = c_la->add_subcommand("random", "Jacobson-Matthews sample");
  c_la_r->add_option("--n", la.n, "Order")->required();
  la.o_seed = c_la_r->add_option("--seed", la.seed, "Seed (generated and echoed when absent)");
  auto* c_la_g = c_la->add_subcommand("from-group", "L[x][y] = x y^-1");
  c_la_g->add_option("spec", la.spec, "Group spec")->required();
  auto* c_la_c = c_la->add_subcommand("check", "Validate a square file");
  c_la_c->add_option("path", la.path, "Square file")->required();

  SampleArgs sa;
  auto* c_sa = app.add_subcommand("sample", "Sample one graph and print its edge list");
  c_sa->add_option("spec", sa.spec, "Group spec")->required();
  c_sa->add_option("--p", sa.p, "Probability");
  c_sa->add_option("--c", sa.c, "Threshold constant");
  sa.o_seed = c_sa->add_option("--seed", sa.seed, "Seed (generated and echoed when absent)");
  c_sa->add_option("--model", sa.model, "cayley | latin-group");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c_gi) return run_group_info(gi);
    if (*c_sw) return run_sweep_cmd(sw);
    if (*c_th) return run_threshold_cmd(th);
    if (*c_vf) return run_verify_cmd(vf);
    if (*c_fm) return run_formula_cmd(fm);
    if (*c_la_r) return run_latin_random(la);
    if (*c_la_g) return run_latin_from_group(la);
    if (*c_la_c) return run_latin_check(la);
    if (*c_sa) return run_sample(sa);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
