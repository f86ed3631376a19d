#pragma once

/**
 * Seeded Monte Carlo sweeps of Pr(diameter <= 2) and threshold bisection.
 *
 * Trial t of family-size row r always draws from RngStream::for_trial(seed,
 * r, t), whatever the grid point. Generating sets are sampled with one draw
 * per element against a cutoff, so within a row the sampled sets grow with
 * p and the success indicator of each trial is monotone along the grid.
 * Work is a flat (grid point, trial) task list; outcomes land in a buffer
 * indexed by task and are reduced in order, so results do not depend on
 * the number of workers.
 */

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "cayley.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "latin.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace cayleylab {

enum class GraphModel { cayley, latin_group, latin_random };

inline const char* to_string(GraphModel m) {
  switch (m) {
    case GraphModel::cayley: return "cayley";
    case GraphModel::latin_group: return "latin-group";
    case GraphModel::latin_random: return "latin-random";
  }
  return "?";
}

inline GraphModel parse_model(const std::string& s) {
  if (s == "cayley") return GraphModel::cayley;
  if (s == "latin-group") return GraphModel::latin_group;
  if (s == "latin-random") return GraphModel::latin_random;
  throw ParameterError("unknown model '" + s + "' (expected cayley, latin-group or latin-random)");
}

inline unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

struct SweepConfig {
  std::string family;                 // a family spec; '*' is replaced by each entry of sizes
  std::vector<unsigned long> sizes;   // required iff family contains '*'
  std::vector<double> p_values;       // exactly one of p_values / c_values is nonempty
  std::vector<double> c_values;
  std::size_t trials = 100;
  std::uint64_t master_seed = 0;
  GraphModel model = GraphModel::cayley;
  unsigned workers = 0;               // 0 means hardware parallelism
  bool record_timing = true;

  std::vector<std::string> families() const {
    const auto star = family.find('*');
    if (star == std::string::npos) {
      if (!sizes.empty()) throw ParameterError("sizes given but family '" + family + "' has no '*'");
      return {family};
    }
    if (sizes.empty()) throw ParameterError("family '" + family + "' has a '*' but no sizes");
    std::vector<unsigned long> sorted = sizes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::string> out;
    for (auto s : sorted) out.push_back(family.substr(0, star) + std::to_string(s) + family.substr(star + 1));
    return out;
  }

  void validate() const {
    if (trials < 1) throw ParameterError("trials must be at least 1");
    if (p_values.empty() == c_values.empty()) throw ParameterError("give exactly one of a p grid or a c grid");
    for (double p : p_values)
      if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p grid value outside [0, 1]");
    for (double c : c_values)
      if (!(c >= 0.0)) throw ParameterError("c grid value must be nonnegative");
    if (trials > UINT32_MAX) throw ParameterError("too many trials");
  }
};

struct SweepRow {
  std::string family;
  std::size_t n = 0;
  double p = 0.0;
  std::optional<double> c;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// One diameter-2 trial for a fixed group and model.
class TrialRunner {
 public:
  TrialRunner(GroupTable group, GraphModel model) : g_(std::move(group)), model_(model) {
    if (model_ == GraphModel::latin_group) latin_ = latin_from_group(g_);
    if (model_ == GraphModel::latin_random && g_.order() > 64)
      throw ParameterError("latin-random model is limited to order 64");
  }

  const GroupTable& group() const noexcept { return g_; }

  bool operator()(double p, RngStream stream) const {
    RngStream gen = stream.split(0);
    switch (model_) {
      case GraphModel::cayley: return cayley_diameter_at_most_2(g_, sample_generators(g_, p, gen));
      case GraphModel::latin_group:
        return has_diameter_at_most_2(build_latin_graph(latin_, sample_symbols(g_.order(), p, gen)));
      case GraphModel::latin_random: {
        RngStream sq = stream.split(1);
        const LatinSquare l = random_latin_square(g_.order(), sq);
        return has_diameter_at_most_2(build_latin_graph(l, sample_symbols(g_.order(), p, gen)));
      }
    }
    return false;
  }

 private:
  GroupTable g_;
  GraphModel model_;
  LatinSquare latin_;
};

/// Run `task(i)` for i in [0, count) on `workers` threads. The first
/// exception thrown by any task is rethrown on the calling thread.
template <class Task>
void parallel_for(std::size_t count, unsigned workers, Task&& task) {
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

/// Number of t in [0, trials) for which event(stream_t) holds, with
/// stream_t = for_trial(seed, row, t).
template <class Event>
std::size_t monte_carlo_count(std::size_t trials, std::uint64_t seed, std::uint32_t row, unsigned workers,
                              Event&& event) {
  std::vector<std::uint8_t> hit(trials, 0);
  parallel_for(trials, workers, [&](std::size_t t) {
    hit[t] = event(RngStream::for_trial(seed, row, static_cast<std::uint32_t>(t))) ? 1 : 0;
  });
  std::size_t total = 0;
  for (auto h : hit) total += h;
  return total;
}

inline SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto names = cfg.families();
  const bool by_c = !cfg.c_values.empty();
  std::vector<double> grid = by_c ? cfg.c_values : cfg.p_values;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  struct Point {
    std::size_t runner;
    double p;
    std::optional<double> c;
  };
  std::vector<TrialRunner> runners;
  std::vector<Point> points;
  std::vector<std::string> row_family;
  for (const auto& name : names) {
    runners.emplace_back(build_group(name), cfg.model);
    for (double v : grid) {
      const double p = by_c ? threshold_p(v, static_cast<long long>(runners.back().group().order())) : v;
      points.push_back({runners.size() - 1, p, by_c ? std::optional<double>(v) : std::nullopt});
      row_family.push_back(name);
    }
  }

  const std::size_t T = cfg.trials;
  std::vector<std::uint8_t> outcome(points.size() * T, 0);
  std::vector<double> task_ms(cfg.record_timing ? outcome.size() : 0, 0.0);
  parallel_for(outcome.size(), cfg.workers, [&](std::size_t task) {
    const Point& pt = points[task / T];
    const auto trial = static_cast<std::uint32_t>(task % T);
    const auto start = std::chrono::steady_clock::now();
    const auto stream = RngStream::for_trial(cfg.master_seed, static_cast<std::uint32_t>(pt.runner), trial);
    outcome[task] = runners[pt.runner](pt.p, stream) ? 1 : 0;
    if (cfg.record_timing)
      task_ms[task] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  });

  SweepResult result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    SweepRow row;
    row.family = row_family[i];
    row.n = runners[points[i].runner].group().order();
    row.p = points[i].p;
    row.c = points[i].c;
    row.trials = T;
    for (std::size_t t = 0; t < T; ++t) {
      row.successes += outcome[i * T + t];
      if (cfg.record_timing) row.wall_ms += task_ms[i * T + t];
    }
    row.rate = static_cast<double>(row.successes) / static_cast<double>(T);
    const Interval w = wilson_interval(row.successes, T);
    row.wilson_low = w.low;
    row.wilson_high = w.high;
    row.seed = cfg.master_seed;
    result.rows.push_back(std::move(row));
  }
  return result;
}

namespace detail {

inline std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace detail

inline void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  out << "family,n,p,c,trials,successes,rate,wilson_low,wilson_high,seed,wall_ms\n";
  for (const auto& row : r.rows) {
    out << row.family << ',' << row.n << ',' << detail::fmt_real(row.p) << ','
        << (row.c ? detail::fmt_real(*row.c) : std::string()) << ',' << row.trials << ',' << row.successes << ','
        << detail::fmt_real(row.rate) << ',' << detail::fmt_real(row.wilson_low) << ','
        << detail::fmt_real(row.wilson_high) << ',' << row.seed << ',' << detail::fmt_real(row.wall_ms) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Threshold bisection.

inline constexpr double kBracketLow = 0.05;
inline constexpr double kBracketHigh = 8.0;
inline constexpr int kBisectionSteps = 12;

struct Probe {
  double c;
  double p;
  std::size_t successes;
  double rate;
};

struct ThresholdEstimate {
  std::string family;
  std::size_t n = 0;
  double c_hat = 0.0;
  double c_low = 0.0;
  double c_high = 0.0;
  double rate_low = 0.0;   // success rate at c_low
  double rate_high = 0.0;  // success rate at c_high
  std::size_t trials_per_probe = 0;
  std::uint64_t master_seed = 0;
  bool straddles = false;  // the initial bracket had rates below and at/above 1/2
  std::vector<Probe> probes;
  std::string note;

  /// Same estimate if log were read as log base 2: c ln n = c' log2 n.
  double c_hat_log2() const { return c_hat * std::log(2.0); }
  double c_low_log2() const { return c_low * std::log(2.0); }
  double c_high_log2() const { return c_high * std::log(2.0); }
};

/// Bisection on c over [0.05, 8] for 12 steps, moving the upper end to the
/// midpoint when its success rate is at least 1/2. Every probe reuses the
/// same trial streams.
inline ThresholdEstimate estimate_threshold(const std::string& family, std::size_t trials_per_probe,
                                            std::uint64_t master_seed, unsigned workers = 0,
                                            GraphModel model = GraphModel::cayley) {
  if (trials_per_probe < 100) throw ParameterError("estimate_threshold needs at least 100 trials per probe");
  const TrialRunner runner(build_group(family), model);
  const auto n = static_cast<long long>(runner.group().order());
  ThresholdEstimate est;
  est.family = family;
  est.n = static_cast<std::size_t>(n);
  est.trials_per_probe = trials_per_probe;
  est.master_seed = master_seed;

  auto probe = [&](double c) {
    const double p = threshold_p(c, n);
    const std::size_t s = monte_carlo_count(trials_per_probe, master_seed, 0, workers,
                                            [&](RngStream stream) { return runner(p, stream); });
    Probe pr{c, p, s, static_cast<double>(s) / static_cast<double>(trials_per_probe)};
    est.probes.push_back(pr);
    return pr.rate;
  };

  double lo = kBracketLow, hi = kBracketHigh;
  double rlo = probe(lo), rhi = probe(hi);
  est.straddles = rlo < 0.5 && rhi >= 0.5;
  if (!est.straddles) {
    est.c_low = lo;
    est.c_high = hi;
    est.rate_low = rlo;
    est.rate_high = rhi;
    est.c_hat = rlo >= 0.5 ? lo : hi;
    est.note = "initial bracket does not straddle 1/2: rate " + detail::fmt_real(rlo) + " at c=" +
               detail::fmt_real(lo) + ", " + detail::fmt_real(rhi) + " at c=" + detail::fmt_real(hi);
    return est;
  }
  for (int step = 0; step < kBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double r = probe(mid);
    if (r >= 0.5) {
      hi = mid;
      rhi = r;
    } else {
      lo = mid;
      rlo = r;
    }
  }
  est.c_low = lo;
  est.c_high = hi;
  est.rate_low = rlo;
  est.rate_high = rhi;
  est.c_hat = 0.5 * (lo + hi);
  est.note = "50% crossing of the success rate, " + std::to_string(trials_per_probe) + " trials per probe";
  return est;
}

struct FamilyComparison {
  std::vector<ThresholdEstimate> estimates;  // sorted by c_hat, descending
  bool ordering_holds = true;                // Z2^k above cyclic above symmetric, where present
  bool brackets_disjoint = true;             // consecutive brackets in that order do not overlap
  std::optional<double> z2_over_cyclic;      // c_hat ratio when both are present
};

inline int family_rank(const std::string& family) {
  switch (parse_family(family).kind) {
    case FamilySpec::Kind::elem_abelian_2: return 0;
    case FamilySpec::Kind::cyclic: return 1;
    case FamilySpec::Kind::symmetric: return 2;
    default: return -1;
  }
}

inline FamilyComparison compare_families(std::vector<ThresholdEstimate> estimates) {
  FamilyComparison out;
  std::vector<const ThresholdEstimate*> ranked(3, nullptr);
  for (const auto& e : estimates) {
    const int r = family_rank(e.family);
    if (r >= 0 && !ranked[static_cast<std::size_t>(r)]) ranked[static_cast<std::size_t>(r)] = &e;
  }
  const ThresholdEstimate* prev = nullptr;
  for (const auto* e : ranked) {
    if (!e) continue;
    if (prev) {
      out.ordering_holds = out.ordering_holds && prev->c_hat > e->c_hat;
      out.brackets_disjoint = out.brackets_disjoint && prev->c_low > e->c_high;
    }
    prev = e;
  }
  if (ranked[0] && ranked[1] && ranked[1]->c_hat > 0) out.z2_over_cyclic = ranked[0]->c_hat / ranked[1]->c_hat;
  out.estimates = std::move(estimates);
  std::stable_sort(out.estimates.begin(), out.estimates.end(),
                   [](const auto& a, const auto& b) { return a.c_hat > b.c_hat; });
  return out;
}

}  // namespace cayleylab
