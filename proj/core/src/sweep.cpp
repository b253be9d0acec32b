#include "hdrelay/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "hdrelay/channel.hpp"

namespace hdrelay {

namespace {

void check_config(const SweepConfig& cfg) {
  if (cfg.n_relays < 1 || cfg.n_relays > 8)
    throw std::invalid_argument("conjecture sweep: n_relays must be in [1:8]");
  if (cfg.trials < 1) throw std::invalid_argument("conjecture sweep: trials must be >= 1");
  if (cfg.lo > cfg.hi || cfg.lo < 0.0)
    throw std::invalid_argument("conjecture sweep: need 0 <= lo <= hi");
  if (cfg.q < 1) throw std::invalid_argument("conjecture sweep: q must be >= 1");
}

// Unbiased uniform draw on [0, n]; modulo rejection keeps the stream
// deterministic for a given engine state.
std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t span = n + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % span);
  for (;;) {
    const std::uint64_t r = eng();
    if (r < limit) return r % span;
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

SweepTrial run_trial_exact(const SweepConfig& cfg, int trial) {
  const auto b = sweep_network(cfg, trial);
  const auto a = build_coefficient_matrix(b);
  const auto base = solve_gdof(a);
  const auto minimal = minimum_support_solution(a);
  SweepTrial out;
  out.trial = trial;
  out.gdof = rational_to_string(base.d);
  out.gdof_value = to_double(base.d);
  out.support_size = minimal.support_size;
  out.tight_count = static_cast<int>(base.tight_cuts.size());
  out.counterexample = minimal.support_size > cfg.n_relays + 1;
  return out;
}

SweepTrial run_trial_float(const SweepConfig& cfg, int trial) {
  const auto b = to_double_matrix(sweep_network(cfg, trial));
  const auto a = build_coefficient_matrix(b);
  const auto base = solve_gdof(a);
  const auto minimal = minimum_support_solution(a);
  SweepTrial out;
  out.trial = trial;
  out.gdof = format_double(base.d);
  out.gdof_value = base.d;
  out.support_size = minimal.support_size;
  out.tight_count = static_cast<int>(base.tight_cuts.size());
  out.counterexample = minimal.support_size > cfg.n_relays + 1;
  return out;
}

}  // namespace

ExponentMatrix<Rational> sweep_network(const SweepConfig& cfg, int trial) {
  check_config(cfg);
  std::mt19937_64 eng(mix_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
  const int side = cfg.n_relays + 1;
  const long k_lo = std::lround(cfg.lo * cfg.q);
  const long k_hi = std::lround(cfg.hi * cfg.q);
  std::vector<Rational> beta(static_cast<size_t>(side) * side, Rational(0));
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const long k = k_lo + static_cast<long>(uniform_below(eng, k_hi - k_lo));
      if (i == j && i < cfg.n_relays) continue;  // ignored diagonal, draw consumed
      beta[static_cast<size_t>(i) * side + j] = Rational(k, cfg.q);
    }
  return ExponentMatrix<Rational>(cfg.n_relays, std::move(beta));
}

SweepReport run_conjecture_sweep(const SweepConfig& cfg) {
  check_config(cfg);
  SweepReport report;
  report.config = cfg;
  report.trials.resize(cfg.trials);

  const int workers = std::max(1, cfg.workers);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error_text;
  std::mutex error_mutex;
  auto work = [&]() {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= cfg.trials || failed.load()) break;
      try {
        report.trials[t] = cfg.exact ? run_trial_exact(cfg, t) : run_trial_float(cfg, t);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        failed.store(true);
        error_text = e.what();
        break;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("conjecture sweep trial failed: " + error_text);

  long support_total = 0;
  report.min_support = report.trials.front().support_size;
  report.max_support = report.trials.front().support_size;
  for (const auto& t : report.trials) {
    support_total += t.support_size;
    report.min_support = std::min(report.min_support, t.support_size);
    report.max_support = std::max(report.max_support, t.support_size);
    if (t.counterexample) ++report.counterexamples;
  }
  report.mean_support = static_cast<double>(support_total) / cfg.trials;
  return report;
}

std::string SweepReport::to_csv() const {
  std::string out = "trial,gdof,support_size,tight_count\n";
  for (const auto& t : trials) {
    out += std::to_string(t.trial);
    out += ',';
    out += t.gdof;
    out += ',';
    out += std::to_string(t.support_size);
    out += ',';
    out += std::to_string(t.tight_count);
    out += '\n';
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "summary,support_min=%d;support_max=%d;support_mean=%.6f,%d,%d\n",
                min_support, max_support, mean_support, counterexamples,
                static_cast<int>(trials.size()));
  out += buf;
  return out;
}

}  // namespace hdrelay
