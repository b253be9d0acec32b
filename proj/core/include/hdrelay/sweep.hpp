#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdrelay/gdof.hpp"
#include "hdrelay/network.hpp"

namespace hdrelay {

// Configuration of the active-states experiment: random networks with
// exponents uniform over the multiples of 1/q in [lo, hi].
struct SweepConfig {
  int n_relays = 2;
  int trials = 1000;
  std::uint64_t seed = 1;
  double lo = 0.0;
  double hi = 3.0;
  int q = 10;          // quantization denominator
  bool exact = true;   // exact rational LP vs double LP
  int workers = 1;
};

struct SweepTrial {
  int trial = 0;
  std::string gdof;        // "p/q" in exact mode, decimal in float mode
  double gdof_value = 0.0;
  int support_size = 0;    // minimum-support optimal schedule
  int tight_count = 0;     // tight cut constraints of the unrestricted vertex
  bool counterexample = false;  // support_size > N+1
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepTrial> trials;
  int min_support = 0;
  int max_support = 0;
  double mean_support = 0.0;
  int counterexamples = 0;

  std::string to_csv() const;
};

// Draws the trial's exponent matrix; exposed so tests can rebuild the exact
// network behind any reported trial.
ExponentMatrix<Rational> sweep_network(const SweepConfig& cfg, int trial);

SweepReport run_conjecture_sweep(const SweepConfig& cfg);

}  // namespace hdrelay
