#pragma once

// The end-to-end check suite behind `polydtn verify-paper`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polydtn/serialize.hpp"

namespace polydtn {

struct VerifyOptions {
  /// Skips the lattice Monte Carlo and cuts the sampler check to one seed
  /// and 1e4 samples per network.
  bool quick = false;
  std::uint64_t seed = 20240601;
  std::size_t threads = 0;
  std::uint64_t mc_samples = 1000000;
  double mc_epsilon = 0.05;
  std::uint64_t sampler_samples = 100000;
};

struct CheckResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool skipped = false;
  Json details;
};

/// Runs checks 1..11 in order. `on_done` (optional) is called after each check
/// with its wall-clock seconds.
std::vector<CheckResult> run_checks(const VerifyOptions& options,
                                    const std::function<void(const CheckResult&, double)>& on_done = {});

/// Deterministic report: no timings.
Json checks_report(const std::vector<CheckResult>& results, const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace polydtn
