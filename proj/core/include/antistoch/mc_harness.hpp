#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "antistoch/canon_prop.hpp"
#include "antistoch/degseq_prop.hpp"
#include "antistoch/graph.hpp"

namespace antistoch {

enum class Experiment {
  prob_qk,
  prob_a,
  attack_qk,
  attack_a,
  mod_uniformity,
  parity_uniformity,
  degree_range,
  resolution_rate,
};

[[nodiscard]] std::string_view to_string(Experiment e) noexcept;
/// Throws InputError for unknown names.
[[nodiscard]] Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::prob_a;
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  /// Worker count; never changes results.
  unsigned jobs = 1;
  /// Modulus for the Q_k experiments; chosen from `schedule` when absent.
  std::optional<unsigned> k;
  /// Residue modulus for mod_uniformity.
  std::optional<unsigned> m;
  std::optional<KSchedule> schedule;
  std::optional<std::size_t> down_len;
  std::optional<std::size_t> up_len;
  /// Which degree-range statement (1..5) counts as a success.
  unsigned part = 1;
  bool exhaustive_fallback = false;
  double z = 1.96;
};

using StatValue = std::variant<std::int64_t, double>;

struct EstimateResult {
  ExperimentConfig config;
  /// Resolved k (Q_k experiments) or m (mod_uniformity), echoed for reproducibility.
  std::optional<unsigned> k;
  std::optional<unsigned> m;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double frequency = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double elapsed_s = 0.0;
  std::string notes;
  /// Experiment-specific statistics in a fixed order.
  std::vector<std::pair<std::string, StatValue>> extras;

  [[nodiscard]] const StatValue* find(std::string_view name) const;
  [[nodiscard]] double number(std::string_view name) const;
};

/// Wilson score interval; requires trials >= 1 and successes <= trials.
[[nodiscard]] std::pair<double, double> wilson_ci(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Counters that combine by addition (sum) or by min/max; merging is
/// commutative, so any split of trials across workers gives the same totals.
struct Tally {
  std::uint64_t successes = 0;
  std::map<std::string, std::int64_t> sums;
  std::map<std::string, std::int64_t> mins;
  std::map<std::string, std::int64_t> maxs;

  void add(const std::string& key, std::int64_t v = 1) { sums[key] += v; }
  void observe(const std::string& key, std::int64_t v);
  Tally& operator+=(const Tally& other);
  [[nodiscard]] std::int64_t sum(const std::string& key) const;
};

/// Runs body(trial, tally) for trial = 0..trials-1 across `jobs` threads and
/// merges the per-thread tallies. The first exception thrown by any trial is
/// rethrown after all workers stop.
template <class T, class Body>
T run_trials(std::uint64_t trials, unsigned jobs, Body&& body) {
  if (jobs == 0) jobs = 1;
  if (jobs > trials) jobs = static_cast<unsigned>(trials == 0 ? 1 : trials);
  std::vector<T> partial(jobs);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&](unsigned w) {
    try {
      for (std::uint64_t i = w; i < trials; i += jobs) body(i, partial[w]);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  T total{};
  for (auto& p : partial) total += p;
  return total;
}

/// Frequency of an arbitrary decision on G(n, 1/2); trial i uses SeedSpec{seed, i}.
[[nodiscard]] EstimateResult estimate_with(const ExperimentConfig& cfg, const std::function<bool(const Graph&)>& decide);

/// Success rate of an arbitrary adversary with the hard checks applied on every
/// trial: the output differs from the input in at most one slot, and a
/// reported success satisfies `decide`. Throws InvariantViolation otherwise.
[[nodiscard]] EstimateResult estimate_attack_with(const ExperimentConfig& cfg,
                                                  const std::function<AttackResult(const Graph&)>& adversary,
                                                  const std::function<bool(const Graph&)>& decide);

/// prob_qk, prob_a or resolution_rate.
[[nodiscard]] EstimateResult estimate_property(const ExperimentConfig& cfg);
/// attack_qk or attack_a.
[[nodiscard]] EstimateResult estimate_attack_success(const ExperimentConfig& cfg);

struct ModUniformityStats {
  std::size_t n = 0;
  unsigned m = 0;
  std::uint64_t trials = 0;
  /// marginal[r] = #trials with deg(1) = r mod m
  std::vector<std::uint64_t> marginal;
  /// pair[r*m+s] = #trials with (deg(1), deg(2)) = (r, s) mod m
  std::vector<std::uint64_t> pair;
  double marginal_tv = 0.0;
  double pair_tv = 0.0;
  double marginal_chi2 = 0.0;
  double pair_chi2 = 0.0;
};

/// Requires odd m >= 3 and trials >= 1.
[[nodiscard]] ModUniformityStats mod_uniformity_test(std::size_t n, unsigned m, std::uint64_t trials,
                                                     std::uint64_t seed, unsigned jobs = 1);

struct ParityUniformityStats {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::vector<double> down_means;
  std::vector<double> up_means;
  std::array<std::uint64_t, 4> z_mod4{};
  [[nodiscard]] double z_low_fraction() const noexcept;
};

/// Requires trials >= 1 and a valid degree window for n.
[[nodiscard]] ParityUniformityStats parity_uniformity_test(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                                           unsigned jobs = 1);

/// Dispatches any experiment id; the single entry point behind `simulate`.
[[nodiscard]] EstimateResult run_experiment(const ExperimentConfig& cfg);

/// Number of slots in which two graphs on the same vertex set differ.
[[nodiscard]] std::size_t slot_distance(const Graph& a, const Graph& b);

}  // namespace antistoch
