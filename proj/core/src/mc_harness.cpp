#include "antistoch/mc_harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "antistoch/covercode.hpp"
#include "antistoch/error.hpp"
#include "antistoch/lowerbound.hpp"

namespace antistoch {

namespace {

constexpr std::string_view kDeskScaleNote =
    "finite-n tolerances are desk-scale engineering thresholds, not asymptotic values";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_trials(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw InputError("trials must be >= 1");
  if (cfg.n == 0) throw InputError("n must be >= 1");
}

void fill_frequency(EstimateResult& r, std::uint64_t successes, std::uint64_t trials, double z) {
  r.successes = successes;
  r.trials = trials;
  r.frequency = static_cast<double>(successes) / static_cast<double>(trials);
  std::tie(r.ci_low, r.ci_high) = wilson_ci(successes, trials, z);
}

unsigned resolve_k(const ExperimentConfig& cfg) {
  if (cfg.k) {
    check_modulus(*cfg.k);
    return *cfg.k;
  }
  return choose_k(cfg.n, cfg.schedule ? *cfg.schedule : KSchedule::defaults());
}

ACodes resolve_codes(const ExperimentConfig& cfg) {
  const DegreeWindow w = window(cfg.n);
  if ((cfg.down_len && *cfg.down_len != w.delta1) || (cfg.up_len && *cfg.up_len != w.delta2)) {
    throw InputError("code length override does not match the degree window (" + std::to_string(w.delta1) + ", " +
                     std::to_string(w.delta2) + ")");
  }
  return ACodes::for_window(w);
}

Graph trial_graph(const ExperimentConfig& cfg, std::uint64_t trial) { return random_graph(cfg.n, {cfg.seed, trial}); }

void add_reason_counts(EstimateResult& r, const Tally& t) {
  for (auto reason : {AttackReason::already_in_property, AttackReason::unresolved_hence_in,
                      AttackReason::code_flip_applied, AttackReason::flip_breaks_partition,
                      AttackReason::no_flip_found, AttackReason::exhaustive_flip_applied}) {
    const std::string key(to_string(reason));
    r.extras.emplace_back("reason_" + key, t.sum(key));
  }
}

// Shared by prob_qk and resolution_rate: P[Q_k] <= P[not B] + max density over
// the observed canonical word lengths.
void add_qk_certificate(EstimateResult& r, const Tally& t, std::uint64_t trials, double z) {
  const auto unresolved = t.sum("unresolved");
  const auto w_min = t.mins.count("w_size") ? t.mins.at("w_size") : 0;
  const auto w_max = t.maxs.count("w_size") ? t.maxs.at("w_size") : 0;
  const auto code_len = static_cast<std::size_t>(pair_count(static_cast<std::size_t>(w_min)));
  const ExtendedHammingCode code(code_len);
  const double unresolved_freq = static_cast<double>(unresolved) / static_cast<double>(trials);
  const double unresolved_high = wilson_ci(static_cast<std::uint64_t>(unresolved), trials, z).second;
  r.extras.emplace_back("unresolved", unresolved);
  r.extras.emplace_back("unresolved_frequency", unresolved_freq);
  r.extras.emplace_back("unresolved_ci_high", unresolved_high);
  r.extras.emplace_back("w_size_min", w_min);
  r.extras.emplace_back("w_size_max", w_max);
  r.extras.emplace_back("code_len_min", static_cast<std::int64_t>(code_len));
  r.extras.emplace_back("code_order_min", static_cast<std::int64_t>(code.order()));
  r.extras.emplace_back("code_density_max", code.density());
  r.extras.emplace_back("certificate_point", unresolved_freq + code.density());
  r.extras.emplace_back("certificate", unresolved_high + code.density());
}

}  // namespace

std::string_view to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::prob_qk:
      return "prob_qk";
    case Experiment::prob_a:
      return "prob_a";
    case Experiment::attack_qk:
      return "attack_qk";
    case Experiment::attack_a:
      return "attack_a";
    case Experiment::mod_uniformity:
      return "mod_uniformity";
    case Experiment::parity_uniformity:
      return "parity_uniformity";
    case Experiment::degree_range:
      return "degree_range";
    case Experiment::resolution_rate:
      return "resolution_rate";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  for (auto e : {Experiment::prob_qk, Experiment::prob_a, Experiment::attack_qk, Experiment::attack_a,
                 Experiment::mod_uniformity, Experiment::parity_uniformity, Experiment::degree_range,
                 Experiment::resolution_rate}) {
    if (to_string(e) == name) return e;
  }
  throw InputError("unknown experiment '" + std::string(name) + "'");
}

const StatValue* EstimateResult::find(std::string_view name) const {
  for (const auto& [key, value] : extras) {
    if (key == name) return &value;
  }
  return nullptr;
}

double EstimateResult::number(std::string_view name) const {
  const StatValue* v = find(name);
  if (!v) throw InputError("no statistic named '" + std::string(name) + "'");
  return std::visit([](auto x) { return static_cast<double>(x); }, *v);
}

std::pair<double, double> wilson_ci(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0 || successes > trials) throw InputError("wilson_ci needs 0 <= successes <= trials, trials >= 1");
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1 + z2 / t;
  const double center = (p + z2 / (2 * t)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / t + z2 / (4 * t * t)) / denom;
  double lo = std::max(0.0, center - half);
  double hi = std::min(1.0, center + half);
  if (successes == 0) lo = 0.0;
  if (successes == trials) hi = 1.0;
  return {std::min(lo, p), std::max(hi, p)};
}

void Tally::observe(const std::string& key, std::int64_t v) {
  auto [lo, fresh_lo] = mins.try_emplace(key, v);
  if (!fresh_lo) lo->second = std::min(lo->second, v);
  auto [hi, fresh_hi] = maxs.try_emplace(key, v);
  if (!fresh_hi) hi->second = std::max(hi->second, v);
}

Tally& Tally::operator+=(const Tally& other) {
  successes += other.successes;
  for (const auto& [k, v] : other.sums) sums[k] += v;
  for (const auto& [k, v] : other.mins) {
    auto [it, fresh] = mins.try_emplace(k, v);
    if (!fresh) it->second = std::min(it->second, v);
  }
  for (const auto& [k, v] : other.maxs) {
    auto [it, fresh] = maxs.try_emplace(k, v);
    if (!fresh) it->second = std::max(it->second, v);
  }
  return *this;
}

std::int64_t Tally::sum(const std::string& key) const {
  auto it = sums.find(key);
  return it == sums.end() ? 0 : it->second;
}

std::size_t slot_distance(const Graph& a, const Graph& b) {
  if (a.order() != b.order()) throw InputError("slot_distance needs graphs of equal order");
  std::size_t diff = 0;
  for (std::size_t v = 1; v <= a.order(); ++v) {
    const auto ra = a.row(v);
    const auto rb = b.row(v);
    for (std::size_t i = 0; i < ra.size(); ++i) diff += static_cast<std::size_t>(std::popcount(ra[i] ^ rb[i]));
  }
  return diff / 2;
}

EstimateResult estimate_with(const ExperimentConfig& cfg, const std::function<bool(const Graph&)>& decide) {
  check_trials(cfg);
  const auto start = Clock::now();
  const Tally t = run_trials<Tally>(cfg.trials, cfg.jobs, [&](std::uint64_t i, Tally& acc) {
    if (decide(trial_graph(cfg, i))) ++acc.successes;
  });
  EstimateResult r;
  r.config = cfg;
  fill_frequency(r, t.successes, cfg.trials, cfg.z);
  r.elapsed_s = seconds_since(start);
  return r;
}

namespace {

Tally attack_tally(const ExperimentConfig& cfg, const std::function<AttackResult(const Graph&)>& adversary,
                   const std::function<bool(const Graph&)>& decide) {
  return run_trials<Tally>(cfg.trials, cfg.jobs, [&](std::uint64_t i, Tally& acc) {
    const Graph g = trial_graph(cfg, i);
    const AttackResult out = adversary(g);
    if (out.graph.order() != g.order() || slot_distance(g, out.graph) > 1) {
      throw InvariantViolation("trial " + std::to_string(i) + ": adversary changed more than one slot");
    }
    if (out.outcome.success) {
      if (!decide(out.graph)) {
        throw InvariantViolation("trial " + std::to_string(i) + ": reported success but the decision fails");
      }
      ++acc.successes;
    }
    acc.add(std::string(to_string(out.outcome.reason)));
  });
}

}  // namespace

EstimateResult estimate_attack_with(const ExperimentConfig& cfg,
                                    const std::function<AttackResult(const Graph&)>& adversary,
                                    const std::function<bool(const Graph&)>& decide) {
  check_trials(cfg);
  const auto start = Clock::now();
  const Tally t = attack_tally(cfg, adversary, decide);
  EstimateResult r;
  r.config = cfg;
  fill_frequency(r, t.successes, cfg.trials, cfg.z);
  add_reason_counts(r, t);
  r.elapsed_s = seconds_since(start);
  return r;
}

EstimateResult estimate_property(const ExperimentConfig& cfg) {
  check_trials(cfg);
  const auto start = Clock::now();
  EstimateResult r;
  r.config = cfg;
  r.notes = std::string(kDeskScaleNote);
  switch (cfg.experiment) {
    case Experiment::prob_qk:
    case Experiment::resolution_rate: {
      const unsigned k = resolve_k(cfg);
      r.k = k;
      const bool want_resolution = cfg.experiment == Experiment::resolution_rate;
      const Tally t = run_trials<Tally>(cfg.trials, cfg.jobs, [&](std::uint64_t i, Tally& acc) {
        const QkDecision d = decide_qk(trial_graph(cfg, i), k);
        if (want_resolution ? d.resolved : d.in_qk) ++acc.successes;
        if (!d.resolved) acc.add("unresolved");
        acc.observe("w_size", static_cast<std::int64_t>(d.w_size));
      });
      fill_frequency(r, t.successes, cfg.trials, cfg.z);
      add_qk_certificate(r, t, cfg.trials, cfg.z);
      r.notes += "; P[Q_k] is certified as P[not B] + code density instead of sampled directly";
      break;
    }
    case Experiment::prob_a: {
      const ACodes codes = resolve_codes(cfg);
      const Tally t = run_trials<Tally>(cfg.trials, cfg.jobs, [&](std::uint64_t i, Tally& acc) {
        if (decide_a(profile(trial_graph(cfg, i)), codes)) ++acc.successes;
      });
      fill_frequency(r, t.successes, cfg.trials, cfg.z);
      const double nn = static_cast<double>(cfg.n);
      const double reference = 2.0 / (nn * std::log(nn));
      r.extras.emplace_back("down_len", static_cast<std::int64_t>(codes.down.length()));
      r.extras.emplace_back("up_len", static_cast<std::int64_t>(codes.up.length()));
      r.extras.emplace_back("down_order", static_cast<std::int64_t>(codes.down.order()));
      r.extras.emplace_back("up_order", static_cast<std::int64_t>(codes.up.order()));
      r.extras.emplace_back("code_density_product", codes.down.density() * codes.up.density());
      r.extras.emplace_back("reference_2_over_nlnn", reference);
      r.extras.emplace_back("ratio_to_reference", r.frequency / reference);
      break;
    }
    default:
      throw InputError("estimate_property does not handle experiment " + std::string(to_string(cfg.experiment)));
  }
  r.elapsed_s = seconds_since(start);
  return r;
}

EstimateResult estimate_attack_success(const ExperimentConfig& cfg) {
  check_trials(cfg);
  const auto start = Clock::now();
  EstimateResult r;
  switch (cfg.experiment) {
    case Experiment::attack_qk: {
      const unsigned k = resolve_k(cfg);
      const QkAttackOptions options{cfg.exhaustive_fallback};
      r = estimate_attack_with(
          cfg, [&](const Graph& g) { return adversary_qk(g, k, options); },
          [&](const Graph& g) { return decide_qk(g, k).in_qk; });
      r.k = k;
      break;
    }
    case Experiment::attack_a: {
      const ACodes codes = resolve_codes(cfg);
      r = estimate_attack_with(
          cfg,
          [&](const Graph& g) {
            DegreeAttackResult a = adversary_a(g, codes);
            return AttackResult{std::move(a.graph), a.outcome};
          },
          [&](const Graph& g) { return decide_a(profile(g), codes); });
      r.extras.emplace_back("down_len", static_cast<std::int64_t>(codes.down.length()));
      r.extras.emplace_back("up_len", static_cast<std::int64_t>(codes.up.length()));
      break;
    }
    default:
      throw InputError("estimate_attack_success does not handle experiment " +
                       std::string(to_string(cfg.experiment)));
  }
  r.notes = std::string(kDeskScaleNote);
  r.elapsed_s = seconds_since(start);
  return r;
}

namespace {

struct ModTally {
  std::vector<std::uint64_t> marginal;
  std::vector<std::uint64_t> pair;
  ModTally& operator+=(const ModTally& o) {
    if (marginal.empty()) {
      marginal = o.marginal;
      pair = o.pair;
      return *this;
    }
    for (std::size_t i = 0; i < o.marginal.size(); ++i) marginal[i] += o.marginal[i];
    for (std::size_t i = 0; i < o.pair.size(); ++i) pair[i] += o.pair[i];
    return *this;
  }
};

std::pair<double, double> tv_and_chi2(const std::vector<std::uint64_t>& counts, std::uint64_t trials) {
  const double expected = static_cast<double>(trials) / static_cast<double>(counts.size());
  double tv = 0.0;
  double chi2 = 0.0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    tv += std::abs(diff);
    chi2 += diff * diff / expected;
  }
  return {tv / (2 * static_cast<double>(trials)), chi2};
}

}  // namespace

ModUniformityStats mod_uniformity_test(std::size_t n, unsigned m, std::uint64_t trials, std::uint64_t seed,
                                       unsigned jobs) {
  if (m < 3 || m % 2 == 0) throw InputError("residue modulus must be odd and >= 3 (got " + std::to_string(m) + ")");
  if (trials == 0) throw InputError("trials must be >= 1");
  if (n < 2) throw InputError("mod_uniformity_test needs n >= 2");
  ModTally t = run_trials<ModTally>(trials, jobs, [&](std::uint64_t i, ModTally& acc) {
    if (acc.marginal.empty()) {
      acc.marginal.assign(m, 0);
      acc.pair.assign(static_cast<std::size_t>(m) * m, 0);
    }
    const Graph g = random_graph(n, {seed, i});
    const auto r1 = g.degree(1) % m;
    const auto r2 = g.degree(2) % m;
    ++acc.marginal[r1];
    ++acc.pair[r1 * m + r2];
  });
  ModUniformityStats s;
  s.n = n;
  s.m = m;
  s.trials = trials;
  s.marginal = std::move(t.marginal);
  s.pair = std::move(t.pair);
  std::tie(s.marginal_tv, s.marginal_chi2) = tv_and_chi2(s.marginal, trials);
  std::tie(s.pair_tv, s.pair_chi2) = tv_and_chi2(s.pair, trials);
  return s;
}

namespace {

struct ParityTally {
  std::vector<std::uint64_t> down_ones;
  std::vector<std::uint64_t> up_ones;
  std::array<std::uint64_t, 4> z{};
  ParityTally& operator+=(const ParityTally& o) {
    if (down_ones.empty()) {
      down_ones = o.down_ones;
      up_ones = o.up_ones;
    } else {
      for (std::size_t i = 0; i < o.down_ones.size(); ++i) down_ones[i] += o.down_ones[i];
      for (std::size_t i = 0; i < o.up_ones.size(); ++i) up_ones[i] += o.up_ones[i];
    }
    for (std::size_t i = 0; i < 4; ++i) z[i] += o.z[i];
    return *this;
  }
};

}  // namespace

double ParityUniformityStats::z_low_fraction() const noexcept {
  return trials == 0 ? 0.0 : static_cast<double>(z_mod4[0] + z_mod4[1]) / static_cast<double>(trials);
}

ParityUniformityStats parity_uniformity_test(std::size_t n, std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  if (trials == 0) throw InputError("trials must be >= 1");
  const DegreeWindow w = window(n);
  ParityTally t = run_trials<ParityTally>(trials, jobs, [&](std::uint64_t i, ParityTally& acc) {
    if (acc.down_ones.empty()) {
      acc.down_ones.assign(w.delta1, 0);
      acc.up_ones.assign(w.delta2, 0);
    }
    const DegreeProfile p = profile(random_graph(n, {seed, i}));
    for (std::size_t b = 1; b <= w.delta1; ++b) acc.down_ones[b - 1] += p.down.test_unchecked(b) ? 1 : 0;
    for (std::size_t b = 1; b <= w.delta2; ++b) acc.up_ones[b - 1] += p.up.test_unchecked(b) ? 1 : 0;
    ++acc.z[p.z_mod4()];
  });
  ParityUniformityStats s;
  s.n = n;
  s.trials = trials;
  s.z_mod4 = t.z;
  for (auto c : t.down_ones) s.down_means.push_back(static_cast<double>(c) / static_cast<double>(trials));
  for (auto c : t.up_ones) s.up_means.push_back(static_cast<double>(c) / static_cast<double>(trials));
  return s;
}

EstimateResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::prob_qk:
    case Experiment::prob_a:
    case Experiment::resolution_rate:
      return estimate_property(cfg);
    case Experiment::attack_qk:
    case Experiment::attack_a:
      return estimate_attack_success(cfg);
    case Experiment::mod_uniformity: {
      check_trials(cfg);
      const auto start = Clock::now();
      if (!cfg.m) throw InputError("mod_uniformity needs a residue modulus m");
      const unsigned m = *cfg.m;
      const ModUniformityStats s = mod_uniformity_test(cfg.n, m, cfg.trials, cfg.seed, cfg.jobs);
      EstimateResult r;
      r.config = cfg;
      r.m = m;
      fill_frequency(r, s.marginal[0], cfg.trials, cfg.z);
      r.notes = std::string(kDeskScaleNote) + "; successes count trials with deg(1) = 0 mod m";
      r.extras.emplace_back("marginal_tv", s.marginal_tv);
      r.extras.emplace_back("pair_tv", s.pair_tv);
      r.extras.emplace_back("marginal_chi2", s.marginal_chi2);
      r.extras.emplace_back("pair_chi2", s.pair_chi2);
      r.extras.emplace_back("marginal_dof", static_cast<std::int64_t>(m - 1));
      r.extras.emplace_back("pair_dof", static_cast<std::int64_t>(m * m - 1));
      r.elapsed_s = seconds_since(start);
      return r;
    }
    case Experiment::parity_uniformity: {
      check_trials(cfg);
      const auto start = Clock::now();
      const ParityUniformityStats s = parity_uniformity_test(cfg.n, cfg.trials, cfg.seed, cfg.jobs);
      EstimateResult r;
      r.config = cfg;
      fill_frequency(r, s.z_mod4[0] + s.z_mod4[1], cfg.trials, cfg.z);
      r.notes = std::string(kDeskScaleNote) + "; successes count trials with Z mod 4 in {0,1}";
      for (std::size_t i = 0; i < 4; ++i) {
        r.extras.emplace_back("z_mod4_" + std::to_string(i), static_cast<std::int64_t>(s.z_mod4[i]));
      }
      std::vector<double> all(s.down_means);
      all.insert(all.end(), s.up_means.begin(), s.up_means.end());
      r.extras.emplace_back("bit_mean_min", *std::min_element(all.begin(), all.end()));
      r.extras.emplace_back("bit_mean_max", *std::max_element(all.begin(), all.end()));
      for (std::size_t i = 0; i < s.down_means.size(); ++i) {
        r.extras.emplace_back("down_mean_" + std::to_string(i + 1), s.down_means[i]);
      }
      for (std::size_t i = 0; i < s.up_means.size(); ++i) {
        r.extras.emplace_back("up_mean_" + std::to_string(i + 1), s.up_means[i]);
      }
      r.elapsed_s = seconds_since(start);
      return r;
    }
    case Experiment::degree_range: {
      check_trials(cfg);
      if (cfg.part < 1 || cfg.part > 5) throw InputError("degree_range part must be in 1..5");
      const auto start = Clock::now();
      const ThresholdSet thresholds = ThresholdSet::of(cfg.n);
      const Tally t = run_trials<Tally>(cfg.trials, cfg.jobs, [&](std::uint64_t i, Tally& acc) {
        const auto parts = check_degree_range(trial_graph(cfg, i), thresholds);
        for (std::size_t p = 0; p < parts.size(); ++p) {
          if (parts[p]) acc.add("part" + std::to_string(p + 1));
        }
        if (parts[cfg.part - 1]) ++acc.successes;
      });
      EstimateResult r;
      r.config = cfg;
      fill_frequency(r, t.successes, cfg.trials, cfg.z);
      r.notes = std::string(kDeskScaleNote) + "; successes count trials where the selected part holds";
      for (int p = 1; p <= 5; ++p) r.extras.emplace_back("part" + std::to_string(p), t.sum("part" + std::to_string(p)));
      r.elapsed_s = seconds_since(start);
      return r;
    }
  }
  throw InputError("unknown experiment");
}

}  // namespace antistoch
