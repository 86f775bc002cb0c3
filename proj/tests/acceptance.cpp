// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "antistoch/canon_prop.hpp"
#include "antistoch/covercode.hpp"
#include "antistoch/degseq_prop.hpp"
#include "antistoch/error.hpp"
#include "antistoch/lowerbound.hpp"
#include "antistoch/mc_harness.hpp"
#include "cli.hpp"

using namespace antistoch;

namespace {

using Clock = std::chrono::steady_clock;

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ExperimentConfig config(Experiment e, std::size_t n, std::uint64_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.experiment = e;
  c.n = n;
  c.trials = trials;
  c.seed = seed;
  c.jobs = jobs();
  return c;
}

Verdict covering_exactness() {
  const auto start = Clock::now();
  bool ok = true;
  std::string bad;
  for (std::size_t n = 0; n <= 20; ++n) {
    const auto code = build_code(n);
    if (!verify_covering(code)) {
      ok = false;
      bad += fmt(" cover(N=%zu)", n);
    }
    if (n <= 15 && count_codewords(code) != (std::uint64_t{1} << (n - code.order()))) {
      ok = false;
      bad += fmt(" count(N=%zu)", n);
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {ok && secs < 10, fmt("N=0..20 covered, counts exact for N<=15%s; %.2fs (limit 10s)", bad.c_str(), secs)};
}

Verdict flip_soundness() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uint64_t total = 0, good = 0;
  for (std::size_t n : {7u, 10u, 31u, 100u}) {
    const auto code = build_code(n);
    for (int i = 0; i < 250000; ++i) {
      Word w(n);
      for (std::size_t t = 1; t <= n; ++t) w.set(t, rng() & 1u);
      const auto t = code.flip_to_code(w);
      if (t) w.flip(*t);
      good += code.contains(w);
      ++total;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {good == total && secs < 30,
          fmt("%llu/%llu words land in the code; %.2fs (limit 30s)", (unsigned long long)good,
              (unsigned long long)total, secs)};
}

Verdict rarity() {
  const auto r = run_experiment(config(Experiment::prob_a, 500, 100000, 3));
  const double ref = 2.0 / (500 * std::log(500.0));
  const bool factor = r.frequency >= ref / 3 && r.frequency <= ref * 3;
  const bool overlap = r.ci_high >= 2.1e-4 && r.ci_low <= 1.9e-3;
  return {factor && overlap, fmt("P[A]=%.3e (%llu/%llu), Wilson [%.3e, %.3e]; need within x3 of %.3e and overlap "
                                 "[2.1e-4, 1.9e-3]",
                                 r.frequency, (unsigned long long)r.successes, (unsigned long long)r.trials,
                                 r.ci_low, r.ci_high, ref)};
}

Verdict degree_attack() {
  try {
    const auto r = run_experiment(config(Experiment::attack_a, 500, 2000, 4));
    return {r.frequency >= 0.90, fmt("success %.4f (%llu/2000), hard checks passed on every trial; need >= 0.90",
                                     r.frequency, (unsigned long long)r.successes)};
  } catch (const InvariantViolation& e) {
    return {false, std::string("hard invariant violated: ") + e.what()};
  }
}

Verdict checksum_balance() {
  const auto s = parity_uniformity_test(500, 100000, 5, jobs());
  const double low = s.z_low_fraction();
  double lo = 1, hi = 0;
  for (const auto* v : {&s.down_means, &s.up_means})
    for (double m : *v) {
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
  const bool ok = std::abs(low - 0.5) <= 0.01 && lo >= 0.47 && hi <= 0.53;
  return {ok, fmt("P[Z mod 4 in {0,1}]=%.4f (need 0.50 +- 0.01), bit means in [%.4f, %.4f] (need [0.47, 0.53])", low,
                  lo, hi)};
}

Verdict qk_invariance() {
  std::mt19937_64 rng(6);
  int same = 0, resolved = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Graph g = random_graph(200, {6, i});
    std::vector<std::size_t> perm(200);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto a = decide_qk(g, 13);
    const auto b = decide_qk(permute(g, perm), 13);
    same += a.in_qk == b.in_qk && a.resolved == b.resolved && a.word == b.word;
    resolved += a.resolved;
  }
  return {same == 1000, fmt("%d/1000 identical verdicts (%d resolved)", same, resolved)};
}

Verdict qk_attack() {
  auto res_cfg = config(Experiment::resolution_rate, 5000, 200, 7);
  res_cfg.k = 13;
  const auto res = run_experiment(res_cfg);
  auto att_cfg = res_cfg;
  att_cfg.experiment = Experiment::attack_qk;
  EstimateResult att;
  try {
    att = run_experiment(att_cfg);
  } catch (const InvariantViolation& e) {
    return {false, std::string("hard invariant violated: ") + e.what()};
  }
  const double cert = res.number("certificate");
  const bool ok = res.frequency >= 0.9 && att.frequency >= 0.70 && att.frequency <= 0.95 && cert < 0.1 + 2e-7;
  return {ok, fmt("B freq %.3f (need >= 0.9), attack success %.3f (need [0.70, 0.95]), certificate %.4e "
                  "(P[not B] Wilson high %.4e + density %.3e; need < 1e-1 + 2e-7)",
                  res.frequency, att.frequency, cert, res.number("unresolved_ci_high"),
                  res.number("code_density_max"))};
}

Verdict residue_uniformity() {
  bool ok = true;
  std::string detail;
  for (unsigned m : {3u, 13u}) {
    const auto s = mod_uniformity_test(200, m, 50000, 8 + m, jobs());
    ok = ok && s.marginal_tv <= 0.02 && s.pair_tv <= 0.05;
    detail += fmt("m=%u: marginal TV %.4f, pair TV %.4f; ", m, s.marginal_tv, s.pair_tv);
  }
  return {ok, detail + "need <= 0.02 and <= 0.05"};
}

Verdict degree_range() {
  auto p1 = config(Experiment::degree_range, 2000, 500, 9);
  p1.part = 1;
  const auto r1 = run_experiment(p1);
  auto p5 = config(Experiment::degree_range, 1000, 200, 10);
  p5.part = 5;
  const auto r5 = run_experiment(p5);
  return {r1.frequency >= 0.99 && r5.frequency >= 0.95,
          fmt("part 1 at n=2000: %.3f (need >= 0.99); part 5 at n=1000: %.3f (need >= 0.95)", r1.frequency,
              r5.frequency)};
}

// Cumulative-parity words and checksum recomputed from scratch.
struct Recount {
  std::vector<int> down, up;
  std::int64_t z = 0;
};

Recount recount(const std::vector<std::size_t>& deg, const DegreeWindow& w) {
  Recount r;
  auto x = [&](std::int64_t y) {
    int c = 0;
    for (auto d : deg) c += std::int64_t(d) >= w.lo && std::int64_t(d) <= y;
    return c;
  };
  for (std::int64_t y = w.lo; y < w.mid; ++y) r.down.push_back(x(y) & 1);
  for (std::int64_t y = w.mid + 1; y <= w.hi; ++y) r.up.push_back(x(y) & 1);
  for (auto d : deg)
    if (std::int64_t(d) >= w.lo && std::int64_t(d) <= w.mid) r.z += std::int64_t(d);
  return r;
}

Verdict flip_effect() {
  std::mt19937_64 rng(11);
  const std::size_t n = 500;
  const DegreeWindow w = window(n);
  int cases = 0, ok = 0;
  for (std::uint64_t gi = 0; cases < 10000; ++gi) {
    const Graph g = random_graph(n, {11, gi});
    const auto deg = g.degrees();
    const Recount base = recount(deg, w);
    int here = 0;
    for (int attempt = 0; attempt < 20000 && here < 100; ++attempt) {
      const std::size_t u = 1 + rng() % n, v = 1 + rng() % n;
      if (u == v) continue;
      const auto x = std::int64_t(deg[u - 1]), y = std::int64_t(deg[v - 1]);
      const bool adj = g.adjacent(u, v);
      const bool add = !adj && x >= w.lo && x < w.mid && y > w.mid && y <= w.hi;
      const bool del = adj && x > w.lo && x <= w.mid && y > w.mid + 1 && y <= w.hi + 1;
      if (!add && !del) continue;
      // Prediction from the old profile only.
      DegreeProfile pred = profile_from_degrees(deg);
      pred.down.flip(std::size_t(add ? x - w.lo + 1 : x - w.lo));
      pred.up.flip(std::size_t(add ? y - w.mid : y - 1 - w.mid));
      pred.z += add ? 1 : -1;
      const Recount after = recount(flip(g, EdgeSlot::of(u, v)).degrees(), w);
      bool match = after.z == pred.z && after.z - base.z == (add ? 1 : -1);
      for (std::size_t i = 0; i < after.down.size(); ++i) match = match && after.down[i] == int(pred.down.get(i + 1));
      for (std::size_t j = 0; j < after.up.size(); ++j) match = match && after.up[j] == int(pred.up.get(j + 1));
      ok += match;
      ++cases;
      ++here;
      if (cases == 10000) break;
    }
  }
  return {ok == cases, fmt("%d/%d predictions match the full recount", ok, cases)};
}

std::uint64_t exact_multinomial(const std::vector<std::size_t>& counts, std::size_t n) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 2; i <= n; ++i) v *= i;
  for (auto c : counts)
    for (std::uint64_t i = 2; i <= c; ++i) v /= i;
  return v;
}

Verdict lowerbound_kit() {
  // (a) log_p against exact multinomials over every sequence in {0..n-1}^n, n <= 8.
  double worst = 0;
  std::uint64_t sequences = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<std::size_t> d(n, 0);
    while (true) {
      const auto s = SeqStats::of(d);
      const double exact = double(exact_multinomial(s.counts, n));
      worst = std::max(worst, std::abs(std::exp(log_p(s)) / exact - 1));
      ++sequences;
      std::size_t i = 0;
      while (i < n && ++d[i] == n) d[i++] = 0;
      if (i == n) break;
    }
  }
  // (b) log_g under a single flip, and (c) very_good neighbours, on 100 frozen n=1000 samples.
  const std::size_t n = 1000;
  const auto t = ThresholdSet::of(n);
  std::mt19937_64 rng(12);
  int stable = 0, p1 = 0, stable_p1 = 0;
  double max_delta = 0;
  bool neighbours = true;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Graph g = random_graph(n, {12, i});
    const auto s = SeqStats::of(g);
    const EdgeSlot e = slot_at(n, 1 + rng() % pair_count(n));
    const double delta = std::abs(log_g_estimate(SeqStats::of(flip(g, e))) - log_g_estimate(s));
    max_delta = std::max(max_delta, delta);
    stable += delta <= 0.01;
    const bool has_p1 = check_P_conditions(s, t)[0];
    p1 += has_p1;
    stable_p1 += has_p1 && delta <= 0.01;
    const auto c = classify_degrees(s, t);
    for (std::size_t y = 1; y + 1 < n; ++y)
      if (c[y] == DegreeClass::very_good && !(is_good(c[y - 1]) && is_good(c[y]) && is_good(c[y + 1])))
        neighbours = false;
  }
  const bool ok = worst <= 1e-9 && stable == 100 && neighbours;
  return {ok, fmt("log_p max rel err %.2e over %llu sequences (need <= 1e-9); |dlog_g| <= 0.01 in %d/100 flips "
                  "(%d/%d with P1; max %.4f); very_good neighbours good: %s",
                  worst, (unsigned long long)sequences, stable, stable_p1, p1, max_delta, neighbours ? "yes" : "no")};
}

Verdict determinism() {
  const std::vector<std::vector<std::string>> runs{
      {"simulate", "--experiment", "prob_a", "--n", "500", "--trials", "300", "--seed", "13"},
      {"simulate", "--experiment", "attack_a", "--n", "500", "--trials", "200", "--seed", "13"},
      {"simulate", "--experiment", "mod_uniformity", "--n", "200", "--m", "13", "--trials", "500", "--seed", "13"},
      {"simulate", "--experiment", "parity_uniformity", "--n", "500", "--trials", "300", "--seed", "13"},
      {"simulate", "--experiment", "degree_range", "--n", "1000", "--trials", "20", "--seed", "13", "--part", "5"},
      {"simulate", "--experiment", "resolution_rate", "--n", "400", "--k", "13", "--trials", "20", "--seed", "13"},
      {"simulate", "--experiment", "attack_qk", "--n", "400", "--k", "13", "--trials", "20", "--seed", "13"},
  };
  const std::regex elapsed("\"elapsed_s\": [^,\\n]*");
  int identical = 0;
  std::string bad;
  for (const auto& base : runs) {
    std::string reference;
    bool same = true;
    for (const char* j : {"1", "2", "3", "8"}) {
      auto args = base;
      args.insert(args.end(), {"--jobs", j});
      std::ostringstream out, err;
      if (cli::run(args, out, err) != 0) {
        same = false;
        break;
      }
      const std::string text = std::regex_replace(out.str(), elapsed, "\"elapsed_s\": _");
      if (reference.empty()) reference = text;
      same = same && text == reference;
    }
    identical += same;
    if (!same) bad += " " + base[2];
  }
  return {identical == int(runs.size()),
          fmt("%d/%zu simulate invocations byte-identical across --jobs 1,2,3,8%s", identical, runs.size(),
              bad.c_str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"covering exactness", covering_exactness},
      {"flip soundness", flip_soundness},
      {"degree-sequence rarity", rarity},
      {"degree-sequence attack", degree_attack},
      {"checksum balance", checksum_balance},
      {"Q_k isomorphism invariance", qk_invariance},
      {"Q_k attack and resolution", qk_attack},
      {"residue uniformity", residue_uniformity},
      {"degree-range statements", degree_range},
      {"flip-effect prediction", flip_effect},
      {"lower-bound kit", lowerbound_kit},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << v.detail
              << " (" << fmt("%.1fs", secs) << ")" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
