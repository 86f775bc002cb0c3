#include "antistoch/canon_prop.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "antistoch/covercode.hpp"
#include "antistoch/error.hpp"

namespace antistoch {

void check_modulus(unsigned k) {
  if (k <= kResidueClasses || k % 2 == 0 || k % kResidueClasses == 0) {
    throw DomainError("k must be odd, greater than 11 and not divisible by 11 (got " + std::to_string(k) + ")");
  }
}

KPartition partition(const Graph& g, unsigned k) {
  check_modulus(k);
  const std::size_t n = g.order();
  KPartition p;
  p.k = k;

  const auto deg = g.degrees();
  VertexMask in_u(n);
  std::vector<std::size_t> u_all;
  for (std::size_t v = 1; v <= n; ++v) {
    if (deg[v - 1] % k == 0) {
      in_u.insert(v);
      u_all.push_back(v);
    } else {
      p.w.push_back(v);
    }
  }

  std::vector<VertexMask> class_mask(kResidueClasses, VertexMask(n));
  for (auto v : u_all) {
    const auto cls = in_u.count_in(g.row(v)) % kResidueClasses;
    p.u[cls].push_back(v);
    class_mask[cls].insert(v);
    if (cls != 0) p.r.push_back(v);
  }

  p.resolution.resize(p.w.size());
  for (std::size_t i = 0; i < p.w.size(); ++i) {
    const auto row = g.row(p.w[i]);
    for (unsigned cls = 1; cls < kResidueClasses; ++cls) {
      p.resolution[i][cls - 1] = p.u[cls].empty() ? 0 : static_cast<std::uint32_t>(class_mask[cls].count_in(row));
    }
  }
  return p;
}

namespace {

std::vector<std::size_t> sorted_positions(const KPartition& p) {
  std::vector<std::size_t> idx(p.w.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (p.resolution[a] != p.resolution[b]) return p.resolution[a] < p.resolution[b];
    return p.w[a] < p.w[b];
  });
  return idx;
}

bool resolves_sorted(const KPartition& p, const std::vector<std::size_t>& idx) {
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (p.resolution[idx[i - 1]] == p.resolution[idx[i]]) return false;
  }
  return true;
}

struct Evaluation {
  QkDecision decision;
  std::vector<std::size_t> order;
};

Evaluation evaluate(const Graph& g, unsigned k) {
  const KPartition p = partition(g, k);
  Evaluation e;
  e.decision.w_size = p.w.size();
  const auto idx = sorted_positions(p);
  e.decision.resolved = resolves_sorted(p, idx);
  if (!e.decision.resolved) {
    e.decision.in_qk = true;
    return e;
  }
  e.order.reserve(idx.size());
  for (auto i : idx) e.order.push_back(p.w[i]);
  Word word = encode_sequence(g, e.order);
  const bool member = build_code(word.length()).contains(word);
  e.decision.word = std::move(word);
  e.decision.code_member = member;
  e.decision.in_qk = member;
  return e;
}

}  // namespace

bool resolves(const KPartition& p) { return resolves_sorted(p, sorted_positions(p)); }

std::vector<std::size_t> canonical_order(const KPartition& p) {
  const auto idx = sorted_positions(p);
  if (!resolves_sorted(p, idx)) throw InputError("canonical_order requires a resolved partition");
  std::vector<std::size_t> order;
  order.reserve(idx.size());
  for (auto i : idx) order.push_back(p.w[i]);
  return order;
}

QkDecision decide_qk(const Graph& g, unsigned k) { return evaluate(g, k).decision; }

std::string_view to_string(AttackReason r) noexcept {
  switch (r) {
    case AttackReason::already_in_property:
      return "already_in_property";
    case AttackReason::unresolved_hence_in:
      return "unresolved_hence_in";
    case AttackReason::code_flip_applied:
      return "code_flip_applied";
    case AttackReason::flip_breaks_partition:
      return "flip_breaks_partition";
    case AttackReason::no_flip_found:
      return "no_flip_found";
    case AttackReason::exhaustive_flip_applied:
      return "exhaustive_flip_applied";
  }
  return "unknown";
}

AttackResult adversary_qk(const Graph& g, unsigned k, QkAttackOptions options) {
  check_modulus(k);
  if (options.exhaustive_fallback && g.order() > kMaxExhaustiveOrder) {
    throw InputError("exhaustive fallback is limited to n <= " + std::to_string(kMaxExhaustiveOrder));
  }
  const Evaluation e = evaluate(g, k);
  if (e.decision.in_qk) {
    const auto reason = e.decision.resolved ? AttackReason::already_in_property : AttackReason::unresolved_hence_in;
    return {g, {true, std::nullopt, reason}};
  }

  // Resolved with a non-codeword: exactly one word position reaches the code.
  const Word& word = *e.decision.word;
  const auto t = build_code(word.length()).flip_to_code(word);
  if (!t) throw InvariantViolation("non-member word has no flip index");
  const EdgeSlot labels = slot_at(e.order.size(), *t);
  const EdgeSlot slot = EdgeSlot::of(e.order[labels.u - 1], e.order[labels.v - 1]);
  Graph candidate = flip(g, slot);
  if (decide_qk(candidate, k).in_qk) {
    return {std::move(candidate), {true, slot, AttackReason::code_flip_applied}};
  }

  if (options.exhaustive_fallback) {
    const std::size_t n = g.order();
    Graph probe = g;
    for (std::size_t u = 1; u <= n; ++u) {
      for (std::size_t v = u + 1; v <= n; ++v) {
        const EdgeSlot s{u, v};
        probe.toggle(s);
        if (decide_qk(probe, k).in_qk) return {std::move(probe), {true, s, AttackReason::exhaustive_flip_applied}};
        probe.toggle(s);
      }
    }
    return {g, {false, std::nullopt, AttackReason::no_flip_found}};
  }
  return {g, {false, std::nullopt, AttackReason::flip_breaks_partition}};
}

KSchedule::KSchedule(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InputError("k schedule must not be empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    check_modulus(entries_[i].second);
    if (i > 0 && (entries_[i].first <= entries_[i - 1].first || entries_[i].second <= entries_[i - 1].second)) {
      throw InputError("k schedule must be strictly increasing in both columns");
    }
  }
}

KSchedule KSchedule::defaults() { return KSchedule({{5000, 13}}); }

KSchedule KSchedule::parse(std::string_view text) {
  std::vector<Entry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw FormatError("schedule line " + std::to_string(lineno) + ": expected two columns");
    }
    std::size_t threshold = 0;
    unsigned k = 0;
    auto ra = std::from_chars(a.data(), a.data() + a.size(), threshold);
    auto rb = std::from_chars(b.data(), b.data() + b.size(), k);
    if (ra.ec != std::errc{} || ra.ptr != a.data() + a.size() || rb.ec != std::errc{} ||
        rb.ptr != b.data() + b.size()) {
      throw FormatError("schedule line " + std::to_string(lineno) + ": non-numeric field");
    }
    entries.emplace_back(threshold, k);
  }
  if (entries.empty()) throw FormatError("schedule has no entries");
  return KSchedule(std::move(entries));
}

unsigned choose_k(std::size_t n, const KSchedule& schedule) {
  const auto& e = schedule.entries();
  if (n < e.front().first) {
    throw DomainError("n=" + std::to_string(n) + " is below the smallest schedule threshold " +
                      std::to_string(e.front().first));
  }
  unsigned k = e.front().second;
  for (const auto& [threshold, kk] : e) {
    if (threshold <= n) k = kk;
  }
  return k;
}

}  // namespace antistoch
