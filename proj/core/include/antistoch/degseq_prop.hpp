#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "antistoch/canon_prop.hpp"
#include "antistoch/covercode.hpp"
#include "antistoch/graph.hpp"
#include "antistoch/word.hpp"

namespace antistoch {

inline constexpr std::size_t kMinWindowOrder = 150;

/// The degree window D_n = [lo, hi] around n/2 of half-width
/// bound = sqrt(n (ln n - 2 sqrt(ln n))) / 2, split at mid = floor(n/2) into
/// the lower part [lo, mid-1] (delta1 degrees) and the upper part
/// [mid+1, hi] (delta2 degrees).
struct DegreeWindow {
  std::size_t n = 0;
  double bound = 0.0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t mid = 0;
  std::size_t delta1 = 0;
  std::size_t delta2 = 0;
};

/// Throws DomainError for n < 150 or when either half has fewer than 3 degrees.
[[nodiscard]] DegreeWindow window(std::size_t n);

struct DegreeProfile {
  DegreeWindow win;
  /// histogram[y] = number of vertices of degree y, for y in 0..n-1.
  std::vector<std::size_t> histogram;
  /// Parities of cumulative counts: down bit i <-> X_{lo+i-1}, up bit j <-> X_{mid+j}.
  Word down;
  Word up;
  /// Sum of y * N_y over lo <= y <= mid.
  std::int64_t z = 0;

  /// N_y, zero outside 0..n-1.
  [[nodiscard]] std::size_t count(std::int64_t y) const noexcept;
  /// X_y = number of vertices with lo <= degree <= y (zero for y < lo).
  [[nodiscard]] std::size_t cumulative(std::int64_t y) const noexcept;
  [[nodiscard]] unsigned z_mod4() const noexcept { return static_cast<unsigned>(((z % 4) + 4) % 4); }
};

[[nodiscard]] DegreeProfile profile(const Graph& g);
[[nodiscard]] DegreeProfile profile_from_degrees(std::span<const std::size_t> degrees);

/// Covering codes for the two parity words.
struct ACodes {
  ExtendedHammingCode down;
  ExtendedHammingCode up;

  static ACodes for_window(const DegreeWindow& w) { return {build_code(w.delta1), build_code(w.delta2)}; }
};

/// Property A: down word in its code, up word in its code, Z mod 4 in {0, 1}.
[[nodiscard]] bool decide_a(const DegreeProfile& p, const ACodes& codes);

/// Lexicographically smallest (u, v), u != v, with deg u = x, deg v = y and
/// the requested adjacency, returned as a normalized slot.
[[nodiscard]] std::optional<EdgeSlot> find_pair(const Graph& g, std::size_t x, std::size_t y, bool want_adjacent);

enum class AAction { none, add, remove };

struct DegreeAttackResult {
  Graph graph;
  AttackOutcome outcome;
  AAction action = AAction::none;
};

/// Add-or-delete adversary for A. The action is fixed by Z mod 4 (add for
/// 0,3; delete for 1,2). A parity word outside its code must flip at its
/// syndrome index; a word already in its code flips at one of its free
/// suffix positions, which keeps it in the code.
[[nodiscard]] DegreeAttackResult adversary_a(const Graph& g, const ACodes& codes);

}  // namespace antistoch
