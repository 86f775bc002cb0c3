#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "antistoch/graph.hpp"
#include "antistoch/word.hpp"

namespace antistoch {

/// Number of residue classes used to split U.
inline constexpr unsigned kResidueClasses = 11;
/// A resolution tuple counts neighbors in U_1..U_10.
using ResolutionVector = std::array<std::uint32_t, kResidueClasses - 1>;

/// Throws DomainError unless k is odd, k > 11 and 11 does not divide k.
void check_modulus(unsigned k);

/// Decomposition [n] = W + U_0 + R of a graph for modulus k.
///
/// U holds the vertices whose degree is divisible by k, U_r those of U whose
/// degree inside G[U] is r mod 11, R = U_1 + ... + U_10 and W = [n] \ U.
/// All vertex lists are sorted ascending.
struct KPartition {
  unsigned k = 0;
  std::vector<std::size_t> w;
  std::array<std::vector<std::size_t>, kResidueClasses> u;  // u[0] is U_0
  std::vector<std::size_t> r;
  /// resolution[i] belongs to w[i].
  std::vector<ResolutionVector> resolution;
};

[[nodiscard]] KPartition partition(const Graph& g, unsigned k);

/// True iff the resolution vectors of W are pairwise distinct (vacuous for |W| <= 1).
[[nodiscard]] bool resolves(const KPartition& p);

/// W sorted by resolution vector, ascending lexicographic; element i gets label i+1.
/// Throws InputError on an unresolved partition.
[[nodiscard]] std::vector<std::size_t> canonical_order(const KPartition& p);

struct QkDecision {
  bool in_qk = false;
  bool resolved = false;
  /// Canonical encoding of G[W], present when resolved.
  std::optional<Word> word;
  std::optional<bool> code_member;
  std::size_t w_size = 0;
};

[[nodiscard]] QkDecision decide_qk(const Graph& g, unsigned k);

enum class AttackReason {
  already_in_property,
  unresolved_hence_in,
  code_flip_applied,
  flip_breaks_partition,
  no_flip_found,
  exhaustive_flip_applied,
};

[[nodiscard]] std::string_view to_string(AttackReason r) noexcept;

struct AttackOutcome {
  bool success = false;
  std::optional<EdgeSlot> flipped;
  AttackReason reason = AttackReason::no_flip_found;
};

struct AttackResult {
  Graph graph;
  AttackOutcome outcome;
};

/// Largest n accepted by the exhaustive fallback of adversary_qk.
inline constexpr std::size_t kMaxExhaustiveOrder = 200;

struct QkAttackOptions {
  /// After a failed code flip, try every slot in lexicographic order.
  bool exhaustive_fallback = false;
};

/// Single-flip adversary for Q_k: flips the W pair named by the code syndrome
/// of the canonical word, then re-decides the flipped graph from scratch.
[[nodiscard]] AttackResult adversary_qk(const Graph& g, unsigned k, QkAttackOptions options = {});

/// Ordered thresholds (N_k, k): strictly increasing in both coordinates.
class KSchedule {
 public:
  using Entry = std::pair<std::size_t, unsigned>;

  explicit KSchedule(std::vector<Entry> entries);

  /// The shipped desk-scale table {(5000, 13)}.
  static KSchedule defaults();
  /// Two whitespace-separated columns "N_k k" per line; '#' starts a comment.
  static KSchedule parse(std::string_view text);

  [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Maximum k whose threshold is <= n; DomainError if n is below every threshold.
[[nodiscard]] unsigned choose_k(std::size_t n, const KSchedule& schedule);

}  // namespace antistoch
