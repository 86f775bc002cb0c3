#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "antistoch/word.hpp"

namespace antistoch {

/// Unordered vertex pair {u, v} stored with 1 <= u < v.
struct EdgeSlot {
  std::size_t u = 0;
  std::size_t v = 0;

  /// Orders the pair; throws InputError when a == b or either index is 0.
  static EdgeSlot of(std::size_t a, std::size_t b);

  friend bool operator==(const EdgeSlot&, const EdgeSlot&) = default;
};

/// 1-based index of slot {u,v} among the n(n-1)/2 pairs in lexicographic order.
[[nodiscard]] std::size_t slot_index(std::size_t n, EdgeSlot e) noexcept;
/// Inverse of slot_index.
[[nodiscard]] EdgeSlot slot_at(std::size_t n, std::size_t index);

[[nodiscard]] constexpr std::size_t pair_count(std::size_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// 64-bit generator seed for a (seed, stream) pair:
///   mix(seed, stream) = splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x9e3779b97f4a7c15))
/// where splitmix64 is the standard SplitMix64 finalizer applied to x + 0x9e3779b97f4a7c15.
[[nodiscard]] std::uint64_t mix_seed(SeedSpec s) noexcept;

/// Simple labeled graph on vertices 1..n as a symmetric, irreflexive bit matrix.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  [[nodiscard]] std::size_t order() const noexcept { return n_; }
  [[nodiscard]] std::size_t words_per_row() const noexcept { return stride_; }

  [[nodiscard]] bool adjacent(std::size_t u, std::size_t v) const;
  [[nodiscard]] bool adjacent_unchecked(std::size_t u, std::size_t v) const noexcept {
    --u;
    --v;
    return (bits_[u * stride_ + (v >> 6)] >> (v & 63)) & 1u;
  }

  /// Sets or clears the pair; u != v required.
  void set_edge(std::size_t u, std::size_t v, bool present);
  /// In-place toggle of one slot.
  void toggle(EdgeSlot e);

  [[nodiscard]] std::size_t degree(std::size_t v) const;
  [[nodiscard]] std::vector<std::size_t> degrees() const;
  [[nodiscard]] std::size_t edge_count() const;

  /// Row v as packed words; bit (w-1) is set iff v ~ w.
  [[nodiscard]] std::span<const std::uint64_t> row(std::size_t v) const noexcept {
    return {bits_.data() + (v - 1) * stride_, stride_};
  }
  [[nodiscard]] std::span<std::uint64_t> mutable_row(std::size_t v) noexcept {
    return {bits_.data() + (v - 1) * stride_, stride_};
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(std::size_t v) const;

  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Vertex mask over 1..n in the same packed layout as Graph rows.
class VertexMask {
 public:
  explicit VertexMask(std::size_t n) : words_((n + 63) / 64, 0) {}
  void insert(std::size_t v) noexcept { words_[(v - 1) >> 6] |= std::uint64_t{1} << ((v - 1) & 63); }
  [[nodiscard]] bool contains(std::size_t v) const noexcept { return (words_[(v - 1) >> 6] >> ((v - 1) & 63)) & 1u; }
  /// Number of neighbors of the row inside the mask.
  [[nodiscard]] std::size_t count_in(std::span<const std::uint64_t> row) const noexcept;
  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

 private:
  std::vector<std::uint64_t> words_;
};

/// Uniform G(n, 1/2): slot bits are drawn in lexicographic slot order from a
/// std::mt19937_64 seeded with mix_seed(s), least significant bit first.
[[nodiscard]] Graph random_graph(std::size_t n, SeedSpec s);

/// Returns a copy of g with slot e toggled.
[[nodiscard]] Graph flip(const Graph& g, EdgeSlot e);

/// Subgraph induced on `vertices` (any order, no duplicates), relabeled
/// 1..|S| in increasing order of the original ids.
[[nodiscard]] Graph induced(const Graph& g, std::span<const std::size_t> vertices);

/// perm[u-1] is the image of u. Output has adj(perm(u), perm(v)) = adj(u, v).
[[nodiscard]] Graph permute(const Graph& g, std::span<const std::size_t> perm);

/// order[i-1] is the vertex receiving label i. Bits follow slot_index over labels.
[[nodiscard]] Word encode_word(const Graph& g, std::span<const std::size_t> order);
/// Like encode_word but over a sequence of distinct vertices that need not cover [n].
[[nodiscard]] Word encode_sequence(const Graph& g, std::span<const std::size_t> vertices);
[[nodiscard]] Graph decode_word(std::size_t n, const Word& w);

inline constexpr unsigned kMaxSignatureDepth = 8;

/// s-iterated degree signatures: d_0 = 0 everywhere; d_s(x) is a canonical
/// hash of the sorted list of d_{s-1} over the neighbors of x. Equal multisets
/// give equal values; distinct multisets collide only by hash accident.
[[nodiscard]] std::vector<std::uint64_t> iterated_degree_signature(const Graph& g, unsigned depth);

/// ASGRAPH v1: "n=<decimal>\n" then lowercase hex of the slot bits in
/// lexicographic order, most significant bit first in each byte, zero padded
/// to a byte boundary, then "\n".
[[nodiscard]] std::string serialize(const Graph& g);
[[nodiscard]] Graph parse(std::string_view text);

/// Validates that perm is a bijection on 1..n; throws InputError otherwise.
void check_permutation(std::span<const std::size_t> perm, std::size_t n);

}  // namespace antistoch
