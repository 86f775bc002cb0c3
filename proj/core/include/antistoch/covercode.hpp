#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "antistoch/word.hpp"

namespace antistoch {

/// Radius-1 covering code of length N: the words whose length-m prefix is a
/// Hamming(m) codeword, with m = 2^r - 1 the largest such value <= N. The
/// remaining N - m suffix bits are unconstrained.
///
/// Position t of the prefix has syndrome column binary(t), so the syndrome of
/// a word is the XOR of the indices of its set prefix bits. Any nonzero
/// syndrome s names the single prefix bit whose flip lands in the code.
/// Density is 2^-r <= 2/(N+1).
class ExtendedHammingCode {
 public:
  explicit ExtendedHammingCode(std::size_t length);

  [[nodiscard]] std::size_t length() const noexcept { return length_; }
  [[nodiscard]] unsigned order() const noexcept { return order_; }
  [[nodiscard]] std::size_t hamming_len() const noexcept { return hamming_len_; }

  /// |C| / 2^N, exactly 2^-r.
  [[nodiscard]] double density() const noexcept;
  /// log2 |C| = N - r.
  [[nodiscard]] std::size_t log2_size() const noexcept { return length_ - order_; }

  /// XOR of the set prefix positions of w; zero iff w is a codeword.
  [[nodiscard]] std::uint64_t syndrome(const Word& w) const;
  [[nodiscard]] bool contains(const Word& w) const { return syndrome(w) == 0; }
  /// Returns the prefix index whose flip moves w into the code, or nullopt
  /// when w is already a codeword.
  [[nodiscard]] std::optional<std::size_t> flip_to_code(const Word& w) const;

  // Packed form for N <= 64: bit t of the word is integer bit t-1.
  [[nodiscard]] std::uint64_t syndrome_packed(std::uint64_t bits) const;
  [[nodiscard]] bool contains_packed(std::uint64_t bits) const { return syndrome_packed(bits) == 0; }

 private:
  void check_length(const Word& w) const;

  std::size_t length_;
  unsigned order_;
  std::size_t hamming_len_;
};

[[nodiscard]] inline ExtendedHammingCode build_code(std::size_t length) { return ExtendedHammingCode(length); }

inline constexpr std::size_t kMaxVerifyLength = 24;
inline constexpr std::size_t kMaxMinCoverLength = 5;

/// Exhaustive check that every word of the code's length is within Hamming
/// distance 1 of a codeword. Length must be <= kMaxVerifyLength.
[[nodiscard]] bool verify_covering(const ExtendedHammingCode& code);

/// Exhaustive count of codewords, for length <= kMaxVerifyLength.
[[nodiscard]] std::uint64_t count_codewords(const ExtendedHammingCode& code);

/// A minimum-cardinality radius-1 covering code of length N <= 5, found by
/// exact search over subsets in increasing size.
[[nodiscard]] std::vector<Word> exhaustive_min_cover(std::size_t length);

}  // namespace antistoch
