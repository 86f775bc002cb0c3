#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace antistoch {

/// A binary word of arbitrary length with 1-based bit indices.
///
/// Bit t (1 <= t <= length) lives in block (t-1)/64 at bit position (t-1)%64.
/// Bits past `length` in the last block are always zero.
class Word {
 public:
  Word() = default;
  explicit Word(std::size_t length) : length_(length), blocks_((length + 63) / 64, 0) {}

  /// Parses a string of '0'/'1' characters, first character is bit 1.
  static Word from_string(std::string_view bits);

  [[nodiscard]] std::size_t length() const noexcept { return length_; }
  [[nodiscard]] bool empty() const noexcept { return length_ == 0; }

  [[nodiscard]] bool get(std::size_t t) const;
  void set(std::size_t t, bool value);
  void flip(std::size_t t);

  // Unchecked variants for hot loops; t must be in 1..length.
  [[nodiscard]] bool test_unchecked(std::size_t t) const noexcept {
    --t;
    return (blocks_[t >> 6] >> (t & 63)) & 1u;
  }
  void set_unchecked(std::size_t t) noexcept {
    --t;
    blocks_[t >> 6] |= std::uint64_t{1} << (t & 63);
  }

  [[nodiscard]] std::size_t popcount() const noexcept;
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] const std::vector<std::uint64_t>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  void check_index(std::size_t t) const;

  std::size_t length_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace antistoch
