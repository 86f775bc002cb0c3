#include "antistoch/covercode.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "antistoch/error.hpp"

namespace antistoch {

ExtendedHammingCode::ExtendedHammingCode(std::size_t length) : length_(length), order_(0), hamming_len_(0) {
  // Largest r with 2^r - 1 <= N.
  while (((std::size_t{1} << (order_ + 1)) - 1) <= length_) ++order_;
  hamming_len_ = (std::size_t{1} << order_) - 1;
}

double ExtendedHammingCode::density() const noexcept { return std::ldexp(1.0, -static_cast<int>(order_)); }

void ExtendedHammingCode::check_length(const Word& w) const {
  if (w.length() != length_) {
    throw InputError("word length " + std::to_string(w.length()) + " does not match code length " +
                     std::to_string(length_));
  }
}

std::uint64_t ExtendedHammingCode::syndrome(const Word& w) const {
  check_length(w);
  std::uint64_t s = 0;
  const auto& blocks = w.blocks();
  const std::size_t full_blocks = hamming_len_ / 64;
  const std::size_t tail_bits = hamming_len_ % 64;
  auto absorb = [&s](std::uint64_t bits, std::uint64_t offset) {
    while (bits != 0) {
      const auto o = static_cast<std::uint64_t>(std::countr_zero(bits));
      s ^= offset + o + 1;
      bits &= bits - 1;
    }
  };
  for (std::size_t b = 0; b < full_blocks; ++b) absorb(blocks[b], 64 * b);
  if (tail_bits != 0) {
    absorb(blocks[full_blocks] & ((std::uint64_t{1} << tail_bits) - 1), 64 * full_blocks);
  }
  return s;
}

std::optional<std::size_t> ExtendedHammingCode::flip_to_code(const Word& w) const {
  const std::uint64_t s = syndrome(w);
  if (s == 0) return std::nullopt;
  return static_cast<std::size_t>(s);
}

std::uint64_t ExtendedHammingCode::syndrome_packed(std::uint64_t bits) const {
  if (length_ > 64) throw InputError("packed words require code length <= 64");
  if (hamming_len_ < 64) bits &= (std::uint64_t{1} << hamming_len_) - 1;
  std::uint64_t s = 0;
  while (bits != 0) {
    s ^= static_cast<std::uint64_t>(std::countr_zero(bits)) + 1;
    bits &= bits - 1;
  }
  return s;
}

namespace {

void check_verify_guard(const ExtendedHammingCode& code) {
  if (code.length() > kMaxVerifyLength) {
    throw InputError("exhaustive verification is limited to length <= " + std::to_string(kMaxVerifyLength));
  }
}

}  // namespace

std::uint64_t count_codewords(const ExtendedHammingCode& code) {
  check_verify_guard(code);
  const std::uint64_t total = std::uint64_t{1} << code.length();
  std::uint64_t count = 0;
  for (std::uint64_t w = 0; w < total; ++w) count += code.contains_packed(w) ? 1 : 0;
  return count;
}

bool verify_covering(const ExtendedHammingCode& code) {
  check_verify_guard(code);
  const std::size_t len = code.length();
  const std::uint64_t total = std::uint64_t{1} << len;
  std::vector<bool> member(total);
  for (std::uint64_t w = 0; w < total; ++w) member[w] = code.contains_packed(w);
  for (std::uint64_t w = 0; w < total; ++w) {
    if (member[w]) continue;
    bool covered = false;
    for (std::size_t i = 0; i < len && !covered; ++i) covered = member[w ^ (std::uint64_t{1} << i)];
    if (!covered) return false;
  }
  return true;
}

std::vector<Word> exhaustive_min_cover(std::size_t length) {
  if (length > kMaxMinCoverLength) {
    throw InputError("exact covering search is limited to length <= " + std::to_string(kMaxMinCoverLength));
  }
  const unsigned words = 1u << length;
  const std::uint32_t all = (words == 32) ? 0xffffffffu : ((1u << words) - 1);
  // ball[w] = bitmask over words at distance <= 1 from w.
  std::vector<std::uint32_t> ball(words);
  for (unsigned w = 0; w < words; ++w) {
    ball[w] = 1u << w;
    for (std::size_t i = 0; i < length; ++i) ball[w] |= 1u << (w ^ (1u << i));
  }

  std::vector<unsigned> pick;
  auto search = [&](auto&& self, unsigned start, unsigned remaining, std::uint32_t covered) -> bool {
    if (covered == all) return true;
    if (remaining == 0) return false;
    for (unsigned w = start; w < words; ++w) {
      pick.push_back(w);
      if (self(self, w + 1, remaining - 1, covered | ball[w])) return true;
      pick.pop_back();
    }
    return false;
  };

  for (unsigned size = 1; size <= words; ++size) {
    pick.clear();
    if (search(search, 0, size, 0)) break;
  }

  std::vector<Word> code;
  code.reserve(pick.size());
  for (unsigned w : pick) {
    Word word(length);
    for (std::size_t t = 1; t <= length; ++t) {
      if ((w >> (t - 1)) & 1u) word.set(t, true);
    }
    code.push_back(std::move(word));
  }
  return code;
}

}  // namespace antistoch
