#include "antistoch/word.hpp"

#include "antistoch/error.hpp"

namespace antistoch {

Word Word::from_string(std::string_view bits) {
  Word w(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      w.set_unchecked(i + 1);
    } else if (bits[i] != '0') {
      throw InputError("word string may contain only '0' and '1'");
    }
  }
  return w;
}

void Word::check_index(std::size_t t) const {
  if (t == 0 || t > length_) {
    throw InputError("bit index " + std::to_string(t) + " outside 1.." + std::to_string(length_));
  }
}

bool Word::get(std::size_t t) const {
  check_index(t);
  return test_unchecked(t);
}

void Word::set(std::size_t t, bool value) {
  check_index(t);
  const std::uint64_t mask = std::uint64_t{1} << ((t - 1) & 63);
  if (value) {
    blocks_[(t - 1) >> 6] |= mask;
  } else {
    blocks_[(t - 1) >> 6] &= ~mask;
  }
}

void Word::flip(std::size_t t) {
  check_index(t);
  blocks_[(t - 1) >> 6] ^= std::uint64_t{1} << ((t - 1) & 63);
}

std::size_t Word::popcount() const noexcept {
  std::size_t total = 0;
  for (auto b : blocks_) total += static_cast<std::size_t>(std::popcount(b));
  return total;
}

std::string Word::to_string() const {
  std::string s(length_, '0');
  for (std::size_t t = 1; t <= length_; ++t) {
    if (test_unchecked(t)) s[t - 1] = '1';
  }
  return s;
}

}  // namespace antistoch
