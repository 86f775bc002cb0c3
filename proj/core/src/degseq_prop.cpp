#include "antistoch/degseq_prop.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "antistoch/error.hpp"

namespace antistoch {

DegreeWindow window(std::size_t n) {
  if (n < kMinWindowOrder) {
    throw DomainError("degree window needs n >= " + std::to_string(kMinWindowOrder) + " (got " + std::to_string(n) +
                      ")");
  }
  const double ln = std::log(static_cast<double>(n));
  DegreeWindow w;
  w.n = n;
  w.bound = 0.5 * std::sqrt(static_cast<double>(n) * (ln - 2.0 * std::sqrt(ln)));
  const double half = static_cast<double>(n) / 2.0;
  w.lo = static_cast<std::int64_t>(std::ceil(half - w.bound));
  w.hi = static_cast<std::int64_t>(std::floor(half + w.bound));
  w.mid = static_cast<std::int64_t>(n / 2);
  if (w.lo > w.mid || w.hi < w.mid || w.mid - w.lo < 3 || w.hi - w.mid < 3) {
    throw DomainError("degree window for n=" + std::to_string(n) + " is degenerate");
  }
  w.delta1 = static_cast<std::size_t>(w.mid - w.lo);
  w.delta2 = static_cast<std::size_t>(w.hi - w.mid);
  return w;
}

std::size_t DegreeProfile::count(std::int64_t y) const noexcept {
  if (y < 0 || y >= static_cast<std::int64_t>(histogram.size())) return 0;
  return histogram[static_cast<std::size_t>(y)];
}

std::size_t DegreeProfile::cumulative(std::int64_t y) const noexcept {
  std::size_t x = 0;
  for (std::int64_t d = win.lo; d <= y; ++d) x += count(d);
  return x;
}

DegreeProfile profile_from_degrees(std::span<const std::size_t> degrees) {
  DegreeProfile p;
  p.win = window(degrees.size());
  const std::size_t n = degrees.size();
  p.histogram.assign(n, 0);
  for (auto d : degrees) {
    if (d >= n) throw InputError("degree exceeds n-1");
    ++p.histogram[d];
  }
  p.down = Word(p.win.delta1);
  p.up = Word(p.win.delta2);
  std::size_t x = 0;
  for (std::int64_t y = p.win.lo; y <= p.win.hi; ++y) {
    x += p.count(y);
    if (y < p.win.mid) {
      if (x & 1u) p.down.set(static_cast<std::size_t>(y - p.win.lo + 1), true);
    } else if (y > p.win.mid) {
      if (x & 1u) p.up.set(static_cast<std::size_t>(y - p.win.mid), true);
    }
    if (y <= p.win.mid) p.z += y * static_cast<std::int64_t>(p.count(y));
  }
  return p;
}

DegreeProfile profile(const Graph& g) {
  const auto deg = g.degrees();
  return profile_from_degrees(deg);
}

bool decide_a(const DegreeProfile& p, const ACodes& codes) {
  if (codes.down.length() != p.down.length() || codes.up.length() != p.up.length()) {
    throw InputError("code lengths do not match the degree window");
  }
  return codes.down.contains(p.down) && codes.up.contains(p.up) && p.z_mod4() <= 1;
}

std::optional<EdgeSlot> find_pair(const Graph& g, std::size_t x, std::size_t y, bool want_adjacent) {
  const std::size_t n = g.order();
  if (x >= n || y >= n) return std::nullopt;
  const auto deg = g.degrees();
  VertexMask with_y(n);
  bool any_y = false;
  for (std::size_t v = 1; v <= n; ++v) {
    if (deg[v - 1] == y) {
      with_y.insert(v);
      any_y = true;
    }
  }
  if (!any_y) return std::nullopt;
  const auto mask = with_y.words();
  const std::size_t stride = g.words_per_row();
  const std::uint64_t tail = (n % 64 == 0) ? ~std::uint64_t{0} : (std::uint64_t{1} << (n % 64)) - 1;
  for (std::size_t u = 1; u <= n; ++u) {
    if (deg[u - 1] != x) continue;
    const auto row = g.row(u);
    for (std::size_t wi = 0; wi < stride; ++wi) {
      std::uint64_t cand = (want_adjacent ? row[wi] : ~row[wi]) & mask[wi];
      if (wi + 1 == stride) cand &= tail;
      if (wi == (u - 1) >> 6) cand &= ~(std::uint64_t{1} << ((u - 1) & 63));
      if (cand != 0) {
        const std::size_t v = wi * 64 + static_cast<std::size_t>(std::countr_zero(cand)) + 1;
        return EdgeSlot::of(u, v);
      }
    }
  }
  return std::nullopt;
}

namespace {

// Positions whose flip makes `word` a codeword (forced) or keeps it one (free suffix).
std::vector<std::size_t> flip_candidates(const ExtendedHammingCode& code, const Word& word) {
  if (auto t = code.flip_to_code(word)) return {*t};
  std::vector<std::size_t> free;
  for (std::size_t i = code.hamming_len() + 1; i <= code.length(); ++i) free.push_back(i);
  return free;
}

}  // namespace

DegreeAttackResult adversary_a(const Graph& g, const ACodes& codes) {
  const DegreeProfile p = profile(g);
  if (decide_a(p, codes)) return {g, {true, std::nullopt, AttackReason::already_in_property}, AAction::none};

  const unsigned zm = p.z_mod4();
  const AAction action = (zm == 0 || zm == 3) ? AAction::add : AAction::remove;
  const auto down = flip_candidates(codes.down, p.down);
  const auto up = flip_candidates(codes.up, p.up);

  for (auto i : down) {
    for (auto j : up) {
      // Target degree coordinates before an addition.
      const auto xs = static_cast<std::size_t>(p.win.lo + static_cast<std::int64_t>(i) - 1);
      const auto ys = static_cast<std::size_t>(p.win.mid + static_cast<std::int64_t>(j));
      const auto pair = action == AAction::add ? find_pair(g, xs, ys, false) : find_pair(g, xs + 1, ys + 1, true);
      if (!pair) continue;
      Graph out = flip(g, *pair);
      if (!decide_a(profile(out), codes)) {
        throw InvariantViolation("degree flip did not land in property A");
      }
      return {std::move(out), {true, *pair, AttackReason::code_flip_applied}, action};
    }
  }
  return {g, {false, std::nullopt, AttackReason::no_flip_found}, action};
}

}  // namespace antistoch
