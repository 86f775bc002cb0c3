#include "antistoch/lowerbound.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "antistoch/error.hpp"

namespace antistoch {

namespace {

double log_binomial(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

// Frequency conditions (1)-(3) of a good degree, evaluated at y.
struct GoodnessRules {
  const SeqStats& s;
  double lnln;
  double floor34;

  [[nodiscard]] bool smooth(double ny, double other, double scale) const { return std::abs(ny - other) <= scale / lnln + 5; }

  [[nodiscard]] bool holds(std::int64_t y) const {
    const double ny = s.count(y);
    const double up = s.count(y + 1);
    const double down = s.count(y - 1);
    const bool c1 = ny >= floor34;
    const bool c2 = smooth(ny, up, ny);
    const bool c3 = smooth(ny, down, ny) || (smooth(ny, down, down) && down >= floor34);
    return c1 && c2 && c3;
  }
};

}  // namespace

SeqStats SeqStats::of(std::span<const std::size_t> degrees) {
  SeqStats s;
  s.n = degrees.size();
  s.degrees.assign(degrees.begin(), degrees.end());
  s.counts.assign(s.n, 0);
  double sum = 0.0;
  for (auto d : degrees) {
    if (d >= s.n) throw InputError("degree " + std::to_string(d) + " exceeds n-1");
    ++s.counts[d];
    sum += static_cast<double>(d);
  }
  if (s.n == 0) return s;
  s.mean = sum / static_cast<double>(s.n);
  s.mu = s.n > 1 ? s.mean / static_cast<double>(s.n - 1) : 0.0;
  double ss = 0.0;
  for (auto d : degrees) ss += (static_cast<double>(d) - s.mean) * (static_cast<double>(d) - s.mean);
  s.gamma = s.n > 1 ? ss / (static_cast<double>(s.n - 1) * static_cast<double>(s.n - 1)) : 0.0;
  return s;
}

double SeqStats::count(std::int64_t y) const noexcept {
  if (y < 0 || y >= static_cast<std::int64_t>(counts.size())) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(y)]);
}

ThresholdSet ThresholdSet::of(std::size_t n) {
  if (n < 150) throw DomainError("threshold set needs n >= 150 (got " + std::to_string(n) + ")");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  const double lnln = std::log(ln);
  const double ln2pi = std::log(2 * std::numbers::pi);
  ThresholdSet t;
  t.n = n;
  t.zeta1 = (ln2pi + 1.5 * lnln) / ln;
  t.zeta2 = (ln2pi + 2.5 * lnln) / ln;
  t.a = std::sqrt(nn * ln / 2);
  t.b = 0.5 * std::sqrt(nn * ln * (1 - t.zeta1));
  t.c = 0.5 * std::sqrt(nn * ln * (1 - t.zeta2));
  if (!(t.a > t.b && t.b > t.c && t.c > 0)) {
    throw DomainError("thresholds violate a > b > c > 0 at n=" + std::to_string(n) + " (needs n >= 685)");
  }
  return t;
}

double log_g_estimate(const SeqStats& s) {
  if (!(s.mu > 0.0 && s.mu < 1.0)) throw DomainError("log_g_estimate needs 0 < mu < 1");
  std::size_t sum = 0;
  for (auto d : s.degrees) sum += d;
  if (sum % 2 != 0) throw DomainError("degree sum is odd");
  const double n = static_cast<double>(s.n);
  const double mu = s.mu;
  const double spread = s.gamma * s.gamma / (4 * mu * mu * (1 - mu) * (1 - mu));
  const double entropy = mu * std::log(mu) + (1 - mu) * std::log(1 - mu);
  double binomials = 0.0;
  for (std::size_t y = 0; y < s.counts.size(); ++y) {
    if (s.counts[y] != 0) binomials += static_cast<double>(s.counts[y]) * log_binomial(n - 1, static_cast<double>(y));
  }
  return 0.5 * std::log(2.0) + 0.25 - spread + (n * (n - 1) / 2) * entropy + binomials;
}

double log_p(const SeqStats& s) {
  double v = std::lgamma(static_cast<double>(s.n) + 1);
  for (auto c : s.counts) v -= std::lgamma(static_cast<double>(c) + 1);
  return v;
}

std::vector<DegreeClass> classify_degrees(const SeqStats& s, const ThresholdSet& t) {
  const double ln = std::log(static_cast<double>(s.n));
  const GoodnessRules rules{s, std::log(ln), std::pow(ln, 0.75) - 2};
  const double half = static_cast<double>(s.n) / 2;
  std::vector<DegreeClass> out(s.n, DegreeClass::bad);
  for (std::size_t d = 0; d < s.n; ++d) {
    const auto y = static_cast<std::int64_t>(d);
    const double off = std::abs(static_cast<double>(d) - half);
    if (off > t.b || !rules.holds(y)) continue;
    out[d] = DegreeClass::good;
    if (off <= t.b - 1 && rules.holds(y - 1) && rules.holds(y + 1)) out[d] = DegreeClass::very_good;
  }
  return out;
}

std::array<bool, 4> check_P_conditions(const SeqStats& s, const ThresholdSet& t) {
  const double n = static_cast<double>(s.n);
  const double ln = std::log(n);
  const double lnln = std::log(ln);
  const double half = n / 2;
  const GoodnessRules rules{s, lnln, std::pow(ln, 0.75) - 2};

  bool p1 = true;
  std::size_t outside_b = 0;
  std::size_t p4_exceptions = 0;
  for (auto d : s.degrees) {
    const double off = std::abs(static_cast<double>(d) - half);
    if (!(off < t.a + 1)) p1 = false;
    if (off > t.b) ++outside_b;
    if (off >= t.c && off <= t.b) {
      bool ok = true;
      for (std::int64_t y = static_cast<std::int64_t>(d) - 1; y <= static_cast<std::int64_t>(d) + 1; ++y) {
        const double ny = s.count(y);
        ok = ok && ny >= rules.floor34 && rules.smooth(ny, s.count(y + 1), ny) && rules.smooth(ny, s.count(y - 1), ny);
      }
      if (!ok) ++p4_exceptions;
    }
  }
  const bool p2 = static_cast<double>(outside_b) <= 4 * std::sqrt(n) * std::pow(ln, 0.25) + 2;
  const bool p4 = static_cast<double>(p4_exceptions) <= std::sqrt(n) + 2;

  bool p3 = true;
  const double floor54 = std::pow(ln, 1.25) - 2;
  const double cap = ln * ln + 2;
  for (std::int64_t y = 0; y < static_cast<std::int64_t>(s.n); ++y) {
    const double off = std::abs(static_cast<double>(y) - half);
    const double ny = s.count(y);
    if (off < t.c + 1) {
      if (!(ny >= floor54 && rules.smooth(ny, s.count(y + 1), ny))) p3 = false;
    }
    if (off >= t.c && off <= t.b && ny > cap) p3 = false;
  }
  return {p1, p2, p3, p4};
}

std::array<bool, 5> check_degree_range(const Graph& g, const ThresholdSet& t) {
  const std::size_t n = g.order();
  if (n != t.n) throw InputError("threshold set built for a different n");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  const double lnln = std::log(ln);
  const double half = nn / 2;
  const auto deg = g.degrees();
  const SeqStats s = SeqStats::of(deg);

  std::array<bool, 5> parts{true, true, true, true, true};

  std::size_t beyond_b = 0;
  std::size_t part4_exceptions = 0;
  const double floor34 = std::pow(ln, 0.75);
  auto smooth = [&](double ny, double other) { return std::abs(ny - other) <= ny / lnln; };
  for (auto d : deg) {
    const double off = std::abs(static_cast<double>(d) - half);
    if (!(off < t.a)) parts[0] = false;
    if (off > t.b) ++beyond_b;
    if (off >= t.c && off <= t.b) {
      bool ok = true;
      for (std::int64_t y = static_cast<std::int64_t>(d) - 1; y <= static_cast<std::int64_t>(d) + 1; ++y) {
        const double ny = s.count(y);
        ok = ok && ny >= floor34 && smooth(ny, s.count(y + 1)) && smooth(ny, s.count(y - 1));
      }
      if (!ok) ++part4_exceptions;
    }
  }
  parts[1] = static_cast<double>(beyond_b) <= 4 * std::sqrt(nn) * std::pow(ln, 0.25);
  parts[3] = static_cast<double>(part4_exceptions) <= std::sqrt(nn);

  const double floor54 = std::pow(ln, 1.25);
  const double cap = ln * ln;
  for (std::int64_t y = 0; y < static_cast<std::int64_t>(n); ++y) {
    const double off = std::abs(static_cast<double>(y) - half);
    const double ny = s.count(y);
    if (off < t.c + 1 && !(ny >= floor54 && smooth(ny, s.count(y + 1)))) parts[2] = false;
    if (off >= t.c - 2 && off <= t.b + 2 && ny > cap) parts[2] = false;
  }

  // Part 5: every pair of present degrees within the window (+1) must have
  // both an adjacent and a non-adjacent representative pair.
  const double reach = 0.5 * std::sqrt(nn * (ln - 2 * std::sqrt(ln))) + 1;
  std::vector<std::size_t> in_range;
  for (std::size_t y = 0; y < n; ++y) {
    if (s.counts[y] != 0 && std::abs(static_cast<double>(y) - half) <= reach) in_range.push_back(y);
  }
  std::vector<std::ptrdiff_t> bucket_of(n, -1);
  for (std::size_t b = 0; b < in_range.size(); ++b) bucket_of[in_range[b]] = static_cast<std::ptrdiff_t>(b);
  std::vector<VertexMask> masks(in_range.size(), VertexMask(n));
  for (std::size_t v = 1; v <= n; ++v) {
    if (bucket_of[deg[v - 1]] >= 0) masks[static_cast<std::size_t>(bucket_of[deg[v - 1]])].insert(v);
  }
  const std::size_t buckets = in_range.size();
  // edges[a*buckets+b] = number of ordered (u,v) with u in a, v in b, u~v.
  std::vector<std::size_t> edges(buckets * buckets, 0);
  for (std::size_t v = 1; v <= n; ++v) {
    const auto bv = bucket_of[deg[v - 1]];
    if (bv < 0) continue;
    const auto row = g.row(v);
    for (std::size_t b = 0; b < buckets; ++b) edges[static_cast<std::size_t>(bv) * buckets + b] += masks[b].count_in(row);
  }
  for (std::size_t a = 0; a < buckets && parts[4]; ++a) {
    for (std::size_t b = a; b < buckets; ++b) {
      const std::size_t na = s.counts[in_range[a]];
      const std::size_t nb = s.counts[in_range[b]];
      const std::size_t pairs = a == b ? na * (na - 1) / 2 : na * nb;
      const std::size_t adjacent = a == b ? edges[a * buckets + a] / 2 : edges[a * buckets + b];
      if (adjacent == 0 || adjacent == pairs) {
        parts[4] = false;
        break;
      }
    }
  }
  return parts;
}

}  // namespace antistoch
