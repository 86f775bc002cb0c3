#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "antistoch/graph.hpp"

namespace antistoch {

/// Summary statistics of a labeled degree sequence.
struct SeqStats {
  std::size_t n = 0;
  std::vector<std::size_t> degrees;
  double mean = 0.0;
  /// mean / (n - 1)
  double mu = 0.0;
  /// (n-1)^-2 * sum (d_i - mean)^2
  double gamma = 0.0;
  /// counts[y] = n_y for y in 0..n-1
  std::vector<std::size_t> counts;

  [[nodiscard]] static SeqStats of(std::span<const std::size_t> degrees);
  [[nodiscard]] static SeqStats of(const Graph& g) { return of(g.degrees()); }

  /// n_y, zero outside 0..n-1.
  [[nodiscard]] double count(std::int64_t y) const noexcept;
};

/// Constants of the degree-frequency conditions for a given n (n >= 150).
struct ThresholdSet {
  std::size_t n = 0;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  /// Throws DomainError for n < 150 or if a > b > c > 0 fails.
  [[nodiscard]] static ThresholdSet of(std::size_t n);
};

/// Natural log of the asymptotic count of labeled graphs with the given degree sequence:
///   sqrt(2) exp(1/4 - gamma^2 / (4 mu^2 (1-mu)^2)) (mu^mu (1-mu)^(1-mu))^(n(n-1)/2) prod C(n-1, d_i).
/// Throws DomainError when mu is 0 or 1 or the degree sum is odd.
[[nodiscard]] double log_g_estimate(const SeqStats& s);

/// ln( n! / prod_y n_y! ), the number of distinct rearrangements of the sequence.
[[nodiscard]] double log_p(const SeqStats& s);

enum class DegreeClass : std::uint8_t { bad, good, very_good };

[[nodiscard]] constexpr bool is_good(DegreeClass c) noexcept { return c != DegreeClass::bad; }

/// Classification of every degree y in 0..n-1 (very_good implies good).
[[nodiscard]] std::vector<DegreeClass> classify_degrees(const SeqStats& s, const ThresholdSet& t);

/// Literal evaluation of conditions P1..P4 on a degree sequence.
[[nodiscard]] std::array<bool, 4> check_P_conditions(const SeqStats& s, const ThresholdSet& t);

/// Literal evaluation of the five whp degree-range statements on a graph.
/// Part 5 only considers pairs of degrees that occur in g.
[[nodiscard]] std::array<bool, 5> check_degree_range(const Graph& g, const ThresholdSet& t);

}  // namespace antistoch
