#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weylns/lattice.hpp"
#include "weylns/matrix.hpp"
#include "weylns/report.hpp"

namespace weylns {

/// p^*: V_n -> V_{ne} for a base change totally ramified of degree e at the
/// singular point:
///   v_k -> e w_{ek} + sum_{0<j<e} (e-j)(w_{ek-j} + w_{ek+j}).
/// The strict transform of v_k is the component w_{ek}.
FibralVector pullback_local(int e, const FibralVector& v);

/// Image of a basis vector v_k as a vector of V_{ne}.
FibralVector pullback_basis(FibralSpace source, int e, int k);

/// Matrix of pullback_local, (ne) x n.
IntMatrix pullback_matrix(int n, int e);

/// <p*x, p*y> = e <x, y> on `trials` seeded random pairs in V_n.
Report verify_pullback_scaling(int n, int e, int trials, std::uint64_t seed);

/// pullback(f) o pullback(e) == pullback(ef) as maps V_n -> V_{nef}.
Report verify_pullback_composition(int n, int e, int f);

/// Local ramification degrees of a finite base change over each singular
/// point. Every point's degrees sum to the same global degree d.
class RamificationProfile {
public:
  struct Point {
    std::string name;
    std::vector<int> degrees;
    friend bool operator==(const Point&, const Point&) = default;
  };

  /// Throws InvalidProfile on an empty point, a degree < 1, or unequal sums.
  explicit RamificationProfile(std::vector<Point> points);

  /// Parses "t0:[2,1];t1:[3]".
  static RamificationProfile parse(std::string_view text);
  /// The same local degrees over every named point.
  static RamificationProfile uniform(const std::vector<std::string>& names, std::vector<int> degrees);

  int degree() const noexcept { return degree_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  /// Throws InvalidProfile if the point is absent.
  const std::vector<int>& degrees_at(std::string_view name) const;

  std::string to_string() const;
  friend bool operator==(const RamificationProfile&, const RamificationProfile&) = default;

private:
  std::vector<Point> points_;
  int degree_ = 0;
};

/// Fiber sizes n_t * e_y over each point y lying over a singular point with
/// an I_{n_t} fiber.
std::vector<int> fiber_type_after(const std::vector<int>& local_degrees, int n_t);

} // namespace weylns
