#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "weylns/report.hpp"

namespace weylns {

inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr int kMaxN = 8;
inline constexpr int kMaxDegree = 4;

/// Inclusive integer range, written "3..8" or "5".
struct Range {
  int lo = 0;
  int hi = 0;
  static Range parse(std::string_view text);
  std::string to_string() const;
  friend bool operator==(const Range&, const Range&) = default;
};

enum class Family { Presentation, Intertwining, Homomorphism, Composition, ClosedForms, Permutation, Scaling };

std::string_view to_string(Family f);
Family parse_family(std::string_view name);
std::vector<Family> all_families();

struct SweepSpec {
  Range n{3, kMaxN};
  Range e{1, kMaxDegree};
  Range f{1, kMaxDegree};
  std::vector<Family> families = all_families();
  std::uint64_t seed = kDefaultSeed;
  int words = 100;        // random words per composition cell
  int word_length = 6;
  int trials = 1000;      // random pairs per scaling cell
  std::optional<int> sabotage;
  unsigned jobs = 1;
  bool unbounded = false;

  /// Throws InvalidParameters for empty ranges, n < 3, degrees < 1, or
  /// ranges past the documented bounds without `unbounded`.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Runs every selected family over the grid. Records are delivered to
/// `on_record` in grid order as soon as each cell is done; the returned
/// report has the same order regardless of `jobs`.
Report run_sweep(const SweepSpec& spec, const std::function<void(const CheckRecord&)>& on_record = {});

/// {"schema":"weylns/1","spec":...,"summary":...,"records":[...]}
nlohmann::json report_document(const SweepSpec& spec, const Report& report);

} // namespace weylns
