#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "weylns/base_change.hpp"
#include "weylns/checked.hpp"
#include "weylns/matrix.hpp"
#include "weylns/weyl.hpp"

namespace weylns {

struct FiberSpec {
  std::string name;
  int n = 0;
  friend bool operator==(const FiberSpec&, const FiberSpec&) = default;
};

/// A tracked section. Components name the fibral component met at each
/// singular fiber (absent means the identity component). `mw` locates the
/// section in the declared Mordell-Weil group; without it the section takes
/// no part in translations.
struct SectionSpec {
  std::string name;
  std::map<std::string, int> components;
  std::optional<int> order;
  std::map<std::string, Int> pairings;
  std::optional<std::vector<Int>> mw;
  friend bool operator==(const SectionSpec&, const SectionSpec&) = default;
};

/// Abstract group Z^rank + Z/torsion[0] + ... carrying the `mw` coordinates.
struct MordellWeilSpec {
  int rank = 0;
  std::vector<int> torsion;
  friend bool operator==(const MordellWeilSpec&, const MordellWeilSpec&) = default;
};

/// Section handle: kZero is O, otherwise an index into sections().
using SectionRef = int;
inline constexpr SectionRef kZero = -1;

/// Discrete data of a semistable elliptic surface with I_n fibers (n >= 3).
class SurfaceConfig {
public:
  /// Validates and completes the data. Pairings missing from the input are
  /// derived from translation invariance where possible.
  /// Throws ConfigSmallFiber, ConfigInvalidDivisibility, TorsionCollision or
  /// ConfigInvalid.
  SurfaceConfig(std::vector<FiberSpec> fibers, std::vector<SectionSpec> sections,
                std::optional<MordellWeilSpec> mordell_weil = std::nullopt);

  Int chi() const noexcept { return chi_; }
  const std::vector<FiberSpec>& fibers() const noexcept { return fibers_; }
  const std::vector<SectionSpec>& sections() const noexcept { return sections_; }
  const std::optional<MordellWeilSpec>& mordell_weil() const noexcept { return mordell_weil_; }

  /// Throws ConfigInvalid for unknown names.
  int fiber_index(std::string_view name) const;
  SectionRef section_ref(std::string_view name) const;
  std::string section_name(SectionRef s) const;

  /// Component residue of a section at fiber t (0 for O).
  int component(SectionRef s, int t) const;
  /// Intersection number of two sections, including O and self-pairings.
  Int pairing(SectionRef a, SectionRef b) const;
  bool is_torsion(SectionRef s) const;

  /// Group law on tracked sections; nullopt when the result is not tracked
  /// or a section has no group coordinates.
  std::optional<SectionRef> sum(SectionRef a, SectionRef b) const;
  std::optional<SectionRef> negate(SectionRef a) const;

  /// Sections meeting the identity component at every singular fiber.
  bool is_narrow(SectionRef s) const;

  friend bool operator==(const SurfaceConfig&, const SurfaceConfig&) = default;

private:
  std::optional<std::vector<Int>> coords(SectionRef s) const;
  std::optional<SectionRef> find_coords(const std::vector<Int>& c) const;
  void complete_pairings();

  std::vector<FiberSpec> fibers_;
  std::vector<SectionSpec> sections_;
  std::optional<MordellWeilSpec> mordell_weil_;
  Int chi_ = 0;
};

/// A divisor class as coefficients over an NSLattice basis.
struct NSDivisor {
  std::vector<Int> coeffs;
  friend bool operator==(const NSDivisor&, const NSDivisor&) = default;
};

/// The lattice model: basis O, F, v^t_i (1 <= i < n_t) per fiber, then one
/// vector per tracked section. v^t_0 is the derived class F - sum v^t_i.
class NSLattice {
public:
  explicit NSLattice(SurfaceConfig config);

  const SurfaceConfig& config() const noexcept { return config_; }
  std::size_t dim() const noexcept { return labels_.size(); }
  const IntMatrix& gram() const noexcept { return gram_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// 2 + sum (n_t - 1).
  std::size_t trivial_rank() const noexcept { return trivial_rank_; }

  static constexpr std::size_t kO = 0;
  static constexpr std::size_t kF = 1;
  /// Basis index of v^t_i for i != 0 mod n_t.
  std::size_t fibral_index(int t, int i) const;
  std::size_t section_index(SectionRef s) const;

  std::vector<Int> zero() const { return std::vector<Int>(dim(), 0); }
  std::vector<Int> fiber_class() const;
  /// v^t_i for any residue, the derived class included.
  std::vector<Int> component(int t, long long i) const;
  std::vector<Int> section(SectionRef s) const;

  Int pair(std::span<const Int> x, std::span<const Int> y) const { return bilinear(gram_, x, y); }

  /// The fibral block t in V_{n_t} coordinates, when x lies in span(F, v^t_*).
  std::optional<std::vector<Int>> fibral_coordinates(int t, std::span<const Int> x) const;
  /// Inverse of fibral_coordinates.
  std::vector<Int> from_fibral(int t, std::span<const Int> a) const;

  /// Parses "O + 2F + v[t0,1] - 3v[t1,2] + (P)". Throws ParseError.
  NSDivisor parse(std::string_view text) const;
  std::string render(const NSDivisor& d) const;

private:
  SurfaceConfig config_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> fiber_offset_;
  std::size_t section_offset_ = 0;
  std::size_t trivial_rank_ = 0;
  IntMatrix gram_;
};

NSLattice build_ns(const SurfaceConfig& config);

/// The [O, F] block [[-chi, 1], [1, 0]] and a unimodular change of basis
/// bringing it to diag(1, -1) (chi odd) or the hyperbolic plane (chi even).
struct HyperbolicBlock {
  Int chi;
  bool odd;
  IntMatrix gram;          // in the (O, F) basis
  IntMatrix basis_change;  // columns are the new basis in (O, F) coordinates
  IntMatrix reduced;       // basis_change^T gram basis_change
};

HyperbolicBlock of_block(Int chi);

/// Where a fiber of a pulled-back surface came from.
struct FiberOrigin {
  int source_fiber;
  int local_degree;
};

struct NSPullback {
  SurfaceConfig config;
  std::vector<FiberOrigin> origins;  // per fiber of `config`
  int degree;
  IntMatrix map;  // dim(NS_b) x dim(NS)
};

/// Base change along a profile: fibers I_{n_t e_y} named "<t>.<y>", chi
/// scaled by d, sections keep their names with components c_t e_y and
/// pairings scaled by d. Throws InvalidProfile.
NSPullback pullback_ns(const SurfaceConfig& config, const RamificationProfile& profile);

/// eps o (prod_t PL(x_t)) o tau_P o iota.
struct UniversalIsometry {
  int sign = 1;
  std::map<std::string, WeylWord> weyl;  // fiber name -> word in W_{n_t}
  std::optional<std::string> translate;
  bool invert = false;

  static UniversalIsometry identity() { return {}; }
  /// Weyl parts trivial and sign +1.
  bool effective() const;
};

nlohmann::json to_json(const UniversalIsometry& iso);
/// Throws ParseError.
UniversalIsometry isometry_from_json(const SurfaceConfig& config, const nlohmann::json& j);

/// Matrix of the isometry on NS(X). Throws UntrackedTranslate when a
/// translate or inverse of a tracked section is not tracked.
IntMatrix isometry_matrix(const NSLattice& lattice, const UniversalIsometry& iso);
/// Matrix of the same universal isometry on NS(X_b) after a base change.
IntMatrix isometry_matrix(const SurfaceConfig& base, const UniversalIsometry& iso,
                          const RamificationProfile& profile);

/// Applies the isometry to D in NS(X), or in NS(X_b) when `after` is given.
NSDivisor act_isometry(const SurfaceConfig& base, const UniversalIsometry& iso, const NSDivisor& d,
                       const std::optional<RamificationProfile>& after = std::nullopt);

struct Classification {
  enum class Kind { Universal, NotUniversal, NotIsometry };
  Kind kind = Kind::NotIsometry;
  std::optional<UniversalIsometry> isometry;
  bool effective = false;
  std::string reason;
};

/// Recovers the canonical form of an integer matrix on the NS basis.
/// Throws ShapeError when M is not dim x dim.
Classification classify_isometry(const NSLattice& lattice, const IntMatrix& m);

struct TorelliReport {
  bool fiber_preserved = false;
  bool zero_section_preserved = false;
  bool components_to_components = false;
  bool sections_to_sections = false;
  bool all() const {
    return fiber_preserved && zero_section_preserved && components_to_components && sections_to_sections;
  }
};

/// Throws NotIsometry (or ShapeError).
TorelliReport check_torelli_hypotheses(const NSLattice& lattice, const IntMatrix& m);

/// Membership in the cone generated by F, every component v^t_i (derived
/// v^t_0 included), O and the tracked sections. Sound, not complete.
bool is_effective_class(const NSLattice& lattice, const NSDivisor& d);

/// -sum (a_i - a_{i+1})^2 + 2 a_j over Z/nZ; never positive.
/// Throws PreconditionViolated unless a_0 == 0 and a has n entries.
Int fibral_bound(int n, std::span<const Int> a, int j);

} // namespace weylns
