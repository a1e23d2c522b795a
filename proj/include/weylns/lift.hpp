#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "weylns/base_change.hpp"
#include "weylns/lattice.hpp"
#include "weylns/matrix.hpp"
#include "weylns/report.hpp"
#include "weylns/weyl.hpp"

namespace weylns {

/// I(n, e, k): the e arcs of length e in Z/(ne)Z whose support contains ek.
struct IndexSet {
  int n;
  int e;
  int k;
  std::vector<ArcRoot> arcs;
};

IndexSet index_set(int n, int e, int k);

/// Word for the reflection in an arc root, expanded by
/// s_{v(i,j)} = s_{v_j} s_{v(i,j-1)} s_{v_j}.
WeylWord arc_word(const ArcRoot& arc);

/// R^e_n(s_k), the product of the reflections in I(n, e, k).
struct LiftedGenerator {
  int n;
  int e;
  int k;
  WeylWord word;  // in W_{ne}
  IntMatrix matrix;
  /// Closed-form permutation ((k-1)e+m, ke+m), m = 1..e, in that order.
  std::vector<std::pair<int, int>> transpositions;

  Permutation closed_form() const;
  /// Renders the closed form in the listed order, e.g. "(5,1)(0,2)".
  std::string to_cycles() const;
};

LiftedGenerator lift_generator(int n, int e, int k);

/// S(v_j, e) from the recursion
///   U(j,0) = T(j,0) = s_{je}, U(j,i) = s_{je-i} s_{je+i},
///   T(j,i) = T(j,i-1) U(j,i), S(j,i) = T(j,i-1) S(j,i-1), S(j,0) = 1.
WeylWord lift_inductive(int n, int e, int j);

/// Closed-form permutation of S(v_j, k): (je-k+1, je+1) ... (je, je+k).
Permutation inductive_closed_form(int n, int e, int j, int k);

/// The letter-by-letter lifts of R^e_n, cached for repeated use.
class LiftTable {
public:
  LiftTable(int n, int e);

  int n() const noexcept { return n_; }
  int e() const noexcept { return e_; }
  FibralSpace target() const noexcept { return FibralSpace(n_ * e_); }
  const WeylWord& generator(int k) const { return words_.at(static_cast<std::size_t>(mod(k, n_))); }

  /// R^e_n applied letter by letter.
  WeylWord lift(const WeylWord& w) const;

  /// Test hook: replaces the lift of generator k by a wrong element (one
  /// arc reflection dropped, or s_{ek+1} appended when e == 1).
  void sabotage(int k);

private:
  int n_;
  int e_;
  std::vector<WeylWord> words_;
};

WeylWord lift_word(int n, int e, const WeylWord& w);

/// R^e_n(s_i)(p* v) == p*(s_i v) for every generator and basis vector.
Report verify_intertwining(const LiftTable& lifts);
/// Involution, commuting and order-3 relations among lifted generators.
Report verify_homomorphism(const LiftTable& lifts);
/// R^f_{ne}(R^e_n(x)) == R^{ef}_n(x) for every generator and `random_words`
/// seeded random words of length `word_length`.
Report verify_composition(const LiftTable& inner, const LiftTable& outer, const LiftTable& direct,
                          int random_words, int word_length, std::uint64_t seed);
/// The four closed forms for the action of R^e_n(s_j) on the w basis.
Report verify_closed_forms(const LiftTable& lifts);
/// Permutation closed forms for lifted generators, the inductive word and
/// lifted arc reflections, plus inductive == direct as group elements.
Report verify_permutation_forms(const LiftTable& lifts);

inline Report verify_intertwining(int n, int e) { return verify_intertwining(LiftTable(n, e)); }
inline Report verify_homomorphism(int n, int e) { return verify_homomorphism(LiftTable(n, e)); }
inline Report verify_closed_forms(int n, int e) { return verify_closed_forms(LiftTable(n, e)); }
inline Report verify_permutation_forms(int n, int e) { return verify_permutation_forms(LiftTable(n, e)); }
Report verify_composition(int n, int e, int f, int random_words = 0, int word_length = 6,
                          std::uint64_t seed = 0);

/// PL_b(s_k) over one singular point with an I_{n_t} fiber: one factor
/// R^{e_y}_{n_t}(s_k) per point y, each on its own fiber block.
struct PLLift {
  int n_t;
  int k;
  std::vector<int> local_degrees;
  std::vector<WeylWord> factors;  // factors[y] lives in W_{n_t e_y}
};

PLLift pl_lift(const std::vector<int>& local_degrees, int n_t, int k);
/// Throws InvalidProfile when the profile has no such point.
PLLift pl_lift(const RamificationProfile& profile, std::string_view point, int n_t, int k);

} // namespace weylns
