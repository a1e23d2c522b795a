#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weylns/lattice.hpp"
#include "weylns/matrix.hpp"
#include "weylns/report.hpp"

namespace weylns {

/// A word in the generators s_0..s_{n-1} of the affine Weyl group W_n.
/// Letters are composed right to left: the leftmost letter acts last.
class WeylWord {
public:
  explicit WeylWord(FibralSpace space) : space_(space) {}
  WeylWord(FibralSpace space, std::vector<int> letters);

  /// Parses "0,1,2,1"; the empty string is the identity.
  static WeylWord parse(FibralSpace space, std::string_view text);

  FibralSpace space() const noexcept { return space_; }
  const std::vector<int>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// Word for the inverse element (generators are involutions).
  WeylWord inverse() const;
  WeylWord& append(const WeylWord& right);
  WeylWord& append_letter(int k);
  friend WeylWord operator*(WeylWord a, const WeylWord& b) { return a.append(b); }

  std::string to_string() const;
  friend bool operator==(const WeylWord&, const WeylWord&) = default;

private:
  FibralSpace space_;
  std::vector<int> letters_;
};

/// Applies the word to a raw coefficient array of V_n in place.
void act_in_place(std::span<const int> letters, std::span<Int> x);

FibralVector act(const WeylWord& w, const FibralVector& v);

/// Matrix of the word on V_n: column j is the image of v_j.
IntMatrix matrix_of(const WeylWord& w);

/// Permutation of a finite set {0..m-1}; composition (p*q)(x) = p(q(x)).
class Permutation {
public:
  explicit Permutation(int size);
  explicit Permutation(std::vector<int> images);

  static Permutation transposition(int size, int a, int b);
  /// Product of the given transpositions (disjoint or not), leftmost last.
  static Permutation from_transpositions(int size, const std::vector<std::pair<int, int>>& ts);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  bool is_identity() const;
  const std::vector<int>& images() const noexcept { return images_; }

  /// Canonical cycle notation "(0,2)(1,5)", fixed points omitted, "()" for id.
  std::string to_cycles() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> images_;
};

/// Realization s_k -> (k, k+1) on Z/nZ. A homomorphism with infinite kernel.
Permutation to_permutation(const WeylWord& w);

/// Equality in W_n, decided by the faithful matrix action on V_n.
bool equal_elements(const WeylWord& a, const WeylWord& b);

/// Coxeter exponent m_ij for W_n (cyclic distance).
int coxeter_exponent(int n, int i, int j);

/// Checks (s_i s_j)^{m_ij} = 1 in the matrix realization for all i <= j.
Report check_presentation(int n);

} // namespace weylns
