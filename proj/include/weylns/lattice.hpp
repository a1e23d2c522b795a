#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weylns/checked.hpp"

namespace weylns {

/// The fibral lattice V_n of an I_n fiber: basis v_0..v_{n-1} indexed by
/// Z/nZ, with v_i^2 = -2, v_i.v_{i+1} = 1 and all other pairings zero.
/// Only n >= 3 is modelled; I_1 and I_2 have a different Gram matrix.
class FibralSpace {
public:
  explicit FibralSpace(int n);

  int size() const noexcept { return n_; }
  int wrap(long long i) const noexcept { return mod(i, n_); }
  /// Distance between residues along the cycle.
  int cyclic_distance(long long i, long long j) const noexcept;
  /// Gram entry <v_i, v_j>.
  Int gram(int i, int j) const noexcept;

  friend bool operator==(FibralSpace, FibralSpace) = default;

private:
  int n_;
};

class FibralVector {
public:
  explicit FibralVector(FibralSpace space) : space_(space), coeffs_(space.size(), 0) {}
  FibralVector(FibralSpace space, std::vector<Int> coeffs);

  static FibralVector basis(FibralSpace space, long long i);
  /// F = v_0 + ... + v_{n-1}.
  static FibralVector fiber(FibralSpace space);

  FibralSpace space() const noexcept { return space_; }
  int size() const noexcept { return space_.size(); }
  Int operator[](long long i) const { return coeffs_[space_.wrap(i)]; }
  Int& operator[](long long i) { return coeffs_[space_.wrap(i)]; }
  std::span<const Int> coeffs() const noexcept { return coeffs_; }
  std::span<Int> coeffs() noexcept { return coeffs_; }
  bool is_zero() const;

  FibralVector& operator+=(const FibralVector& o);
  FibralVector& operator-=(const FibralVector& o);
  FibralVector operator-() const;
  friend FibralVector operator+(FibralVector a, const FibralVector& b) { return a += b; }
  friend FibralVector operator-(FibralVector a, const FibralVector& b) { return a -= b; }
  friend FibralVector operator*(Int s, const FibralVector& v);
  friend bool operator==(const FibralVector&, const FibralVector&) = default;

private:
  FibralSpace space_;
  std::vector<Int> coeffs_;
};

/// Throws SpaceMismatch.
void require_same_space(FibralSpace a, FibralSpace b);

Int inner_product(const FibralVector& u, const FibralVector& v);

/// <x, v_k> for a raw coefficient array over V_n.
inline Int pair_with_basis(std::span<const Int> x, int k) {
  const int n = static_cast<int>(x.size());
  return add(add(mul(-2, x[k]), x[mod(k - 1, n)]), x[mod(k + 1, n)]);
}

/// In-place s_{v_k}: only coordinate k changes.
inline void reflect_basis_in_place(std::span<Int> x, int k) {
  const int n = static_cast<int>(x.size());
  x[k] = sub(add(x[mod(k - 1, n)], x[mod(k + 1, n)]), x[k]);
}

/// v(i, j): the sum of consecutive components walking positively from i to j.
/// Stored by its support (start residue plus length); start/end are derived.
class ArcRoot {
public:
  /// Throws InvalidArc unless 1 <= length <= n-1.
  ArcRoot(FibralSpace space, long long start, int length);

  FibralSpace space() const noexcept { return space_; }
  int start() const noexcept { return start_; }
  int end() const noexcept { return space_.wrap(start_ + length_ - 1); }
  int length() const noexcept { return length_; }
  std::vector<int> support() const;
  bool contains(long long residue) const noexcept;
  FibralVector to_vector() const;

  friend bool operator==(const ArcRoot&, const ArcRoot&) = default;

private:
  FibralSpace space_;
  int start_;
  int length_;
};

/// Arc from i to j inclusive. A walk of length n (j == i-1) is the fiber
/// class, not a root, and throws InvalidArc.
ArcRoot arc_root(FibralSpace space, long long i, long long j);

/// s_root(v) = v + <v, root> root. Throws NotARoot if root^2 != -2.
FibralVector reflect(const FibralVector& root, const FibralVector& v);

struct RootDecomposition {
  ArcRoot arc;
  Int r;
  friend bool operator==(const RootDecomposition&, const RootDecomposition&) = default;
};

/// Every (-2)-vector is uniquely arc + rF. Returns nullopt when v^2 != -2.
std::optional<RootDecomposition> classify_minus_two(const FibralVector& v);

/// "2·v0 + 1·v1 - 3·v4"; zero terms omitted, "0" for the zero vector.
std::string render(std::span<const Int> coeffs, char symbol = 'v');
inline std::string render(const FibralVector& v, char symbol = 'v') { return render(v.coeffs(), symbol); }

} // namespace weylns
