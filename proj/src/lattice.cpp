#include "weylns/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "weylns/error.hpp"

namespace weylns {

FibralSpace::FibralSpace(int n) : n_(n) {
  if (n < 3) throw Error(ErrorCode::InvalidParameters, "fibral space needs n >= 3, got " + std::to_string(n));
}

int FibralSpace::cyclic_distance(long long i, long long j) const noexcept {
  const int d = mod(j - i, n_);
  return std::min(d, n_ - d);
}

Int FibralSpace::gram(int i, int j) const noexcept {
  const int d = cyclic_distance(i, j);
  return d == 0 ? -2 : d == 1 ? 1 : 0;
}

FibralVector::FibralVector(FibralSpace space, std::vector<Int> coeffs) : space_(space), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != space.size())
    throw Error(ErrorCode::SpaceMismatch, "expected " + std::to_string(space.size()) + " coefficients, got " +
                                              std::to_string(coeffs_.size()));
}

FibralVector FibralVector::basis(FibralSpace space, long long i) {
  FibralVector v(space);
  v[i] = 1;
  return v;
}

FibralVector FibralVector::fiber(FibralSpace space) {
  return FibralVector(space, std::vector<Int>(space.size(), 1));
}

bool FibralVector::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Int c) { return c == 0; });
}

FibralVector& FibralVector::operator+=(const FibralVector& o) {
  require_same_space(space_, o.space_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = add(coeffs_[i], o.coeffs_[i]);
  return *this;
}

FibralVector& FibralVector::operator-=(const FibralVector& o) {
  require_same_space(space_, o.space_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = sub(coeffs_[i], o.coeffs_[i]);
  return *this;
}

FibralVector FibralVector::operator-() const { return -1 * *this; }

FibralVector operator*(Int s, const FibralVector& v) {
  FibralVector out = v;
  for (auto& c : out.coeffs_) c = mul(s, c);
  return out;
}

void require_same_space(FibralSpace a, FibralSpace b) {
  if (a != b)
    throw Error(ErrorCode::SpaceMismatch, "V_" + std::to_string(a.size()) + " vs V_" + std::to_string(b.size()));
}

Int inner_product(const FibralVector& u, const FibralVector& v) {
  require_same_space(u.space(), v.space());
  Int acc = 0;
  for (int k = 0; k < u.size(); ++k)
    if (u[k] != 0) acc = fma(acc, u[k], pair_with_basis(v.coeffs(), k));
  return acc;
}

ArcRoot::ArcRoot(FibralSpace space, long long start, int length)
    : space_(space), start_(space.wrap(start)), length_(length) {
  if (length < 1 || length > space.size() - 1)
    throw Error(ErrorCode::InvalidArc, "arc length " + std::to_string(length) + " outside [1, " +
                                           std::to_string(space.size() - 1) + "]");
}

std::vector<int> ArcRoot::support() const {
  std::vector<int> s;
  s.reserve(length_);
  for (int m = 0; m < length_; ++m) s.push_back(space_.wrap(start_ + m));
  return s;
}

bool ArcRoot::contains(long long residue) const noexcept {
  return mod(residue - start_, space_.size()) < length_;
}

FibralVector ArcRoot::to_vector() const {
  FibralVector v(space_);
  for (int m = 0; m < length_; ++m) v[start_ + m] = 1;
  return v;
}

ArcRoot arc_root(FibralSpace space, long long i, long long j) {
  return ArcRoot(space, i, mod(j - i, space.size()) + 1);
}

FibralVector reflect(const FibralVector& root, const FibralVector& v) {
  if (inner_product(root, root) != -2) throw Error(ErrorCode::NotARoot, render(root) + " has square != -2");
  return v + inner_product(v, root) * root;
}

std::optional<RootDecomposition> classify_minus_two(const FibralVector& v) {
  if (inner_product(v, v) != -2) return std::nullopt;
  const auto c = v.coeffs();
  const Int r = *std::min_element(c.begin(), c.end());
  const int n = v.size();
  // The larger value r+1 occupies one cyclic interval; find where it starts.
  int start = -1;
  int length = 0;
  for (int i = 0; i < n; ++i) {
    const Int d = sub(c[i], r);
    if (d > 1) return std::nullopt;
    if (d == 1) {
      ++length;
      if (c[mod(i - 1, n)] == r) {
        if (start != -1) return std::nullopt;
        start = i;
      }
    }
  }
  if (start == -1 || length == 0 || length == n) return std::nullopt;
  ArcRoot arc(v.space(), start, length);
  if (arc.to_vector() + r * FibralVector::fiber(v.space()) != v) return std::nullopt;
  return RootDecomposition{arc, r};
}

std::string render(std::span<const Int> coeffs, char symbol) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Int c = coeffs[i];
    if (c == 0) continue;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    os << (c < 0 ? -c : c) << "·" << symbol << i;
    first = false;
  }
  return first ? "0" : os.str();
}

} // namespace weylns
