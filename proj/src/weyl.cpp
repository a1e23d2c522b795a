#include "weylns/weyl.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "weylns/error.hpp"

namespace weylns {

WeylWord::WeylWord(FibralSpace space, std::vector<int> letters) : space_(space), letters_(std::move(letters)) {
  for (int k : letters_)
    if (k < 0 || k >= space_.size())
      throw Error(ErrorCode::InvalidParameters,
                  "letter " + std::to_string(k) + " outside Z/" + std::to_string(space_.size()));
}

WeylWord WeylWord::parse(FibralSpace space, std::string_view text) {
  std::vector<int> letters;
  std::size_t pos = 0;
  auto skip_blank = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '[' || text[pos] == ']')) ++pos;
  };
  skip_blank();
  while (pos < text.size()) {
    int k = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), k);
    if (ec != std::errc())
      throw Error(ErrorCode::ParseError, "bad word literal '" + std::string(text) + "' at offset " + std::to_string(pos));
    pos = static_cast<std::size_t>(ptr - text.data());
    letters.push_back(space.wrap(k));
    skip_blank();
    if (pos < text.size()) {
      if (text[pos] != ',')
        throw Error(ErrorCode::ParseError, "expected ',' in word literal at offset " + std::to_string(pos));
      ++pos;
      skip_blank();
    }
  }
  return WeylWord(space, std::move(letters));
}

WeylWord WeylWord::inverse() const {
  WeylWord w = *this;
  std::reverse(w.letters_.begin(), w.letters_.end());
  return w;
}

WeylWord& WeylWord::append(const WeylWord& right) {
  require_same_space(space_, right.space_);
  letters_.insert(letters_.end(), right.letters_.begin(), right.letters_.end());
  return *this;
}

WeylWord& WeylWord::append_letter(int k) {
  letters_.push_back(space_.wrap(k));
  return *this;
}

std::string WeylWord::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) os << (i ? "," : "") << letters_[i];
  return os.str();
}

void act_in_place(std::span<const int> letters, std::span<Int> x) {
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) reflect_basis_in_place(x, *it);
}

FibralVector act(const WeylWord& w, const FibralVector& v) {
  require_same_space(w.space(), v.space());
  FibralVector out = v;
  act_in_place(w.letters(), out.coeffs());
  return out;
}

IntMatrix matrix_of(const WeylWord& w) {
  const int n = w.space().size();
  IntMatrix m(n, n);
  std::vector<Int> x(n);
  for (int j = 0; j < n; ++j) {
    std::fill(x.begin(), x.end(), 0);
    x[j] = 1;
    act_in_place(w.letters(), x);
    for (int i = 0; i < n; ++i) m(i, j) = x[i];
  }
  return m;
}

Permutation::Permutation(int size) : images_(size) {
  for (int i = 0; i < size; ++i) images_[i] = i;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || x >= size() || seen[x]) throw Error(ErrorCode::InvalidParameters, "not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::transposition(int size, int a, int b) {
  Permutation p(size);
  a = mod(a, size);
  b = mod(b, size);
  std::swap(p.images_[a], p.images_[b]);
  return p;
}

Permutation Permutation::from_transpositions(int size, const std::vector<std::pair<int, int>>& ts) {
  Permutation p(size);
  for (const auto& [a, b] : ts) p = p * transposition(size, a, b);
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Permutation::to_cycles() const {
  std::ostringstream os;
  std::vector<bool> done(images_.size(), false);
  for (int i = 0; i < size(); ++i) {
    if (done[i] || images_[i] == i) continue;
    os << '(';
    for (int x = i; !done[x]; x = images_[x]) {
      os << (x == i ? "" : ",") << x;
      done[x] = true;
    }
    os << ')';
  }
  const std::string s = os.str();
  return s.empty() ? "()" : s;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::SpaceMismatch, "permutations of different sets");
  std::vector<int> images(p.images_.size());
  for (int i = 0; i < p.size(); ++i) images[i] = p.images_[q.images_[i]];
  Permutation out(p.size());
  out.images_ = std::move(images);
  return out;
}

Permutation to_permutation(const WeylWord& w) {
  const int n = w.space().size();
  Permutation p(n);
  for (int k : w.letters()) p = p * Permutation::transposition(n, k, k + 1);
  return p;
}

bool equal_elements(const WeylWord& a, const WeylWord& b) {
  require_same_space(a.space(), b.space());
  return matrix_of(a) == matrix_of(b);
}

int coxeter_exponent(int n, int i, int j) {
  const int d = FibralSpace(n).cyclic_distance(i, j);
  return d == 0 ? 1 : d == 1 ? 3 : 2;
}

Report check_presentation(int n) {
  const FibralSpace space(n);
  Report report;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int m = coxeter_exponent(n, i, j);
      WeylWord w(space);
      for (int r = 0; r < m; ++r) w.append_letter(i).append_letter(j);
      const IntMatrix mat = matrix_of(w);
      std::optional<std::vector<Int>> witness;
      for (int c = 0; c < n && !witness; ++c) {
        auto col = mat.column(c);
        auto expected = std::vector<Int>(n, 0);
        expected[c] = 1;
        if (col != expected) witness = std::move(col);
      }
      report.check("presentation", {{"n", n}, {"i", i}, {"j", j}, {"m", m}}, !witness, witness);
    }
  return report;
}

} // namespace weylns
