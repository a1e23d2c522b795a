#pragma once

// Independent oracles and seeded generators shared by the test binaries.
// Nothing here calls into the code under test except for value types.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "weylns/checked.hpp"
#include "weylns/matrix.hpp"

namespace oracle {

using weylns::Int;
using Dense = std::vector<std::vector<Int>>;

inline int wrap(long long i, int n) { return static_cast<int>(((i % n) + n) % n); }

// Cartan-type Gram of V_n straight from the definition.
inline Dense gram(int n) {
  Dense g(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        g[i][j] = -2;
      else if (wrap(i - j, n) == 1 || wrap(j - i, n) == 1)
        g[i][j] = 1;
    }
  return g;
}

inline Int form(const Dense& g, const std::vector<Int>& x, const std::vector<Int>& y) {
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g[i][j] * y[j];
  return s;
}

inline Dense identity(std::size_t n) {
  Dense m(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Dense multiply(const Dense& a, const Dense& b) {
  Dense c(a.size(), std::vector<Int>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Matrix of x -> x + <x,u>u for the form g, columns are images of e_j.
inline Dense reflection(const Dense& g, const std::vector<Int>& u) {
  const std::size_t n = u.size();
  Dense m = identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    Int p = 0;
    for (std::size_t i = 0; i < n; ++i) p += g[j][i] * u[i];
    for (std::size_t i = 0; i < n; ++i) m[i][j] += p * u[i];
  }
  return m;
}

inline std::vector<Int> basis(int n, long long k) {
  std::vector<Int> v(n, 0);
  v[wrap(k, n)] = 1;
  return v;
}

// Matrix of a word, leftmost letter applied last.
inline Dense word_matrix(int n, const std::vector<int>& letters) {
  const Dense g = gram(n);
  Dense m = identity(n);
  for (int k : letters) m = multiply(m, reflection(g, basis(n, k)));
  return m;
}

inline Dense to_dense(const weylns::IntMatrix& m) { return m.to_rows(); }

// Permutation of Z/n as an image array; a word maps s_k to (k, k+1).
inline std::vector<int> word_permutation(int n, const std::vector<int>& letters) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const int a = wrap(*it, n), b = wrap(*it + 1, n);
    for (int& x : p) x = x == a ? b : x == b ? a : x;
  }
  return p;
}

inline std::vector<int> transpositions_permutation(int n, const std::vector<std::pair<int, int>>& ts) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    const int a = wrap(it->first, n), b = wrap(it->second, n);
    for (int& x : p) x = x == a ? b : x == b ? a : x;
  }
  return p;
}

// Local pullback as a tent: coefficient of w_m is max(0, e - d(m, ek)).
inline std::vector<Int> tent_pullback(int n, int e, const std::vector<Int>& v) {
  const int ne = n * e;
  std::vector<Int> w(ne, 0);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < ne; ++m) {
      const int d = std::min(wrap(m - k * e, ne), wrap(k * e - m, ne));
      w[m] += v[k] * std::max(0, e - d);
    }
  return w;
}

// Vector of the arc starting at `start` with `length` consecutive ones.
inline std::vector<Int> arc(int n, int start, int length) {
  std::vector<Int> v(n, 0);
  for (int i = 0; i < length; ++i) v[wrap(start + i, n)] = 1;
  return v;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  Int integer(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }
  int index(int n) { return static_cast<int>(integer(0, n - 1)); }
  bool coin() { return integer(0, 1) == 1; }

  std::vector<Int> vector(std::size_t n, Int lo, Int hi) {
    std::vector<Int> v(n);
    for (auto& x : v) x = integer(lo, hi);
    return v;
  }

  std::vector<int> word(int n, int length) {
    std::vector<int> w(static_cast<std::size_t>(length));
    for (auto& x : w) x = index(n);
    return w;
  }
};

} // namespace oracle
