#include "weylns/base_change.hpp"

#include <charconv>
#include <random>
#include <sstream>

#include "weylns/error.hpp"

namespace weylns {

namespace {

void require_degree(int e) {
  if (e < 1) throw Error(ErrorCode::InvalidDegree, "local degree must be >= 1, got " + std::to_string(e));
}

std::vector<Int> random_vector(std::mt19937_64& rng, int n, Int bound) {
  std::uniform_int_distribution<Int> dist(-bound, bound);
  std::vector<Int> v(n);
  for (auto& c : v) c = dist(rng);
  return v;
}

} // namespace

FibralVector pullback_basis(FibralSpace source, int e, int k) {
  require_degree(e);
  const FibralSpace target(source.size() * e);
  FibralVector w(target);
  const long long centre = static_cast<long long>(e) * source.wrap(k);
  w[centre] = e;
  for (int j = 1; j < e; ++j) {
    w[centre - j] = add(w[centre - j], e - j);
    w[centre + j] = add(w[centre + j], e - j);
  }
  return w;
}

FibralVector pullback_local(int e, const FibralVector& v) {
  require_degree(e);
  const FibralSpace target(v.size() * e);
  FibralVector out(target);
  for (int k = 0; k < v.size(); ++k)
    if (v[k] != 0) out += v[k] * pullback_basis(v.space(), e, k);
  return out;
}

IntMatrix pullback_matrix(int n, int e) {
  const FibralSpace source(n);
  std::vector<std::vector<Int>> cols;
  for (int k = 0; k < n; ++k) {
    auto w = pullback_basis(source, e, k);
    cols.emplace_back(w.coeffs().begin(), w.coeffs().end());
  }
  return IntMatrix::from_columns(cols);
}

Report verify_pullback_scaling(int n, int e, int trials, std::uint64_t seed) {
  const FibralSpace source(n);
  require_degree(e);
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(n) << 32) ^ static_cast<std::uint64_t>(e));
  Report report;
  int failures = 0;
  std::optional<std::vector<Int>> witness;
  for (int t = 0; t < trials; ++t) {
    const FibralVector x(source, random_vector(rng, n, 9));
    const FibralVector y(source, random_vector(rng, n, 9));
    const Int lhs = inner_product(pullback_local(e, x), pullback_local(e, y));
    const Int rhs = mul(e, inner_product(x, y));
    if (lhs != rhs) {
      ++failures;
      if (!witness) {
        witness = std::vector<Int>(x.coeffs().begin(), x.coeffs().end());
        witness->insert(witness->end(), y.coeffs().begin(), y.coeffs().end());
      }
    }
  }
  report.check("pullback-scaling", {{"n", n}, {"e", e}, {"trials", trials}}, failures == 0, witness);
  // Pullback is injective: a nonzero vector never maps to zero.
  bool injective = true;
  for (int t = 0; t < trials && injective; ++t) {
    const FibralVector x(source, random_vector(rng, n, 9));
    if (!x.is_zero() && pullback_local(e, x).is_zero()) {
      injective = false;
      witness = std::vector<Int>(x.coeffs().begin(), x.coeffs().end());
    }
  }
  report.check("pullback-injective", {{"n", n}, {"e", e}, {"trials", trials}}, injective, witness);
  return report;
}

Report verify_pullback_composition(int n, int e, int f) {
  Report report;
  const IntMatrix two_step = pullback_matrix(n * e, f) * pullback_matrix(n, e);
  const IntMatrix one_step = pullback_matrix(n, e * f);
  std::optional<std::vector<Int>> witness;
  for (int k = 0; k < n && !witness; ++k)
    if (two_step.column(k) != one_step.column(k)) witness = two_step.column(k);
  report.check("pullback-composition", {{"n", n}, {"e", e}, {"f", f}}, !witness, witness);
  return report;
}

RamificationProfile::RamificationProfile(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::InvalidProfile, "profile has no points");
  for (const auto& p : points_) {
    if (p.degrees.empty()) throw Error(ErrorCode::InvalidProfile, "point '" + p.name + "' has no local degrees");
    int sum = 0;
    for (int e : p.degrees) {
      if (e < 1) throw Error(ErrorCode::InvalidProfile, "local degree < 1 at '" + p.name + "'");
      sum += e;
    }
    if (degree_ == 0) degree_ = sum;
    if (sum != degree_)
      throw Error(ErrorCode::InvalidProfile, "local degrees at '" + p.name + "' sum to " + std::to_string(sum) +
                                                 ", expected " + std::to_string(degree_));
    for (const auto& q : points_)
      if (&q != &p && q.name == p.name) throw Error(ErrorCode::InvalidProfile, "duplicate point '" + p.name + "'");
  }
}

RamificationProfile RamificationProfile::parse(std::string_view text) {
  auto fail = [&](std::size_t at, const std::string& what) {
    throw Error(ErrorCode::InvalidProfile,
                "profile '" + std::string(text) + "' at offset " + std::to_string(at) + ": " + what);
  };
  std::vector<Point> points;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  while (true) {
    skip_ws();
    const std::size_t colon = text.find(':', pos);
    if (colon == std::string_view::npos) fail(pos, "expected 'name:[...]'");
    Point p;
    p.name = std::string(text.substr(pos, colon - pos));
    while (!p.name.empty() && p.name.back() == ' ') p.name.pop_back();
    if (p.name.empty()) fail(pos, "empty point name");
    pos = colon + 1;
    skip_ws();
    if (pos >= text.size() || text[pos] != '[') fail(pos, "expected '['");
    ++pos;
    while (true) {
      skip_ws();
      int e = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), e);
      if (ec != std::errc()) fail(pos, "expected a local degree");
      p.degrees.push_back(e);
      pos = static_cast<std::size_t>(ptr - text.data());
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ']') {
        ++pos;
        break;
      }
      fail(pos, "expected ',' or ']'");
    }
    points.push_back(std::move(p));
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != ';') fail(pos, "expected ';'");
    ++pos;
  }
  return RamificationProfile(std::move(points));
}

RamificationProfile RamificationProfile::uniform(const std::vector<std::string>& names, std::vector<int> degrees) {
  std::vector<Point> points;
  for (const auto& name : names) points.push_back({name, degrees});
  return RamificationProfile(std::move(points));
}

const std::vector<int>& RamificationProfile::degrees_at(std::string_view name) const {
  for (const auto& p : points_)
    if (p.name == name) return p.degrees;
  throw Error(ErrorCode::InvalidProfile, "profile has no point '" + std::string(name) + "'");
}

std::string RamificationProfile::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    os << (i ? ";" : "") << points_[i].name << ":[";
    for (std::size_t j = 0; j < points_[i].degrees.size(); ++j) os << (j ? "," : "") << points_[i].degrees[j];
    os << ']';
  }
  return os.str();
}

std::vector<int> fiber_type_after(const std::vector<int>& local_degrees, int n_t) {
  if (n_t < 1) throw Error(ErrorCode::InvalidParameters, "fiber size must be positive");
  std::vector<int> out;
  for (int e : local_degrees) {
    if (e < 1) throw Error(ErrorCode::InvalidProfile, "local degree < 1");
    out.push_back(n_t * e);
  }
  return out;
}

} // namespace weylns
