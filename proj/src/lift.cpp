#include "weylns/lift.hpp"

#include <random>
#include <sstream>

#include "weylns/base_change.hpp"
#include "weylns/error.hpp"

namespace weylns {

namespace {

void require_parameters(int n, int e) {
  if (n < 3 || e < 1)
    throw Error(ErrorCode::InvalidParameters,
                "lift needs n >= 3 and e >= 1, got n=" + std::to_string(n) + " e=" + std::to_string(e));
}

WeylWord product_of_arcs(FibralSpace space, const std::vector<ArcRoot>& arcs, std::size_t skip = SIZE_MAX) {
  WeylWord w(space);
  for (std::size_t a = 0; a < arcs.size(); ++a)
    if (a != skip) w.append(arc_word(arcs[a]));
  return w;
}

// S(v_j, k) for 0 <= k <= e.
WeylWord inductive_word(int n, int e, int j, int k) {
  require_parameters(n, e);
  const FibralSpace target(n * e);
  const long long centre = static_cast<long long>(j) * e;
  WeylWord t(target, {target.wrap(centre)});
  WeylWord s(target);
  for (int i = 1; i <= k; ++i) {
    s = t * s;
    t.append_letter(target.wrap(centre - i)).append_letter(target.wrap(centre + i));
  }
  return s;
}

std::optional<std::vector<Int>> first_difference(const IntMatrix& a, const IntMatrix& b) {
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (a.column(c) != b.column(c)) return a.column(c);
  return std::nullopt;
}

std::vector<Int> as_vector(const FibralVector& v) { return {v.coeffs().begin(), v.coeffs().end()}; }

FibralVector sum_of_basis(FibralSpace space, long long from, long long to, Int scale) {
  FibralVector v(space);
  for (long long i = from; i <= to; ++i) v[i] = add(v[i], scale);
  return v;
}

} // namespace

IndexSet index_set(int n, int e, int k) {
  require_parameters(n, e);
  const FibralSpace target(n * e);
  IndexSet set{n, e, mod(k, n), {}};
  const long long centre = static_cast<long long>(set.k) * e;
  for (int m = 0; m < e; ++m) set.arcs.emplace_back(target, centre - e + 1 + m, e);
  return set;
}

WeylWord arc_word(const ArcRoot& arc) {
  const FibralSpace space = arc.space();
  WeylWord w(space, {arc.start()});
  for (int len = 2; len <= arc.length(); ++len) {
    const int j = space.wrap(arc.start() + len - 1);
    WeylWord next(space, {j});
    next.append(w).append_letter(j);
    w = std::move(next);
  }
  return w;
}

Permutation LiftedGenerator::closed_form() const { return Permutation::from_transpositions(n * e, transpositions); }

std::string LiftedGenerator::to_cycles() const {
  std::ostringstream os;
  for (const auto& [a, b] : transpositions) os << '(' << a << ',' << b << ')';
  return os.str();
}

LiftedGenerator lift_generator(int n, int e, int k) {
  const IndexSet set = index_set(n, e, k);
  const FibralSpace target(n * e);
  LiftedGenerator g{n, e, set.k, product_of_arcs(target, set.arcs), {}, {}};
  g.matrix = matrix_of(g.word);
  for (int m = 1; m <= e; ++m)
    g.transpositions.emplace_back(target.wrap((set.k - 1LL) * e + m), target.wrap(static_cast<long long>(set.k) * e + m));
  return g;
}

WeylWord lift_inductive(int n, int e, int j) { return inductive_word(n, e, mod(j, n), e); }

Permutation inductive_closed_form(int n, int e, int j, int k) {
  const int size = n * e;
  std::vector<std::pair<int, int>> ts;
  const long long centre = static_cast<long long>(mod(j, n)) * e;
  for (int m = 1; m <= k; ++m) ts.emplace_back(mod(centre - k + m, size), mod(centre + m, size));
  return Permutation::from_transpositions(size, ts);
}

LiftTable::LiftTable(int n, int e) : n_(n), e_(e) {
  require_parameters(n, e);
  const FibralSpace target(n * e);
  for (int k = 0; k < n; ++k) words_.push_back(product_of_arcs(target, index_set(n, e, k).arcs));
}

WeylWord LiftTable::lift(const WeylWord& w) const {
  require_same_space(w.space(), FibralSpace(n_));
  WeylWord out(target());
  for (int k : w.letters()) out.append(words_[static_cast<std::size_t>(k)]);
  return out;
}

void LiftTable::sabotage(int k) {
  k = mod(k, n_);
  const FibralSpace space = target();
  if (e_ == 1)
    words_[static_cast<std::size_t>(k)] = WeylWord(space, {k, space.wrap(k + 1)});
  else
    words_[static_cast<std::size_t>(k)] = product_of_arcs(space, index_set(n_, e_, k).arcs, 0);
}

WeylWord lift_word(int n, int e, const WeylWord& w) { return LiftTable(n, e).lift(w); }

Report verify_intertwining(const LiftTable& lifts) {
  const int n = lifts.n();
  const int e = lifts.e();
  const FibralSpace source(n);
  Report report;
  for (int i = 0; i < n; ++i) {
    const WeylWord& lifted = lifts.generator(i);
    const WeylWord s_i(source, {i});
    std::optional<std::vector<Int>> witness;
    for (int k = 0; k < n && !witness; ++k) {
      const FibralVector v = FibralVector::basis(source, k);
      const FibralVector lhs = act(lifted, pullback_local(e, v));
      const FibralVector rhs = pullback_local(e, act(s_i, v));
      if (lhs != rhs) witness = as_vector(lhs);
    }
    report.check("intertwining", {{"n", n}, {"e", e}, {"i", i}}, !witness, witness);
  }
  // The two displayed instances for s_0 on v_0 and v_1.
  const FibralVector pv0 = pullback_local(e, FibralVector::basis(source, 0));
  const FibralVector pv1 = pullback_local(e, FibralVector::basis(source, 1));
  const FibralVector img0 = act(lifts.generator(0), pv0);
  const FibralVector img1 = act(lifts.generator(0), pv1);
  report.check("intertwining-v0", {{"n", n}, {"e", e}}, img0 == -pv0, as_vector(img0));
  report.check("intertwining-v1", {{"n", n}, {"e", e}}, img1 == pv0 + pv1, as_vector(img1));
  return report;
}

Report verify_homomorphism(const LiftTable& lifts) {
  const int n = lifts.n();
  const int e = lifts.e();
  const IntMatrix id = IntMatrix::identity(static_cast<std::size_t>(n) * e);
  Report report;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int m = coxeter_exponent(n, i, j);
      WeylWord w(lifts.target());
      for (int r = 0; r < m; ++r) w.append(lifts.generator(i)).append(lifts.generator(j));
      const auto witness = first_difference(matrix_of(w), id);
      const char* id_name = m == 1 ? "homomorphism-involution" : m == 2 ? "homomorphism-commute" : "homomorphism-braid";
      report.check(id_name, {{"n", n}, {"e", e}, {"i", i}, {"j", j}, {"m", m}}, !witness, witness);
    }
  return report;
}

Report verify_composition(const LiftTable& inner, const LiftTable& outer, const LiftTable& direct, int random_words,
                          int word_length, std::uint64_t seed) {
  const int n = inner.n();
  const int e = inner.e();
  const int f = outer.e();
  if (outer.n() != n * e || direct.n() != n || direct.e() != e * f)
    throw Error(ErrorCode::InvalidParameters, "lift tables do not compose");
  const FibralSpace source(n);
  const FibralSpace middle(n * e);
  Report report;
  const nlohmann::json cell{{"n", n}, {"e", e}, {"f", f}};
  for (int k = 0; k < n; ++k) {
    const IntMatrix two_step = matrix_of(outer.lift(inner.generator(k)));
    const IntMatrix one_step = matrix_of(direct.generator(k));
    const auto witness = first_difference(two_step, one_step);
    nlohmann::json params = cell;
    params["k"] = k;
    report.check("composition", params, !witness, witness);

    // Compatibility of the lifted element with the pullback V_{ne} -> V_{nef}.
    std::optional<std::vector<Int>> compat;
    for (int j = 0; j < n * e && !compat; ++j) {
      const FibralVector w = FibralVector::basis(middle, j);
      const FibralVector lhs = act(direct.generator(k), pullback_local(f, w));
      const FibralVector rhs = pullback_local(f, act(inner.generator(k), w));
      if (lhs != rhs) compat = as_vector(lhs);
    }
    report.check("composition-compatibility", params, !compat, compat);
  }
  if (random_words > 0) {
    std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ULL) ^
                        (static_cast<std::uint64_t>(e) << 20) ^ (static_cast<std::uint64_t>(f) << 40));
    std::uniform_int_distribution<int> letter(0, n - 1);
    int failures = 0;
    std::optional<std::vector<Int>> witness;
    for (int t = 0; t < random_words; ++t) {
      std::vector<int> letters(static_cast<std::size_t>(word_length));
      for (auto& l : letters) l = letter(rng);
      const WeylWord w(source, letters);
      if (!equal_elements(outer.lift(inner.lift(w)), direct.lift(w))) {
        ++failures;
        if (!witness) witness = std::vector<Int>(letters.begin(), letters.end());
      }
    }
    nlohmann::json params = cell;
    params["words"] = random_words;
    params["length"] = word_length;
    report.check("composition-words", params, failures == 0, witness);
  }
  return report;
}

Report verify_composition(int n, int e, int f, int random_words, int word_length, std::uint64_t seed) {
  return verify_composition(LiftTable(n, e), LiftTable(n * e, f), LiftTable(n, e * f), random_words, word_length, seed);
}

Report verify_closed_forms(const LiftTable& lifts) {
  const int n = lifts.n();
  const int e = lifts.e();
  const FibralSpace target = lifts.target();
  Report report;
  for (int j = 0; j < n; ++j) {
    const WeylWord& g = lifts.generator(j);
    const long long c = static_cast<long long>(j) * e;
    auto image = [&](long long i) { return act(g, FibralVector::basis(target, i)); };
    const nlohmann::json params{{"n", n}, {"e", e}, {"j", j}};

    const FibralVector s1 = image(c);
    report.check("closed-form-center", params, s1 == sum_of_basis(target, c - e + 1, c + e - 1, -1), as_vector(s1));

    std::optional<std::vector<Int>> s2;
    for (int i = 0; i < target.size() && !s2; ++i)
      if (target.cyclic_distance(i, c) > e && image(i) != FibralVector::basis(target, i)) s2 = as_vector(image(i));
    report.check("closed-form-far", params, !s2, s2);

    const FibralVector up = image(c + e);
    const FibralVector down = image(c - e);
    const bool s3 = up == sum_of_basis(target, c, c + e, 1) && down == sum_of_basis(target, c - e, c, 1);
    report.check("closed-form-neighbor", params, s3, as_vector(up == sum_of_basis(target, c, c + e, 1) ? down : up));

    std::optional<std::vector<Int>> s4;
    for (int i = 1; i < e && !s4; ++i) {
      if (image(c - i) != FibralVector::basis(target, c + e - i)) s4 = as_vector(image(c - i));
      else if (image(c + i) != FibralVector::basis(target, c - e + i)) s4 = as_vector(image(c + i));
    }
    report.check("closed-form-shift", params, !s4, s4);
  }
  return report;
}

Report verify_permutation_forms(const LiftTable& lifts) {
  const int n = lifts.n();
  const int e = lifts.e();
  const int size = n * e;
  const FibralSpace source(n);
  const FibralSpace target = lifts.target();
  Report report;
  auto perm_vec = [](const Permutation& p) { return std::vector<Int>(p.images().begin(), p.images().end()); };

  for (int j = 0; j < n; ++j) {
    const nlohmann::json params{{"n", n}, {"e", e}, {"j", j}};
    const Permutation actual = to_permutation(lifts.generator(j));
    const LiftedGenerator closed = lift_generator(n, e, j);
    report.check("perm-lifted-generator", params, actual == closed.closed_form(), perm_vec(actual));

    bool inductive_ok = true;
    std::optional<std::vector<Int>> witness;
    for (int k = 1; k <= e && inductive_ok; ++k) {
      const Permutation p = to_permutation(inductive_word(n, e, j, k));
      if (p != inductive_closed_form(n, e, j, k)) {
        inductive_ok = false;
        witness = perm_vec(p);
      }
    }
    report.check("perm-inductive", params, inductive_ok, witness);

    const WeylWord inductive = lift_inductive(n, e, j);
    report.check("inductive-equals-direct", params, equal_elements(inductive, lifts.generator(j)),
                 std::vector<Int>(inductive.letters().begin(), inductive.letters().end()));
  }

  // s_{w(p,q)} with q - p < e realizes (p, q+1).
  std::optional<std::vector<Int>> arc_witness;
  for (int p = 0; p < size && !arc_witness; ++p)
    for (int len = 1; len <= e && len < size && !arc_witness; ++len) {
      const Permutation actual = to_permutation(arc_word(ArcRoot(target, p, len)));
      if (actual != Permutation::transposition(size, p, p + len)) arc_witness = perm_vec(actual);
    }
  report.check("perm-arc-reflection", {{"n", n}, {"e", e}}, !arc_witness, arc_witness);

  // R^e_n(s_{v(j, j+k-1)}) realizes ((j-1)e+m, (j+k-1)e+m), m = 1..e.
  for (int k = 1; k < n; ++k) {
    std::optional<std::vector<Int>> witness;
    for (int j = 0; j < n && !witness; ++j) {
      const Permutation actual = to_permutation(lifts.lift(arc_word(ArcRoot(source, j, k))));
      std::vector<std::pair<int, int>> ts;
      for (int m = 1; m <= e; ++m) ts.emplace_back(mod((j - 1LL) * e + m, size), mod((j + k - 1LL) * e + m, size));
      if (actual != Permutation::from_transpositions(size, ts)) witness = perm_vec(actual);
    }
    report.check("perm-lifted-arc", {{"n", n}, {"e", e}, {"length", k}}, !witness, witness);
  }
  return report;
}

PLLift pl_lift(const std::vector<int>& local_degrees, int n_t, int k) {
  if (local_degrees.empty()) throw Error(ErrorCode::InvalidProfile, "no points over the singular point");
  PLLift lift{n_t, mod(k, n_t), local_degrees, {}};
  for (int e : local_degrees) {
    if (e < 1) throw Error(ErrorCode::InvalidProfile, "local degree < 1");
    lift.factors.push_back(LiftTable(n_t, e).generator(k));
  }
  return lift;
}

PLLift pl_lift(const RamificationProfile& profile, std::string_view point, int n_t, int k) {
  return pl_lift(profile.degrees_at(point), n_t, k);
}

} // namespace weylns
