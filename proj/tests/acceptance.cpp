// Acceptance suite: one line per criterion, exact arithmetic throughout.
// Exit status is 0 only when every criterion passes within its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "support.hpp"
#include "weylns/base_change.hpp"
#include "weylns/error.hpp"
#include "weylns/lattice.hpp"
#include "weylns/lift.hpp"
#include "weylns/ns_model.hpp"
#include "weylns/sweep.hpp"
#include "weylns/weyl.hpp"

using namespace weylns;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
  void absorb(const Report& r, const std::string& where) {
    for (const auto& rec : r.records)
      if (!rec.pass) {
        require(false, where + ": " + to_line(rec));
        return;
      }
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Overflow;
}

Outcome presentation() {
  Outcome o;
  std::size_t records = 0;
  for (int n = 3; n <= 8; ++n) {
    const auto r = check_presentation(n);
    records += r.records.size();
    o.absorb(r, "n=" + std::to_string(n));
  }
  o.detail = o.pass ? std::to_string(records) + " relations" : o.detail;
  return o;
}

Outcome intertwining() {
  Outcome o;
  std::size_t v_instances = 0;
  for (int n = 3; n <= 8; ++n)
    for (int e = 1; e <= 4; ++e) {
      const auto r = verify_intertwining(n, e);
      for (const auto& rec : r.records) v_instances += rec.id.starts_with("intertwining-v") ? 1 : 0;
      o.absorb(r, "n=" + std::to_string(n) + " e=" + std::to_string(e));
    }
  o.require(v_instances == 2 * 6 * 4, "missing commutation instances");
  if (o.pass) o.detail = "24 cells, " + std::to_string(v_instances) + " commutation instances";
  return o;
}

Outcome homomorphism() {
  Outcome o;
  for (int n = 3; n <= 8; ++n)
    for (int e = 1; e <= 4; ++e) o.absorb(verify_homomorphism(n, e), "n=" + std::to_string(n) + " e=" + std::to_string(e));
  if (o.pass) o.detail = "24 cells";
  return o;
}

Outcome composition() {
  Outcome o;
  for (int n = 3; n <= 6; ++n)
    for (int e = 1; e <= 3; ++e)
      for (int f = 1; f <= 3; ++f) {
        const auto r = verify_composition(LiftTable(n, e), LiftTable(n * e, f), LiftTable(n, e * f), 100, 6,
                                          kDefaultSeed + static_cast<std::uint64_t>(100 * n + 10 * e + f));
        o.absorb(r, "n=" + std::to_string(n) + " e=" + std::to_string(e) + " f=" + std::to_string(f));
      }
  if (o.pass) o.detail = "36 cells x (generators + 100 words)";
  return o;
}

Outcome closed_forms() {
  Outcome o;
  for (int n = 3; n <= 6; ++n)
    for (int e = 1; e <= 5; ++e) {
      const LiftTable table(n, e);
      o.absorb(verify_closed_forms(table), "n=" + std::to_string(n) + " e=" + std::to_string(e));
      // Independent check of the first closed form from the oracle product.
      for (int j = 0; j < n; ++j) {
        const int ne = n * e;
        const auto g = oracle::gram(ne);
        auto m = oracle::identity(static_cast<std::size_t>(ne));
        for (int s = 0; s < e; ++s)
          m = oracle::multiply(m, oracle::reflection(g, oracle::arc(ne, j * e - e + 1 + s, e)));
        const int c = oracle::wrap(j * e, ne);
        for (int i = 0; i < ne; ++i) {
          const int d = std::min(oracle::wrap(i - c, ne), oracle::wrap(c - i, ne));
          o.require(m[i][c] == (d < e ? -1 : 0), "center image differs from the oracle product");
          if (d > e)
            for (int r = 0; r < ne; ++r) o.require(m[r][i] == (r == i ? 1 : 0), "far basis vector moved from the oracle product");
        }
      }
    }
  if (o.pass) o.detail = "20 cells";
  return o;
}

Outcome permutation_forms() {
  Outcome o;
  for (int n = 3; n <= 6; ++n)
    for (int e = 1; e <= 5; ++e) {
      o.absorb(verify_permutation_forms(n, e), "n=" + std::to_string(n) + " e=" + std::to_string(e));
      for (int k = 0; k < n; ++k) {
        const auto g = lift_generator(n, e, k);
        o.require(to_permutation(g.word).images() == oracle::transpositions_permutation(n * e, g.transpositions),
                  "closed form differs from the oracle composition");
      }
    }
  if (o.pass) o.detail = "20 cells";
  return o;
}

Outcome pullback_laws() {
  Outcome o;
  for (int n = 3; n <= 6; ++n) {
    for (int e = 1; e <= 4; ++e)
      o.absorb(verify_pullback_scaling(n, e, 1000, kDefaultSeed), "scaling n=" + std::to_string(n));
    for (int e = 1; e <= 3; ++e)
      for (int f = 1; f <= 3; ++f) o.absorb(verify_pullback_composition(n, e, f), "composition n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "16 x 1000 pairs, 36 compositions";
  return o;
}

Outcome minus_two_oracle() {
  Outcome o;
  std::size_t roots = 0, total = 0;
  for (int n = 3; n <= 6 && o.pass; ++n) {
    const FibralSpace space(n);
    const auto g = oracle::gram(n);
    std::vector<Int> x(static_cast<std::size_t>(n), -3);
    while (true) {
      ++total;
      const bool is_root = oracle::form(g, x, x) == -2;
      const auto d = classify_minus_two(FibralVector(space, x));
      o.require(d.has_value() == is_root, "root detection differs from the brute-force square");
      if (is_root) {
        ++roots;
        // Brute force: exactly one arc and shift reproduce x.
        int matches = 0;
        for (int s = 0; s < n; ++s)
          for (int l = 1; l < n; ++l) {
            const auto a = oracle::arc(n, s, l);
            const Int r = x[static_cast<std::size_t>(oracle::wrap(s - 1, n))];
            bool ok = true;
            for (int i = 0; i < n; ++i) ok = ok && x[static_cast<std::size_t>(i)] == a[static_cast<std::size_t>(i)] + r;
            if (ok) {
              ++matches;
              if (d) o.require(d->arc.start() == s && d->arc.length() == l && d->r == r, "wrong decomposition");
            }
          }
        o.require(matches == 1, "decomposition is not unique");
        if (d) o.require(d->arc.to_vector() + d->r * FibralVector::fiber(space) == FibralVector(space, x),
                         "reconstruction failed");
      }
      std::size_t i = 0;
      while (i < x.size() && x[i] == 3) x[i++] = -3;
      if (i == x.size()) break;
      ++x[i];
    }
  }
  if (o.pass) o.detail = std::to_string(total) + " vectors, " + std::to_string(roots) + " roots";
  return o;
}

Outcome non_faithfulness() {
  Outcome o;
  const FibralSpace space(3);
  const WeylWord w(space, {0, 1, 2, 1});
  o.require(to_permutation(w).is_identity(), "permutation image is not the identity");
  o.require(oracle::word_permutation(3, w.letters()) == std::vector<int>{0, 1, 2}, "oracle permutation");
  o.require(act(w, FibralVector::basis(space, 1)) == FibralVector::basis(space, 1) - FibralVector::fiber(space),
            "v_1 is not sent to v_1 - F");
  const auto m = oracle::word_matrix(3, w.letters());
  o.require(m[0][1] == -1 && m[1][1] == 0 && m[2][1] == -1, "oracle matrix column");
  if (o.pass) o.detail = "perm () and v1 -> v1 - F";
  return o;
}

Outcome ns_model() {
  Outcome o;
  o.require(error_of([] { SurfaceConfig({{"t0", 5}}, {}); }) == ErrorCode::ConfigInvalidDivisibility, "I_5 accepted");
  o.require(error_of([] { SurfaceConfig({{"t0", 3}, {"t1", 10}}, {}); }) == ErrorCode::ConfigInvalidDivisibility,
            "sum 13 accepted");
  o.require(error_of([] { SurfaceConfig({{"t0", 2}, {"t1", 10}}, {}); }) == ErrorCode::ConfigSmallFiber,
            "I_2 accepted");
  for (const auto& fibers : std::vector<std::vector<FiberSpec>>{{{"t0", 3}, {"t1", 9}},
                                                                 {{"a", 3}, {"b", 3}, {"c", 3}, {"d", 3}},
                                                                 {{"a", 12}, {"b", 12}},
                                                                 {{"a", 6}, {"b", 6}, {"c", 12}, {"d", 12}},
                                                                 {{"a", 36}, {"b", 4}, {"c", 8}}}) {
    const NSLattice lat{SurfaceConfig(fibers, {})};
    Int sum = 0;
    std::size_t rank = 2;
    for (const auto& f : fibers) {
      sum += f.n;
      rank += static_cast<std::size_t>(f.n - 1);
    }
    const Int chi = sum / 12;
    o.require(lat.config().chi() == chi, "chi");
    o.require(lat.trivial_rank() == rank && lat.dim() == rank, "trivial-lattice rank");
    o.require(lat.gram()(0, 0) == -chi && lat.gram()(0, 1) == 1 && lat.gram()(1, 1) == 0, "[O,F] block");
    const auto b = of_block(chi);
    const auto expect = chi % 2 ? IntMatrix::from_rows({{1, 0}, {0, -1}}) : IntMatrix::from_rows({{0, 1}, {1, 0}});
    o.require(b.reduced == expect, "parity rule for chi=" + std::to_string(chi));
    const auto c = b.basis_change;
    const Int det = c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0);
    o.require(det == 1 || det == -1, "basis change is not unimodular");
    // The block of the built lattice transforms to the same normal form.
    const auto block = IntMatrix::from_rows({{lat.gram()(0, 0), lat.gram()(0, 1)}, {lat.gram()(1, 0), lat.gram()(1, 1)}});
    o.require(c.transposed() * block * c == expect, "built block does not reduce");
  }
  o.require(error_of([] {
              SurfaceConfig({{"t0", 3}, {"t1", 9}},
                            {{"A", {{"t1", 3}}, 3, {{"O", 0}, {"B", 0}}, {}}, {"B", {{"t1", 3}}, 3, {{"O", 0}}, {}}});
            }) == ErrorCode::TorsionCollision,
            "torsion collision accepted");
  o.require(error_of([] { SurfaceConfig({{"t0", 3}, {"t1", 9}}, {{"A", {}, 3, {{"O", 0}}, {}}}); }) ==
                ErrorCode::TorsionCollision,
            "torsion section on the identity components accepted");
  o.require(error_of([] { fixtures::z3(); }) == ErrorCode::Overflow, "valid torsion config rejected");
  if (o.pass) o.detail = "5 fiber configurations, 5 rejections";
  return o;
}

Outcome fibral_bound_check() {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed);
  Int worst = std::numeric_limits<Int>::min();
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 9)(rng);
    std::vector<Int> a(static_cast<std::size_t>(n));
    for (auto& x : a) x = std::uniform_int_distribution<Int>(-30, 30)(rng);
    a[0] = 0;
    const int j = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const Int v = fibral_bound(n, a, j);
    Int direct = 2 * a[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i) {
      const Int d = a[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>((i + 1) % n)];
      direct -= d * d;
    }
    o.require(v == direct, "value differs from direct evaluation");
    o.require(v <= 0, "positive bound");
    worst = std::max(worst, v);
  }
  if (o.pass) o.detail = "10000 inputs, max " + std::to_string(worst);
  return o;
}

Outcome isometry_round_trip() {
  Outcome o;
  const auto config = fixtures::z3();
  const NSLattice lat(config);
  std::mt19937_64 rng(kDefaultSeed);
  int effective = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto iso = fixtures::random_isometry(config, rng, 8);
    const auto m = isometry_matrix(lat, iso);
    const auto c = classify_isometry(lat, m);
    if (c.kind != Classification::Kind::Universal) {
      o.require(false, "trial " + std::to_string(trial) + " not classified: " + c.reason);
      continue;
    }
    const auto& got = *c.isometry;
    bool same = got.sign == iso.sign && got.translate == iso.translate && got.invert == iso.invert;
    bool trivial_weyl = true;
    for (const auto& f : config.fibers()) {
      const FibralSpace space(f.n);
      const auto a = iso.weyl.count(f.name) ? iso.weyl.at(f.name) : WeylWord(space, {});
      const auto b = got.weyl.count(f.name) ? got.weyl.at(f.name) : WeylWord(space, {});
      same = same && equal_elements(a, b);
      trivial_weyl = trivial_weyl && matrix_of(a).is_identity();
    }
    o.require(same, "trial " + std::to_string(trial) + ": canonical form differs");
    o.require(c.effective == (iso.sign == 1 && trivial_weyl), "effectivity flag");
    effective += c.effective ? 1 : 0;
  }
  const auto id = IntMatrix::identity(lat.dim());
  o.require(check_torelli_hypotheses(lat, id).all(), "identity rejected");
  UniversalIsometry inv;
  inv.invert = true;
  o.require(check_torelli_hypotheses(lat, isometry_matrix(lat, inv)).all(), "inversion rejected");
  o.require(!check_torelli_hypotheses(lat, Int{-1} * id).all(), "-Id accepted");
  for (const auto& f : config.fibers())
    for (int k = 0; k < f.n; ++k) {
      UniversalIsometry r;
      r.weyl.emplace(f.name, WeylWord(FibralSpace(f.n), {k}));
      o.require(!check_torelli_hypotheses(lat, isometry_matrix(lat, r)).all(), "reflection accepted");
    }
  if (o.pass) o.detail = "200 forms, " + std::to_string(effective) + " effective";
  return o;
}

Outcome section_compatibility() {
  Outcome o;
  const auto config = fixtures::z3(true);
  const NSLattice base(config);
  int checked = 0;
  for (const auto& f : config.fibers())
    for (const char* degrees : {"[2]", "[1,1]", "[2,1]"}) {
      const auto profile = RamificationProfile::parse(f.name + ":" + degrees);
      const auto pb = pullback_ns(config, profile);
      const NSLattice target(pb.config);
      const int t = config.fiber_index(f.name);
      for (int k = 0; k < f.n; ++k) {
        UniversalIsometry iso;
        iso.weyl.emplace(f.name, WeylWord(FibralSpace(f.n), {k}));
        const auto m = isometry_matrix(config, iso, profile);
        // p*(v_k) written out point by point from the local formula.
        auto pv = target.zero();
        for (std::size_t b = 0; b < pb.origins.size(); ++b) {
          if (pb.origins[b].source_fiber != t) continue;
          const int e = pb.origins[b].local_degree;
          auto add_component = [&](long long idx, Int c) {
            const auto w = target.component(static_cast<int>(b), idx);
            for (std::size_t i = 0; i < pv.size(); ++i) pv[i] += c * w[i];
          };
          add_component(static_cast<long long>(k) * e, e);
          for (int j = 1; j < e; ++j) {
            add_component(static_cast<long long>(k) * e - j, e - j);
            add_component(static_cast<long long>(k) * e + j, e - j);
          }
        }
        o.require(pv == pb.map.apply(base.component(t, k)), "local formula differs from the pullback map");
        for (SectionRef s = kZero; s < static_cast<SectionRef>(config.sections().size()); ++s) {
          const auto ps = pb.map.apply(base.section(s));
          const auto image = m.apply(ps);
          auto expect = ps;
          if (config.component(s, t) == k)
            for (std::size_t i = 0; i < expect.size(); ++i) expect[i] += pv[i];
          o.require(image == expect, "section " + config.section_name(s) + " over " + f.name + ":" + degrees +
                                         " k=" + std::to_string(k));
          // The same identity read as p*(s_{v_k}(P)).
          const auto downstairs = isometry_matrix(base, iso).apply(base.section(s));
          o.require(image == pb.map.apply(downstairs), "square does not commute");
          ++checked;
        }
      }
    }
  if (o.pass) o.detail = std::to_string(checked) + " section images";
  return o;
}

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "presentation of the affine Weyl group, n in [3,8]", 5, presentation},
      {2, "intertwining with the pullback, n in [3,8], e in [1,4]", 10, intertwining},
      {3, "lifted generators satisfy the relations", 30, homomorphism},
      {4, "composition of lifts, n in [3,6], e,f in [1,3]", 60, composition},
      {5, "closed forms for lifted generators, n in [3,6], e in [1,5]", 10, closed_forms},
      {6, "permutation closed forms and inductive form", 10, permutation_forms},
      {7, "pullback scaling and composition", 10, pullback_laws},
      {8, "(-2)-vector decomposition, exhaustive in [-3,3]^n", 60, minus_two_oracle},
      {9, "non-faithfulness witness for n=3", 1, non_faithfulness},
      {10, "NS model validation, [O,F] parity, ranks, torsion", 1, ns_model},
      {11, "fibral bound is never positive", 5, fibral_bound_check},
      {12, "isometry canonical-form round trip and Torelli checks", 30, isometry_round_trip},
      {13, "section compatibility of Picard-Lefschetz lifts", 5, section_compatibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = out.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s  [%2d] %-58s %7.3f s (budget %g s)  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_s, out.detail.c_str(), in_time ? "" : "  over budget");
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
