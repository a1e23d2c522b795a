#include "ns_internal.hpp"
#include "weylns/error.hpp"

namespace weylns {

namespace {

constexpr int kMaxReductions = 100000;

Classification not_universal(std::string reason) {
  Classification c;
  c.kind = Classification::Kind::NotUniversal;
  c.reason = std::move(reason);
  return c;
}

bool is_negative(const std::vector<Int>& a) {
  bool nonzero = false;
  for (Int x : a) {
    if (x > 0) return false;
    nonzero = nonzero || x != 0;
  }
  return nonzero;
}

// Index j with a == e_j, or -1.
int as_simple_root(const std::vector<Int>& a) {
  int found = -1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (a[i] != 1 || found >= 0) return -1;
    found = static_cast<int>(i);
  }
  return found;
}

} // namespace

Classification classify_isometry(const NSLattice& lattice, const IntMatrix& m) {
  const std::size_t dim = lattice.dim();
  if (m.rows() != dim || m.cols() != dim)
    throw Error(ErrorCode::ShapeError, "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                           ", lattice has rank " + std::to_string(dim));
  if (!preserves_form(m, lattice.gram())) {
    Classification c;
    c.reason = "matrix does not preserve the intersection form";
    return c;
  }
  const auto& config = lattice.config();

  UniversalIsometry iso;
  const auto f = lattice.fiber_class();
  const auto mf = m.apply(f);
  if (mf == f) {
    iso.sign = 1;
  } else {
    auto neg = f;
    for (auto& x : neg) x = -x;
    if (mf != neg) return not_universal("image of F is not +-F");
    iso.sign = -1;
  }
  const IntMatrix signed_m = Int{iso.sign} * m;

  // Strip the Weyl part fiber by fiber: right-multiply by simple
  // reflections while some simple root is sent to a negative root.
  for (std::size_t t = 0; t < config.fibers().size(); ++t) {
    const int ti = static_cast<int>(t);
    const int n = config.fibers()[t].n;
    const FibralSpace space(n);
    std::vector<std::vector<Int>> imgs;
    for (int i = 0; i < n; ++i) {
      auto a = lattice.fibral_coordinates(ti, signed_m.apply(lattice.component(ti, i)));
      if (!a) return not_universal("image of v[" + config.fibers()[t].name + "," + std::to_string(i) + "] is not fibral");
      imgs.push_back(std::move(*a));
    }
    std::vector<int> letters;
    for (int steps = 0;; ++steps) {
      if (steps > kMaxReductions) return not_universal("Weyl reduction did not terminate at fiber " + config.fibers()[t].name);
      int i = 0;
      while (i < n && !is_negative(imgs[static_cast<std::size_t>(i)])) ++i;
      if (i == n) break;
      const auto old = imgs[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const Int g = space.gram(j, i);
        if (g == 0) continue;
        auto& img = imgs[static_cast<std::size_t>(j)];
        for (std::size_t c = 0; c < img.size(); ++c) img[c] = fma(img[c], g, old[c]);
      }
      for (auto& x : imgs[static_cast<std::size_t>(i)]) x = -x;
      letters.push_back(i);
    }
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      sigma[static_cast<std::size_t>(i)] = as_simple_root(imgs[static_cast<std::size_t>(i)]);
      if (sigma[static_cast<std::size_t>(i)] < 0)
        return not_universal("fiber " + config.fibers()[t].name + " is not permuted up to a Weyl element");
    }
    std::vector<int> x;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) x.push_back(sigma[static_cast<std::size_t>(*it)]);
    if (!x.empty()) {
      WeylWord w(space, x);
      iso.weyl.emplace(config.fibers()[t].name, std::move(w));
    }
  }

  // Psi = PL(x)^-1 M'; the Weyl matrix is inverted by reversing its word.
  IntMatrix inverse_weyl = IntMatrix::identity(dim);
  for (const auto& [name, w] : iso.weyl) inverse_weyl = inverse_weyl * weyl_matrix(lattice, config.fiber_index(name), w.inverse());
  const IntMatrix psi = inverse_weyl * signed_m;

  const auto image_o = psi.column(NSLattice::kO);
  std::optional<SectionRef> p;
  for (SectionRef s = kZero; s < static_cast<SectionRef>(config.sections().size()); ++s)
    if (lattice.section(s) == image_o) p = s;
  if (!p) return not_universal("zero section is not sent to a tracked section");
  if (*p != kZero) iso.translate = config.section_name(*p);

  for (bool invert : {false, true}) {
    iso.invert = invert;
    UniversalIsometry residual{1, {}, iso.translate, invert};
    try {
      if (isometry_matrix(lattice, residual) != psi) continue;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UntrackedTranslate) throw;
      continue;
    }
    Classification c;
    c.kind = Classification::Kind::Universal;
    c.effective = iso.effective();
    c.isometry = std::move(iso);
    return c;
  }
  return not_universal("residual is neither a translation nor a translation composed with inversion");
}

} // namespace weylns
