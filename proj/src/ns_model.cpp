#include <cctype>
#include <charconv>
#include <sstream>

#include "weylns/error.hpp"
#include "weylns/lift.hpp"
#include "weylns/ns_model.hpp"
#include "ns_internal.hpp"

namespace weylns {

NSLattice::NSLattice(SurfaceConfig config) : config_(std::move(config)) {
  labels_ = {"O", "F"};
  const auto& fibers = config_.fibers();
  for (const auto& f : fibers) {
    fiber_offset_.push_back(labels_.size());
    for (int i = 1; i < f.n; ++i) labels_.push_back("v[" + f.name + "," + std::to_string(i) + "]");
  }
  trivial_rank_ = labels_.size();
  section_offset_ = labels_.size();
  for (const auto& s : config_.sections()) labels_.push_back("(" + s.name + ")");

  const std::size_t d = labels_.size();
  const Int chi = config_.chi();
  std::vector<std::vector<Int>> g(d, std::vector<Int>(d, 0));
  g[kO][kO] = -chi;
  g[kO][kF] = g[kF][kO] = 1;
  for (std::size_t t = 0; t < fibers.size(); ++t) {
    const FibralSpace space(fibers[t].n);
    for (int i = 1; i < fibers[t].n; ++i)
      for (int j = 1; j < fibers[t].n; ++j) g[fiber_offset_[t] + i - 1][fiber_offset_[t] + j - 1] = space.gram(i, j);
  }
  const int m = static_cast<int>(config_.sections().size());
  for (SectionRef s = 0; s < m; ++s) {
    const std::size_t r = section_index(s);
    g[r][kO] = g[kO][r] = config_.pairing(s, kZero);
    g[r][kF] = g[kF][r] = 1;
    for (std::size_t t = 0; t < fibers.size(); ++t) {
      const int c = config_.component(s, static_cast<int>(t));
      if (c != 0) g[r][fibral_index(static_cast<int>(t), c)] = g[fibral_index(static_cast<int>(t), c)][r] = 1;
    }
    for (SectionRef q = 0; q < m; ++q) g[r][section_index(q)] = config_.pairing(s, q);
  }
  gram_ = IntMatrix::from_rows(g);
}

std::size_t NSLattice::fibral_index(int t, int i) const {
  const int n = config_.fibers().at(static_cast<std::size_t>(t)).n;
  const int r = mod(i, n);
  if (r == 0) throw Error(ErrorCode::PreconditionViolated, "v[t,0] is a derived class, not a basis element");
  return fiber_offset_[static_cast<std::size_t>(t)] + static_cast<std::size_t>(r) - 1;
}

std::size_t NSLattice::section_index(SectionRef s) const {
  if (s == kZero) return kO;
  if (s < 0 || s >= static_cast<SectionRef>(config_.sections().size()))
    throw Error(ErrorCode::PreconditionViolated, "section handle out of range");
  return section_offset_ + static_cast<std::size_t>(s);
}

std::vector<Int> NSLattice::fiber_class() const {
  auto x = zero();
  x[kF] = 1;
  return x;
}

std::vector<Int> NSLattice::component(int t, long long i) const {
  const int n = config_.fibers().at(static_cast<std::size_t>(t)).n;
  auto x = zero();
  const int r = mod(i, n);
  if (r != 0) {
    x[fibral_index(t, r)] = 1;
    return x;
  }
  x[kF] = 1;
  for (int j = 1; j < n; ++j) x[fibral_index(t, j)] = -1;
  return x;
}

std::vector<Int> NSLattice::section(SectionRef s) const {
  auto x = zero();
  x[section_index(s)] = 1;
  return x;
}

std::optional<std::vector<Int>> NSLattice::fibral_coordinates(int t, std::span<const Int> x) const {
  if (x.size() != dim()) throw Error(ErrorCode::ShapeError, "vector has the wrong dimension");
  const int n = config_.fibers().at(static_cast<std::size_t>(t)).n;
  const std::size_t lo = fiber_offset_[static_cast<std::size_t>(t)];
  const std::size_t hi = lo + static_cast<std::size_t>(n) - 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != kF && (i < lo || i >= hi) && x[i] != 0) return std::nullopt;
  std::vector<Int> a(static_cast<std::size_t>(n));
  a[0] = x[kF];
  for (int i = 1; i < n; ++i) a[static_cast<std::size_t>(i)] = add(x[kF], x[lo + static_cast<std::size_t>(i) - 1]);
  return a;
}

std::vector<Int> NSLattice::from_fibral(int t, std::span<const Int> a) const {
  const int n = config_.fibers().at(static_cast<std::size_t>(t)).n;
  if (a.size() != static_cast<std::size_t>(n)) throw Error(ErrorCode::ShapeError, "fibral vector has the wrong size");
  auto x = zero();
  x[kF] = a[0];
  for (int i = 1; i < n; ++i) x[fibral_index(t, i)] = sub(a[static_cast<std::size_t>(i)], a[0]);
  return x;
}

namespace {

class DivisorParser {
public:
  DivisorParser(const NSLattice& lattice, std::string_view text) : lattice_(lattice), text_(text) {}

  NSDivisor run() {
    NSDivisor d{lattice_.zero()};
    skip_space();
    if (at_end()) fail("empty divisor");
    bool first = true;
    while (!at_end()) {
      Int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Int coeff = 1;
      bool has_number = false;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = number();
        has_number = true;
        skip_space();
        if (!at_end() && peek() == '*') {
          ++pos_;
          skip_space();
        }
      }
      coeff = mul(sign, coeff);
      if (at_end() || peek() == '+' || peek() == '-') {
        if (!has_number || coeff != 0) fail("expected a basis symbol");
        continue;
      }
      const auto v = symbol();
      for (std::size_t i = 0; i < v.size(); ++i) d.coeffs[i] = fma(d.coeffs[i], coeff, v[i]);
      skip_space();
    }
    return d;
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  Int number() {
    const bool negative = !at_end() && peek() == '-';
    if (negative) ++pos_;
    Int value = 0;
    const auto* begin = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
    if (ec != std::errc() || ptr == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return negative ? -value : value;
  }

  std::string until(char stop) {
    const std::size_t end = text_.find(stop, pos_);
    if (end == std::string_view::npos) fail(std::string("missing '") + stop + "'");
    std::string out(text_.substr(pos_, end - pos_));
    pos_ = end + 1;
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.front()))) out.erase(out.begin());
    return out;
  }

  std::vector<Int> symbol() {
    const char c = peek();
    if (c == 'O' || c == 'F') {
      ++pos_;
      if (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) fail("unknown symbol");
      return c == 'O' ? lattice_.section(kZero) : lattice_.fiber_class();
    }
    if (c == '(') {
      ++pos_;
      const std::string name = until(')');
      try {
        return lattice_.section(lattice_.config().section_ref(name));
      } catch (const Error&) {
        fail("unknown section '" + name + "'");
      }
    }
    if (c == 'v' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '[') {
      pos_ += 2;
      const std::string fiber = until(',');
      skip_space();
      const Int i = number();
      skip_space();
      if (at_end() || peek() != ']') fail("expected ']'");
      ++pos_;
      int t = 0;
      try {
        t = lattice_.config().fiber_index(fiber);
      } catch (const Error&) {
        fail("unknown fiber '" + fiber + "'");
      }
      return lattice_.component(t, i);
    }
    fail("unknown symbol");
  }

  const NSLattice& lattice_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

NSDivisor NSLattice::parse(std::string_view text) const { return DivisorParser(*this, text).run(); }

std::string NSLattice::render(const NSDivisor& d) const {
  if (d.coeffs.size() != dim()) throw Error(ErrorCode::ShapeError, "divisor has the wrong dimension");
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
    const Int c = d.coeffs[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const Int a = c < 0 ? -c : c;
    if (a != 1) os << a;
    os << labels_[i];
    first = false;
  }
  return first ? "0" : os.str();
}

NSLattice build_ns(const SurfaceConfig& config) { return NSLattice(config); }

HyperbolicBlock of_block(Int chi) {
  if (chi < 1) throw Error(ErrorCode::InvalidParameters, "chi must be positive");
  HyperbolicBlock b{chi, chi % 2 != 0, IntMatrix::from_rows({{-chi, 1}, {1, 0}}), {}, {}};
  if (b.odd)
    b.basis_change = IntMatrix::from_columns({{1, (chi + 1) / 2}, {1, (chi - 1) / 2}});
  else
    b.basis_change = IntMatrix::from_columns({{1, chi / 2}, {0, 1}});
  b.reduced = b.basis_change.transposed() * b.gram * b.basis_change;
  return b;
}

NSPullback pullback_ns(const SurfaceConfig& config, const RamificationProfile& profile) {
  const int d = profile.degree();
  const auto& fibers = config.fibers();
  for (const auto& p : profile.points()) {
    bool known = false;
    for (const auto& f : fibers) known = known || f.name == p.name;
    if (!known) throw Error(ErrorCode::InvalidProfile, "profile point '" + p.name + "' is not a singular fiber");
  }

  std::vector<FiberSpec> new_fibers;
  std::vector<FiberOrigin> origins;
  std::vector<std::vector<int>> degrees(fibers.size());
  for (std::size_t t = 0; t < fibers.size(); ++t) {
    bool listed = false;
    for (const auto& p : profile.points())
      if (p.name == fibers[t].name) {
        degrees[t] = p.degrees;
        listed = true;
      }
    // Points the profile does not mention are unramified.
    if (!listed) degrees[t].assign(static_cast<std::size_t>(d), 1);
    const auto types = fiber_type_after(degrees[t], fibers[t].n);
    for (std::size_t y = 0; y < types.size(); ++y) {
      new_fibers.push_back({fibers[t].name + "." + std::to_string(y), types[y]});
      origins.push_back({static_cast<int>(t), degrees[t][y]});
    }
  }

  std::vector<SectionSpec> new_sections;
  for (std::size_t s = 0; s < config.sections().size(); ++s) {
    SectionSpec spec = config.sections()[s];
    spec.components.clear();
    for (std::size_t b = 0; b < new_fibers.size(); ++b) {
      const int c = config.component(static_cast<SectionRef>(s), origins[b].source_fiber);
      if (c != 0) spec.components[new_fibers[b].name] = c * origins[b].local_degree;
    }
    for (auto& [other, v] : spec.pairings) v = mul(v, d);
    new_sections.push_back(std::move(spec));
  }

  NSPullback out{SurfaceConfig(std::move(new_fibers), std::move(new_sections), config.mordell_weil()),
                 std::move(origins), d, {}};
  const NSLattice base(config);
  const NSLattice target(out.config);
  std::vector<std::vector<Int>> columns(base.dim());
  columns[NSLattice::kO] = target.section(kZero);
  columns[NSLattice::kF] = target.zero();
  columns[NSLattice::kF][NSLattice::kF] = d;
  for (std::size_t t = 0; t < fibers.size(); ++t) {
    const FibralSpace space(fibers[t].n);
    for (int k = 1; k < fibers[t].n; ++k) {
      auto col = target.zero();
      for (std::size_t b = 0; b < out.origins.size(); ++b) {
        if (out.origins[b].source_fiber != static_cast<int>(t)) continue;
        const auto local = pullback_basis(space, out.origins[b].local_degree, k);
        const auto x = target.from_fibral(static_cast<int>(b), local.coeffs());
        for (std::size_t i = 0; i < col.size(); ++i) col[i] = add(col[i], x[i]);
      }
      columns[base.fibral_index(static_cast<int>(t), k)] = std::move(col);
    }
  }
  for (SectionRef s = 0; s < static_cast<SectionRef>(config.sections().size()); ++s)
    columns[base.section_index(s)] = target.section(s);
  out.map = IntMatrix::from_columns(columns);
  return out;
}

bool UniversalIsometry::effective() const {
  if (sign != 1) return false;
  for (const auto& [name, w] : weyl)
    if (!matrix_of(w).is_identity()) return false;
  return true;
}

nlohmann::json to_json(const UniversalIsometry& iso) {
  nlohmann::json weyl = nlohmann::json::object();
  for (const auto& [name, w] : iso.weyl) weyl[name] = w.letters();
  return {{"sign", iso.sign},
          {"weyl", weyl},
          {"translate", iso.translate ? nlohmann::json(*iso.translate) : nlohmann::json(nullptr)},
          {"invert", iso.invert},
          {"effective", iso.effective()}};
}

UniversalIsometry isometry_from_json(const SurfaceConfig& config, const nlohmann::json& j) {
  auto bad = [](const std::string& what) -> Error { return Error(ErrorCode::ParseError, "isometry: " + what); };
  if (!j.is_object()) throw bad("expected an object");
  UniversalIsometry iso;
  if (j.contains("sign")) {
    if (!j["sign"].is_number_integer() || (j["sign"] != 1 && j["sign"] != -1)) throw bad("'sign' must be 1 or -1");
    iso.sign = j["sign"].get<int>();
  }
  if (j.contains("weyl")) {
    if (!j["weyl"].is_object()) throw bad("'weyl' must map fiber names to letter lists");
    for (const auto& [name, letters] : j["weyl"].items()) {
      int t = 0;
      try {
        t = config.fiber_index(name);
      } catch (const Error&) {
        throw bad("unknown fiber '" + name + "'");
      }
      if (!letters.is_array()) throw bad("'weyl." + name + "' must be an array");
      std::vector<int> ls;
      for (const auto& l : letters) {
        if (!l.is_number_integer()) throw bad("'weyl." + name + "' must hold integers");
        ls.push_back(l.get<int>());
      }
      try {
        iso.weyl.emplace(name, WeylWord(FibralSpace(config.fibers()[static_cast<std::size_t>(t)].n), ls));
      } catch (const Error& e) {
        throw bad("'weyl." + name + "': " + e.what());
      }
    }
  }
  if (j.contains("translate") && !j["translate"].is_null()) {
    if (!j["translate"].is_string()) throw bad("'translate' must be a section name");
    const auto name = j["translate"].get<std::string>();
    try {
      if (config.section_ref(name) != kZero) iso.translate = name;
    } catch (const Error&) {
      throw bad("unknown section '" + name + "'");
    }
  }
  if (j.contains("invert")) {
    if (!j["invert"].is_boolean()) throw bad("'invert' must be a boolean");
    iso.invert = j["invert"].get<bool>();
  }
  return iso;
}

namespace {

SectionRef tracked(std::optional<SectionRef> s, const std::string& what) {
  if (!s) throw Error(ErrorCode::UntrackedTranslate, what + " is not a tracked section");
  return *s;
}

IntMatrix inversion_matrix(const NSLattice& lat) {
  const auto& config = lat.config();
  std::vector<std::vector<Int>> columns(lat.dim());
  columns[NSLattice::kO] = lat.section(kZero);
  columns[NSLattice::kF] = lat.fiber_class();
  for (std::size_t t = 0; t < config.fibers().size(); ++t)
    for (int i = 1; i < config.fibers()[t].n; ++i)
      columns[lat.fibral_index(static_cast<int>(t), i)] = lat.component(static_cast<int>(t), -i);
  for (SectionRef s = 0; s < static_cast<SectionRef>(config.sections().size()); ++s)
    columns[lat.section_index(s)] = lat.section(tracked(config.negate(s), "-" + config.section_name(s)));
  return IntMatrix::from_columns(columns);
}

IntMatrix translation_matrix(const NSLattice& lat, SectionRef p) {
  const auto& config = lat.config();
  std::vector<std::vector<Int>> columns(lat.dim());
  columns[NSLattice::kO] = lat.section(p);
  columns[NSLattice::kF] = lat.fiber_class();
  for (std::size_t t = 0; t < config.fibers().size(); ++t) {
    const int c = config.component(p, static_cast<int>(t));
    for (int i = 1; i < config.fibers()[t].n; ++i)
      columns[lat.fibral_index(static_cast<int>(t), i)] = lat.component(static_cast<int>(t), i + c);
  }
  for (SectionRef s = 0; s < static_cast<SectionRef>(config.sections().size()); ++s)
    columns[lat.section_index(s)] =
        lat.section(tracked(config.sum(s, p), config.section_name(s) + " + " + config.section_name(p)));
  return IntMatrix::from_columns(columns);
}

} // namespace

// Reflection in v^t_k on NS(X): x -> x + <x, v> v.
IntMatrix reflection_matrix(const NSLattice& lat, int t, int k) {
  const auto u = lat.component(t, k);
  const auto gu = lat.gram().apply(u);
  auto m = IntMatrix::identity(lat.dim());
  for (std::size_t c = 0; c < lat.dim(); ++c)
    if (gu[c] != 0)
      for (std::size_t r = 0; r < lat.dim(); ++r) m(r, c) = fma(m(r, c), gu[c], u[r]);
  return m;
}

IntMatrix weyl_matrix(const NSLattice& lat, int t, const WeylWord& w) {
  auto m = IntMatrix::identity(lat.dim());
  for (int k : w.letters()) m = m * reflection_matrix(lat, t, k);
  return m;
}

IntMatrix isometry_matrix(const NSLattice& lattice, const UniversalIsometry& iso) {
  const auto& config = lattice.config();
  auto m = IntMatrix::identity(lattice.dim());
  for (const auto& [name, w] : iso.weyl) {
    const int t = config.fiber_index(name);
    if (w.space().size() != config.fibers()[static_cast<std::size_t>(t)].n)
      throw Error(ErrorCode::SpaceMismatch, "Weyl word for fiber '" + name + "' lives in the wrong group");
    m = m * weyl_matrix(lattice, t, w);
  }
  if (iso.translate) m = m * translation_matrix(lattice, config.section_ref(*iso.translate));
  if (iso.invert) m = m * inversion_matrix(lattice);
  if (iso.sign == -1) m = Int{-1} * m;
  return m;
}

IntMatrix isometry_matrix(const SurfaceConfig& base, const UniversalIsometry& iso, const RamificationProfile& profile) {
  const auto pulled = pullback_ns(base, profile);
  UniversalIsometry lifted{iso.sign, {}, iso.translate, iso.invert};
  for (const auto& [name, w] : iso.weyl) {
    const int t = base.fiber_index(name);
    for (std::size_t b = 0; b < pulled.origins.size(); ++b) {
      if (pulled.origins[b].source_fiber != t) continue;
      const LiftTable table(w.space().size(), pulled.origins[b].local_degree);
      lifted.weyl.emplace(pulled.config.fibers()[b].name, table.lift(w));
    }
  }
  return isometry_matrix(NSLattice(pulled.config), lifted);
}

NSDivisor act_isometry(const SurfaceConfig& base, const UniversalIsometry& iso, const NSDivisor& d,
                       const std::optional<RamificationProfile>& after) {
  const IntMatrix m = after ? isometry_matrix(base, iso, *after) : isometry_matrix(NSLattice(base), iso);
  if (d.coeffs.size() != m.cols()) throw Error(ErrorCode::ShapeError, "divisor has the wrong dimension");
  return {m.apply(d.coeffs)};
}

TorelliReport check_torelli_hypotheses(const NSLattice& lattice, const IntMatrix& m) {
  if (m.rows() != lattice.dim() || m.cols() != lattice.dim())
    throw Error(ErrorCode::ShapeError, "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                           ", lattice has rank " + std::to_string(lattice.dim()));
  if (!preserves_form(m, lattice.gram())) throw Error(ErrorCode::NotIsometry, "matrix does not preserve the form");
  const auto& config = lattice.config();
  TorelliReport r;
  r.fiber_preserved = m.apply(lattice.fiber_class()) == lattice.fiber_class();
  r.zero_section_preserved = m.apply(lattice.section(kZero)) == lattice.section(kZero);

  std::vector<std::vector<Int>> components;
  for (std::size_t t = 0; t < config.fibers().size(); ++t)
    for (int i = 0; i < config.fibers()[t].n; ++i) components.push_back(lattice.component(static_cast<int>(t), i));
  r.components_to_components = true;
  for (const auto& c : components) {
    const auto image = m.apply(c);
    bool found = false;
    for (const auto& c2 : components) found = found || c2 == image;
    r.components_to_components = r.components_to_components && found;
  }

  r.sections_to_sections = true;
  for (SectionRef s = kZero; s < static_cast<SectionRef>(config.sections().size()); ++s) {
    const auto image = m.apply(lattice.section(s));
    bool found = false;
    for (SectionRef q = kZero; q < static_cast<SectionRef>(config.sections().size()); ++q)
      found = found || lattice.section(q) == image;
    r.sections_to_sections = r.sections_to_sections && found;
  }
  return r;
}

bool is_effective_class(const NSLattice& lattice, const NSDivisor& d) {
  if (d.coeffs.size() != lattice.dim()) return false;
  const auto& config = lattice.config();
  for (SectionRef s = kZero; s < static_cast<SectionRef>(config.sections().size()); ++s)
    if (d.coeffs[lattice.section_index(s)] < 0) return false;
  // Each fiber may absorb copies of F as v^t_0 + ... + v^t_{n-1} to clear
  // negative component coefficients; F pays for them.
  Int needed = 0;
  for (std::size_t t = 0; t < config.fibers().size(); ++t) {
    Int lowest = 0;
    for (int i = 1; i < config.fibers()[t].n; ++i)
      lowest = std::min(lowest, d.coeffs[lattice.fibral_index(static_cast<int>(t), i)]);
    needed = sub(needed, lowest);
  }
  return d.coeffs[NSLattice::kF] >= needed;
}

Int fibral_bound(int n, std::span<const Int> a, int j) {
  if (n < 1 || a.size() != static_cast<std::size_t>(n))
    throw Error(ErrorCode::PreconditionViolated, "coefficient vector must have n entries");
  if (a[0] != 0) throw Error(ErrorCode::PreconditionViolated, "a_0 must be 0");
  Int v = 0;
  for (int i = 0; i < n; ++i) {
    const Int diff = sub(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(mod(i + 1, n))]);
    v = sub(v, mul(diff, diff));
  }
  return add(v, mul(2, a[static_cast<std::size_t>(mod(j, n))]));
}

} // namespace weylns
