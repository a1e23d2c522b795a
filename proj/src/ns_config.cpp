#include <algorithm>
#include <numeric>
#include <set>

#include "weylns/error.hpp"
#include "weylns/ns_model.hpp"

namespace weylns {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

} // namespace

SurfaceConfig::SurfaceConfig(std::vector<FiberSpec> fibers, std::vector<SectionSpec> sections,
                             std::optional<MordellWeilSpec> mordell_weil)
    : fibers_(std::move(fibers)), sections_(std::move(sections)), mordell_weil_(std::move(mordell_weil)) {
  std::set<std::string> names{"O", "F"};
  long long total = 0;
  for (const auto& f : fibers_) {
    if (f.name.empty() || !names.insert(f.name).second) invalid("fiber name '" + f.name + "' is empty or repeated");
    if (f.n < 3)
      throw Error(ErrorCode::ConfigSmallFiber, "fiber '" + f.name + "' is I_" + std::to_string(f.n) + "; need n >= 3");
    total += f.n;
  }
  if (total <= 0 || total % 12 != 0)
    throw Error(ErrorCode::ConfigInvalidDivisibility,
                "fiber sizes sum to " + std::to_string(total) + ", need a positive multiple of 12");
  chi_ = total / 12;

  std::size_t coord_len = 0;
  if (mordell_weil_) {
    if (mordell_weil_->rank < 0) invalid("negative Mordell-Weil rank");
    for (int m : mordell_weil_->torsion)
      if (m < 2) invalid("torsion factor orders must be >= 2");
    coord_len = static_cast<std::size_t>(mordell_weil_->rank) + mordell_weil_->torsion.size();
  }

  for (auto& s : sections_) {
    if (s.name.empty() || !names.insert(s.name).second) invalid("section name '" + s.name + "' is empty or repeated");
    for (auto& [fiber, c] : s.components) {
      const int t = fiber_index(fiber);
      c = mod(c, fibers_[static_cast<std::size_t>(t)].n);
    }
    if (s.order && *s.order < 2) invalid("section '" + s.name + "' has torsion order < 2");
    if (s.mw) {
      if (!mordell_weil_) invalid("section '" + s.name + "' has group coordinates but no mordell_weil group is declared");
      if (s.mw->size() != coord_len) invalid("section '" + s.name + "' has the wrong number of group coordinates");
      bool free_part = false;
      Int order = 1;
      for (std::size_t i = 0; i < coord_len; ++i) {
        if (i < static_cast<std::size_t>(mordell_weil_->rank)) {
          free_part = free_part || (*s.mw)[i] != 0;
        } else {
          const int m = mordell_weil_->torsion[i - static_cast<std::size_t>(mordell_weil_->rank)];
          (*s.mw)[i] = mod((*s.mw)[i], m);
          order = std::lcm(order, static_cast<Int>(m / std::gcd<Int, Int>((*s.mw)[i], m)));
        }
      }
      if (!free_part && order == 1) invalid("section '" + s.name + "' has the coordinates of O");
      const std::optional<int> expected = free_part ? std::nullopt : std::optional<int>(static_cast<int>(order));
      if (s.order && s.order != expected)
        invalid("section '" + s.name + "' declares order " + std::to_string(*s.order) +
                " inconsistent with its group coordinates");
      s.order = expected;
    }
  }

  // Torsion injects into the product of component groups; O is torsion too.
  for (std::size_t a = 0; a < sections_.size(); ++a) {
    if (!sections_[a].order) continue;
    bool all_zero = true;
    for (std::size_t t = 0; t < fibers_.size(); ++t) all_zero = all_zero && component(static_cast<int>(a), static_cast<int>(t)) == 0;
    if (all_zero)
      throw Error(ErrorCode::TorsionCollision, "torsion section '" + sections_[a].name + "' has the component vector of O");
    for (std::size_t b = a + 1; b < sections_.size(); ++b) {
      if (!sections_[b].order) continue;
      bool same = true;
      for (std::size_t t = 0; t < fibers_.size(); ++t)
        same = same && component(static_cast<int>(a), static_cast<int>(t)) == component(static_cast<int>(b), static_cast<int>(t));
      if (same)
        throw Error(ErrorCode::TorsionCollision,
                    "torsion sections '" + sections_[a].name + "' and '" + sections_[b].name + "' meet the same components");
    }
  }

  for (std::size_t a = 0; a < sections_.size(); ++a) {
    if (!sections_[a].mw) continue;
    for (std::size_t b = a + 1; b < sections_.size(); ++b)
      if (sections_[b].mw && sections_[a].mw == sections_[b].mw)
        invalid("sections '" + sections_[a].name + "' and '" + sections_[b].name + "' have equal group coordinates");
  }

  // Components are additive along the tracked group law.
  for (SectionRef a = kZero; a < static_cast<SectionRef>(sections_.size()); ++a)
    for (SectionRef b = a; b < static_cast<SectionRef>(sections_.size()); ++b) {
      const auto s = sum(a, b);
      if (!s) continue;
      for (std::size_t t = 0; t < fibers_.size(); ++t) {
        const int ti = static_cast<int>(t);
        if (component(*s, ti) != mod(component(a, ti) + component(b, ti), fibers_[t].n))
          invalid("components of '" + section_name(*s) + "' are not the sum of those of '" + section_name(a) +
                  "' and '" + section_name(b) + "' at fiber '" + fibers_[t].name + "'");
      }
    }

  complete_pairings();
}

int SurfaceConfig::fiber_index(std::string_view name) const {
  for (std::size_t t = 0; t < fibers_.size(); ++t)
    if (fibers_[t].name == name) return static_cast<int>(t);
  invalid("unknown fiber '" + std::string(name) + "'");
}

SectionRef SurfaceConfig::section_ref(std::string_view name) const {
  if (name == "O") return kZero;
  for (std::size_t s = 0; s < sections_.size(); ++s)
    if (sections_[s].name == name) return static_cast<SectionRef>(s);
  invalid("unknown section '" + std::string(name) + "'");
}

std::string SurfaceConfig::section_name(SectionRef s) const {
  return s == kZero ? "O" : sections_.at(static_cast<std::size_t>(s)).name;
}

int SurfaceConfig::component(SectionRef s, int t) const {
  if (s == kZero) return 0;
  const auto& comps = sections_.at(static_cast<std::size_t>(s)).components;
  const auto it = comps.find(fibers_.at(static_cast<std::size_t>(t)).name);
  return it == comps.end() ? 0 : it->second;
}

Int SurfaceConfig::pairing(SectionRef a, SectionRef b) const {
  if (a == b) return -chi_;
  if (a == kZero) std::swap(a, b);
  return sections_.at(static_cast<std::size_t>(a)).pairings.at(section_name(b));
}

bool SurfaceConfig::is_torsion(SectionRef s) const {
  return s == kZero || sections_.at(static_cast<std::size_t>(s)).order.has_value();
}

bool SurfaceConfig::is_narrow(SectionRef s) const {
  for (std::size_t t = 0; t < fibers_.size(); ++t)
    if (component(s, static_cast<int>(t)) != 0) return false;
  return true;
}

std::optional<std::vector<Int>> SurfaceConfig::coords(SectionRef s) const {
  if (!mordell_weil_) return std::nullopt;
  if (s == kZero) return std::vector<Int>(static_cast<std::size_t>(mordell_weil_->rank) + mordell_weil_->torsion.size(), 0);
  return sections_.at(static_cast<std::size_t>(s)).mw;
}

std::optional<SectionRef> SurfaceConfig::find_coords(const std::vector<Int>& c) const {
  if (std::all_of(c.begin(), c.end(), [](Int x) { return x == 0; })) return kZero;
  for (std::size_t s = 0; s < sections_.size(); ++s)
    if (sections_[s].mw == c) return static_cast<SectionRef>(s);
  return std::nullopt;
}

std::optional<SectionRef> SurfaceConfig::sum(SectionRef a, SectionRef b) const {
  if (a == kZero) return b;
  if (b == kZero) return a;
  const auto ca = coords(a);
  const auto cb = coords(b);
  if (!ca || !cb) return std::nullopt;
  std::vector<Int> c(ca->size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = add((*ca)[i], (*cb)[i]);
    if (i >= static_cast<std::size_t>(mordell_weil_->rank))
      c[i] = mod(c[i], mordell_weil_->torsion[i - static_cast<std::size_t>(mordell_weil_->rank)]);
  }
  return find_coords(c);
}

std::optional<SectionRef> SurfaceConfig::negate(SectionRef a) const {
  if (a == kZero) return kZero;
  const auto ca = coords(a);
  if (!ca) return std::nullopt;
  std::vector<Int> c(ca->size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = -(*ca)[i];
    if (i >= static_cast<std::size_t>(mordell_weil_->rank))
      c[i] = mod(c[i], mordell_weil_->torsion[i - static_cast<std::size_t>(mordell_weil_->rank)]);
  }
  return find_coords(c);
}

// Fills every section's pairing map from the declarations, their symmetric
// counterparts, and (Q+P).(Q'+P) = Q.Q'; rejects conflicts and gaps.
void SurfaceConfig::complete_pairings() {
  const int m = static_cast<int>(sections_.size());
  auto slot = [](SectionRef s) { return static_cast<std::size_t>(s + 1); };
  std::vector<std::vector<std::optional<Int>>> table(static_cast<std::size_t>(m + 1),
                                                     std::vector<std::optional<Int>>(static_cast<std::size_t>(m + 1)));
  auto set = [&](SectionRef a, SectionRef b, Int v) {
    auto& cell = table[slot(a)][slot(b)];
    if (cell && *cell != v)
      invalid("conflicting intersection numbers for '" + section_name(a) + "' and '" + section_name(b) + "'");
    cell = v;
    table[slot(b)][slot(a)] = v;
  };
  for (SectionRef a = kZero; a < m; ++a) set(a, a, -chi_);
  for (SectionRef a = 0; a < m; ++a)
    for (const auto& [other, v] : sections_[static_cast<std::size_t>(a)].pairings) set(a, section_ref(other), v);

  std::vector<SectionRef> translations;
  for (SectionRef p = 0; p < m; ++p)
    if (coords(p)) translations.push_back(p);

  bool changed = true;
  while (changed) {
    changed = false;
    for (SectionRef a = kZero; a < m; ++a)
      for (SectionRef b = kZero; b < m; ++b) {
        if (!table[slot(a)][slot(b)]) continue;
        for (SectionRef p : translations) {
          const auto ap = sum(a, p);
          const auto bp = sum(b, p);
          if (!ap || !bp) continue;
          auto& cell = table[slot(*ap)][slot(*bp)];
          if (!cell) {
            set(*ap, *bp, *table[slot(a)][slot(b)]);
            changed = true;
          } else if (*cell != *table[slot(a)][slot(b)]) {
            invalid("intersection numbers are not translation invariant: '" + section_name(a) + "'.'" +
                    section_name(b) + "' vs '" + section_name(*ap) + "'.'" + section_name(*bp) + "'");
          }
        }
      }
  }

  for (SectionRef a = 0; a < m; ++a) {
    auto& pairings = sections_[static_cast<std::size_t>(a)].pairings;
    pairings.clear();
    for (SectionRef b = kZero; b < m; ++b) {
      if (b == a) continue;
      const auto& cell = table[slot(a)][slot(b)];
      if (!cell)
        invalid("intersection number of '" + section_name(a) + "' and '" + section_name(b) +
                "' is neither declared nor derivable");
      pairings[section_name(b)] = *cell;
    }
  }
}

} // namespace weylns
