#pragma once

#include <random>

#include "weylns/ns_model.hpp"

namespace fixtures {

using namespace weylns;

// I_3 + I_9 with Z/3 torsion {O, P, P2}; P meets v[t1,3], P2 meets v[t1,6].
inline SurfaceConfig z3(bool with_q = false) {
  std::vector<SectionSpec> sections = {
      {"P", {{"t1", 3}}, std::nullopt, {{"O", 0}}, std::vector<Int>{1}},
      {"P2", {{"t1", 6}}, std::nullopt, {{"O", 0}}, std::vector<Int>{2}},
  };
  // Q has no group coordinates, so it never takes part in translations.
  if (with_q) sections.push_back({"Q", {{"t0", 1}, {"t1", 5}}, std::nullopt, {{"O", 1}, {"P", 0}, {"P2", 0}}, {}});
  return SurfaceConfig({{"t0", 3}, {"t1", 9}}, std::move(sections), MordellWeilSpec{0, {3}});
}

inline SurfaceConfig four_i3() { return SurfaceConfig({{"a", 3}, {"b", 3}, {"c", 3}, {"d", 3}}, {}); }

// Random canonical form whose translation stays inside the tracked table.
inline UniversalIsometry random_isometry(const SurfaceConfig& config, std::mt19937_64& rng, int max_letters = 6) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  UniversalIsometry iso;
  iso.sign = pick(0, 1) ? 1 : -1;
  for (const auto& f : config.fibers()) {
    if (pick(0, 2) == 0) continue;
    std::vector<int> letters(static_cast<std::size_t>(pick(1, max_letters)));
    for (auto& l : letters) l = pick(0, f.n - 1);
    iso.weyl.emplace(f.name, WeylWord(FibralSpace(f.n), letters));
  }
  std::vector<std::string> translations;
  for (const auto& s : config.sections())
    if (s.mw) translations.push_back(s.name);
  const int t = pick(0, static_cast<int>(translations.size()));
  if (t > 0) iso.translate = translations[static_cast<std::size_t>(t - 1)];
  iso.invert = pick(0, 1) == 1;
  return iso;
}

} // namespace fixtures
