#pragma once

#include "weylns/ns_model.hpp"

namespace weylns {

/// Reflection in v^t_k on NS(X), computed with the full Gram matrix.
IntMatrix reflection_matrix(const NSLattice& lat, int t, int k);
/// Product of reflections along a word, leftmost letter acting last.
IntMatrix weyl_matrix(const NSLattice& lat, int t, const WeylWord& w);

} // namespace weylns
