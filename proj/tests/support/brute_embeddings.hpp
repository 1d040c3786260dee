#pragma once

#include <cstddef>

#include "kimlab/structure.hpp"

namespace kimlab::testing {

/// Number of L_n-embeddings a -> b, counted over every injection of the
/// universes and checked condition by condition.
std::size_t count_embeddings_brute(const FinStructure& a, const FinStructure& b);

}  // namespace kimlab::testing
