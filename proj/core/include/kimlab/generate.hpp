#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "kimlab/structure.hpp"

namespace kimlab {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). bound must be positive.
std::size_t uniform_below(Rng& rng, std::size_t bound);

struct RandomShape {
  int n = 1;
  std::size_t objects = 0;
  std::size_t functions = 0;
  std::size_t classes = 0;
};

/// A random valid structure with ids 0..objects-1 in O and the following
/// `functions` ids in F. Every class is non-empty; with classes == objects E
/// is equality. Deterministic per seed. Throws DomainError when
/// classes > objects or classes == 0 < objects.
FinStructure random_structure(const RandomShape& shape, std::uint64_t seed);
FinStructure random_structure(const RandomShape& shape, Rng& rng);

/// A random valid extension of `base` by `extra_objects` O-elements and
/// `extra_functions` F-elements with fresh ids starting at `first_id`
/// (default: base.next_free_id()). `base` is a substructure of the result.
FinStructure random_extension(const FinStructure& base,
                              std::size_t extra_objects,
                              std::size_t extra_functions, Rng& rng,
                              std::optional<ElemId> first_id = std::nullopt);

/// Calls `visit` on every structure in K_n with exactly `size` elements and
/// ids 0..size-1, O-elements first. Every isomorphism type is visited at
/// least once. `visit` returns false to stop; the function then returns false.
bool enumerate_structures(int n, std::size_t size,
                          const std::function<bool(const FinStructure&)>& visit);

/// All set partitions of {0..k-1} as restricted growth strings.
void for_each_partition(std::size_t k,
                        const std::function<void(const std::vector<std::size_t>&)>& visit);

}  // namespace kimlab
