#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "kimlab/structure.hpp"

namespace kimlab {

/// Injective, sort-preserving partial map between the element sets of two
/// structures.
class BaseMap {
 public:
  BaseMap() = default;

  /// Adds from -> to. Returns false (and leaves the map unchanged) when this
  /// would break functionality or injectivity.
  bool insert(ElemId from, ElemId to);
  std::optional<ElemId> at(ElemId from) const;
  bool contains_target(ElemId to) const { return inverse_.count(to) != 0; }
  std::size_t size() const { return forward_.size(); }
  const std::map<ElemId, ElemId>& pairs() const { return forward_; }

  bool operator==(const BaseMap&) const = default;
  auto operator<=>(const BaseMap& other) const {
    return forward_ <=> other.forward_;
  }

 private:
  std::map<ElemId, ElemId> forward_;
  std::map<ElemId, ElemId> inverse_;
};

/// True iff `map` is total on `a` and an L_n-embedding a -> b: injective,
/// sort-preserving, and preserving E, ¬E and eval.
bool is_embedding(const FinStructure& a, const FinStructure& b,
                  const BaseMap& map);

/// Enumerates the extensions of `partial` to embeddings a -> b in a fixed
/// order (elements of `a` ascending, F before O; candidates ascending).
/// `visit` returns false to stop early.
void for_each_embedding(const FinStructure& a, const FinStructure& b,
                        const BaseMap& partial,
                        const std::function<bool(const BaseMap&)>& visit);

std::vector<BaseMap> find_embeddings(const FinStructure& a,
                                     const FinStructure& b,
                                     const BaseMap& partial = {});

/// The map sending gens1[i] to gens2[i], extended to ⟨gens1⟩ in s1, if it is
/// well defined and an isomorphism onto ⟨gens2⟩ in s2. Since both sides are
/// generated, the extension is forced.
std::optional<BaseMap> generated_isomorphism(const FinStructure& s1,
                                             std::span<const ElemId> gens1,
                                             const FinStructure& s2,
                                             std::span<const ElemId> gens2);

/// a ≡_C b: fixing ⟨C⟩ pointwise and sending a to b extends to an
/// isomorphism ⟨Ca⟩ -> ⟨Cb⟩. By quantifier elimination this decides equality
/// of types over C in the generic model. Throws DomainError on length or sort
/// mismatch.
bool equal_type_over(std::span<const ElemId> c, std::span<const ElemId> a,
                     std::span<const ElemId> b, const FinStructure& s);

/// Cross-structure variant: tp(a/C) in s1 equals tp(b/C) in s2, where C is
/// a common set of ids.
bool equal_type_over(std::span<const ElemId> c, std::span<const ElemId> a,
                     const FinStructure& s1, std::span<const ElemId> b,
                     const FinStructure& s2);

}  // namespace kimlab
