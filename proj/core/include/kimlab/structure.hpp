#pragma once

// Finite models of the universal theory T_n: two sorts O and F, an
// equivalence relation E on O, and eval : F^n x O -> O such that each
// eval(f̄, -) is a selector function for E.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kimlab/report.hpp"

namespace kimlab {

/// Opaque element identifier. Identity across structures is by id.
struct ElemId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const ElemId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, ElemId id) {
  return os << 'e' << id.value;
}

enum class Sort : std::uint8_t { O, F };

inline char sort_char(Sort s) { return s == Sort::O ? 'O' : 'F'; }

using IdSet = std::vector<ElemId>;  // sorted, duplicate-free

/// Sorts and deduplicates.
IdSet make_id_set(std::vector<ElemId> ids);

class StructureBuilder;
class StructureAssembler;

/// An immutable finite L_n-structure. The eval table is stored totally, one
/// entry per (F-tuple, O-element); it may violate the selector axioms, which
/// is what validate() detects.
class FinStructure {
 public:
  /// The empty structure for arity n.
  explicit FinStructure(int n = 1);

  int arity() const { return n_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  /// All ids, ascending.
  const IdSet& elements() const { return elems_; }
  const IdSet& objects() const { return objects_; }
  const IdSet& functions() const { return functions_; }

  bool contains(ElemId id) const;
  /// Throws DomainError for unknown ids.
  Sort sort_of(ElemId id) const;

  std::size_t num_classes() const { return class_members_.size(); }
  /// E(a, b). Both must be O-elements.
  bool equivalent(ElemId a, ElemId b) const;
  /// Index of the E-class of an O-element; classes are numbered by their
  /// least member in ascending order.
  std::size_t class_index(ElemId o) const;
  /// Least member of the class of `o`.
  ElemId class_rep(ElemId o) const;
  const IdSet& class_members_of(std::size_t class_index) const {
    return class_members_[class_index];
  }

  /// eval(fs; o). `fs` must hold exactly n F-elements.
  ElemId eval(std::span<const ElemId> fs, ElemId o) const;

  /// Calls fn for every F-tuple of length n in lexicographic order.
  void for_each_tuple(const std::function<void(std::span<const ElemId>)>& fn) const;

  /// One past the largest id (0 for the empty structure).
  ElemId next_free_id() const;

  bool operator==(const FinStructure& other) const = default;

 private:
  friend class StructureBuilder;
  friend class StructureAssembler;

  std::size_t local(ElemId id) const;  // index into elems_, throws if absent
  std::size_t object_ordinal(ElemId o) const;
  std::size_t tuple_index(std::span<const ElemId> fs) const;

  int n_ = 1;
  IdSet elems_;
  std::vector<Sort> sorts_;                 // parallel to elems_
  std::vector<std::uint32_t> ordinal_;      // position within objects_/functions_
  IdSet objects_;
  IdSet functions_;
  std::vector<std::uint32_t> class_of_;     // per object ordinal
  std::vector<IdSet> class_members_;
  std::vector<std::uint32_t> table_;        // [tuple * |O| + object] -> object ordinal
};

/// Mutable construction of a FinStructure.
///
/// Eval entries can be given per element or per class. When building, an
/// element-level entry wins over a class-level entry for the element's final
/// class, and any remaining entry defaults to the least member of the class.
class StructureBuilder {
 public:
  explicit StructureBuilder(int n);
  /// Starts from `base`; its eval table is recorded at class level, so
  /// elements later added to a base class inherit the class's values.
  explicit StructureBuilder(const FinStructure& base);

  int arity() const { return n_; }
  bool contains(ElemId id) const { return sorts_.count(id) != 0; }
  std::optional<Sort> sort_of(ElemId id) const;

  /// Throws DomainError when the id is already present with another sort.
  StructureBuilder& add(ElemId id, Sort sort);
  /// Declares E(a, b).
  StructureBuilder& unite(ElemId a, ElemId b);
  StructureBuilder& set_eval(std::vector<ElemId> fs, ElemId o, ElemId value);
  /// Sets eval(fs; -) on the whole final class of `o`. Conflicting class
  /// entries raise ConstructionError at build time.
  StructureBuilder& set_eval_class(std::vector<ElemId> fs, ElemId o,
                                   ElemId value);

  /// Representative (least id) of the current class of an O-element.
  ElemId find(ElemId o) const;

  FinStructure build() const;

 private:
  int n_;
  std::map<ElemId, Sort> sorts_;
  mutable std::map<ElemId, ElemId> parent_;
  std::map<std::pair<std::vector<ElemId>, ElemId>, ElemId> element_entries_;
  std::vector<std::pair<std::pair<std::vector<ElemId>, ElemId>, ElemId>>
      class_entries_;
};

/// Checks the T_n axioms; never throws. A failing report names the violating
/// tuple and elements.
Report validate(const FinStructure& s);

/// Id-set of the substructure generated by `x`. Because
/// eval(f̄, eval(ḡ, o)) = eval(f̄, o) in models of T_n, a single step of
/// closure suffices; the loop still runs to a fixed point so that invalid
/// tables are handled.
IdSet closure(const FinStructure& s, std::span<const ElemId> x);

/// The induced structure on `ids`. Throws DomainError when `ids` is not
/// closed under eval or contains unknown ids.
FinStructure restrict_to(const FinStructure& s, std::span<const ElemId> ids);

/// The smallest substructure containing `x`.
FinStructure generated_substructure(const FinStructure& s,
                                    std::span<const ElemId> x);

/// One representative (least id) per E-class meeting `x`. Throws
/// DomainError on non-O ids.
IdSet class_reps(const FinStructure& s, std::span<const ElemId> x);

/// Bound on the size of a structure generated by k elements: k^{n+1} + k.
std::uint64_t generation_bound(std::uint64_t k, int n);

/// Copy of `s` with every id replaced by `rename(id)`. The renaming must be
/// injective on the elements of `s`.
FinStructure relabel(const FinStructure& s,
                     const std::function<ElemId(ElemId)>& rename);

/// Calls `fn` for every F-tuple of length n drawn from `fs`, lexicographic in
/// the order of `fs`.
void for_each_tuple_over(std::span<const ElemId> fs, int n,
                         const std::function<void(std::span<const ElemId>)>& fn);

}  // namespace kimlab

template <>
struct std::hash<kimlab::ElemId> {
  std::size_t operator()(kimlab::ElemId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
