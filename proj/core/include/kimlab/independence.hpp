#pragma once

// Definable closure, the relation ⫝*, generic extensions realizing the
// invariant-type scheme of T*_1, finite Morley sequences, and finite proxies
// for Kim-dividing.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kimlab/oracle.hpp"
#include "kimlab/report.hpp"
#include "kimlab/structure.hpp"
#include "kimlab/term.hpp"

namespace kimlab {

/// dcl(X) = acl(X) = ⟨X⟩ inside a finite ambient. Throws DomainError for
/// unknown ids.
IdSet dcl(const FinStructure& ambient, std::span<const ElemId> x);

/// a ⫝*_C b:
///   (1) dcl(aC)/E ∩ dcl(bC)/E ⊆ dcl(C)/E
///   (2) dcl(aC) ∩ dcl(bC) ⊆ dcl(C)
/// A failing report names the offending class or element.
Report indep_star(const FinStructure& ambient, std::span<const ElemId> a,
                  std::span<const ElemId> b, std::span<const ElemId> c);

bool is_indep_star(const FinStructure& ambient, std::span<const ElemId> a,
                   std::span<const ElemId> b, std::span<const ElemId> c);

/// A global C-invariant type in T*_1: tp(prototype / C) together with the
/// scheme
///   eval(x_i, m) ≠ m                 for m ∉ C
///   eval(x_i, m) ≠ eval(x_j, m)      for m/E ∉ C/E, i ≠ j
///   eval(x_i, y_j) ≠ m               for m ∉ C
///   eval(m, y_j) ≠ y_j               for m ∉ C
///   ¬E(y_j, m)                       for m/E ∉ C/E
/// where x ranges over the F-coordinates and y over the O-coordinates of
/// the prototype.
struct GenericSpec {
  IdSet base;                      // C, eval-closed in the ambient
  std::vector<ElemId> prototype;   // a tuple of the ambient
};

struct Extension {
  FinStructure ambient;
  std::vector<ElemId> tuple;
};

/// Extends `ambient` by a realization of the finite restriction of the
/// scheme to the ambient. Elements of ⟨C, prototype⟩ outside C are copied
/// with fresh ids; classes of the copy that do not meet C become new
/// classes. Values forced outside the copy are fresh and pairwise distinct:
/// one per (new F-element, ambient class not meeting C) and one per (old
/// F-element outside C, new class). Requires n = 1 (DomainError otherwise)
/// and C eval-closed (PreconditionError).
Extension generic_extend(const FinStructure& ambient, const GenericSpec& spec,
                         std::optional<ElemId> first_id = std::nullopt);

/// Checks that `tuple` in `ext` satisfies every scheme instance with
/// parameters m from `old_ambient` and realizes tp(prototype / C).
Report check_generic(const FinStructure& old_ambient, const GenericSpec& spec,
                     const Extension& ext);

struct MorleySequence {
  FinStructure ambient;
  std::vector<std::vector<ElemId>> tuples;
};

/// L tuples, each realizing the scheme over the ambient grown by all the
/// earlier ones. Throws DomainError for L = 0.
MorleySequence morley_sequence(const FinStructure& ambient,
                               const GenericSpec& spec, std::size_t length);

/// Every two increasing subsequences of the same length ≤ max_len have the
/// same type over C (equal_type_over on the concatenated tuples).
Report check_indiscernible(const FinStructure& ambient, std::span<const ElemId> base,
                           const std::vector<std::vector<ElemId>>& tuples,
                           std::size_t max_len);

struct KimDividing {
  Report report;
  bool consistent = false;
  std::optional<std::size_t> inconsistency_degree;
  MorleySequence sequence;
};

/// Finite proxy for Kim-dividing of phi(x; b) over C: instantiates phi along
/// a length-L Morley sequence in the scheme for tp(b / C) and asks the oracle
/// whether the instances are consistent and, if not, the least k of
/// k-inconsistency. The report checks indiscernibility of the sequence and
/// records the outcome. Throws DomainError for L < 2.
KimDividing kim_divides(const FinStructure& ambient, const Formula& phi,
                        std::span<const ElemId> b, std::span<const ElemId> base,
                        std::size_t length, const OracleOptions& options = {});

}  // namespace kimlab
