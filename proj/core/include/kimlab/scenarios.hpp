#pragma once

// Finite-scale verifications of the explicit constructions around T*_n:
// SOP1 array configurations, the non-co-simple array, forking vs dividing,
// Morley sequences that fail to be universal, the failure of transitivity
// in T*_2, the independence theorem for ⫝*, and the local character chain.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kimlab/oracle.hpp"
#include "kimlab/report.hpp"
#include "kimlab/structure.hpp"
#include "kimlab/term.hpp"

namespace kimlab {

struct ScenarioOptions {
  std::uint64_t seed = 7;
  /// Sequence length for the Morley-sequence scenarios.
  std::size_t length = 3;
  /// Array size for not-cosimple; 0 runs both m = 2 and m = 3.
  std::size_t m = 0;
  /// Random instances for independence-amalgam and local-character.
  std::size_t instances = 200;
  OracleOptions oracle;
};

/// Scenario ids in execution order.
const std::vector<std::string>& scenario_ids();

/// Runs one scenario by id; throws DomainError for unknown ids.
Report run_scenario(const std::string& id, const ScenarioOptions& options);

using ArrayRow = std::array<std::vector<ElemId>, 2>;

/// Checks a finite array (c_{i,0}, c_{i,1}) against the SOP1 clauses:
///   (a) c_{i,0} ≡_{c̄_{<i}} c_{i,1} for every row,
///   (b) {phi(c_{i,0})} is consistent,
///   (c) {phi(c_{i,1})} is k-inconsistent.
/// An invalid base is rejected before any clause is tested.
Report sop1_config_check(const FinStructure& base, const Formula& phi,
                         const std::vector<ArrayRow>& array, std::size_t k,
                         const OracleOptions& options = {});

/// The m×m array of distinct O-points, rows = E-classes, with
/// phi(x; y) = eval(x, y) = y: every path is consistent and every row is
/// 2-inconsistent. `fault` moves a_{0,1} into the class of row 1.
/// Requires 2 ≤ m ≤ 5.
Report verify_not_cosimple(std::size_t m, const OracleOptions& options = {},
                           bool fault = false);

/// The model used by the forking and Morley scenarios: two singleton
/// classes and one F-element acting as the identity.
FinStructure default_forking_base();

/// phi(x, y; z) = eval(x, z) = z ∨ E(y, z) over `base` extended by a point b
/// in a new class. Requires an eval-closed base with at least one O-element.
Report verify_forking_not_dividing(const FinStructure& base,
                                   const OracleOptions& options = {});

/// For tp(b / M) with b in a new class: the equivalent-class sequence keeps
/// {E(x, b_i)} consistent while the inequivalent one makes it 2-inconsistent,
/// and the other way round for {eval(x, b_i) = b_i}.
Report verify_no_universal_morley(const FinStructure& base, std::size_t length,
                                  const OracleOptions& options = {});

struct TransitivityModel {
  FinStructure s;
  IdSet m;  // the base model
  ElemId f, g, c;
};

/// The T*_2 configuration: c ∉ M in the class of m ∈ M, and new f, g with
/// eval(f,g;m) = eval(g,f;m) = c (clause 1), all other values on M's
/// classes fixed at representatives. Without clause 1, eval(f,g;m) = m.
TransitivityModel transitivity_model(bool clause_one = true);

/// The five dcl equalities and the ⫝* outcomes f ⫝ gc, g ⫝ c, fg ⫝̸ c.
Report verify_transitivity_failure(bool clause_one = true);

struct IndependenceAmalgam {
  FinStructure d;
  std::vector<ElemId> a2;  // a″
};

/// The construction of the independence theorem for ⫝* inside a finite
/// ambient: D on ⟨BC⟩ ∪ U ∪ V, where U copies dcl(aB) \ B, V copies
/// dcl(a′C) \ C, and the copies of ⟨aM⟩ and ⟨a′M⟩ are glued along the
/// isomorphism a ↦ a′ over M. B and C are replaced by their closures.
/// Throws PreconditionError naming the failed hypothesis.
IndependenceAmalgam independence_amalgam(const FinStructure& ambient,
                                         std::span<const ElemId> m,
                                         std::span<const ElemId> a,
                                         std::span<const ElemId> a1,
                                         std::span<const ElemId> b,
                                         std::span<const ElemId> c);

/// a″ ≡_B a, a″ ≡_C a′, a″ ⫝*_M BC, plus validity of D and ⟨BC⟩ ⊆ D.
Report check_independence_amalgam(const FinStructure& ambient,
                                  std::span<const ElemId> m,
                                  std::span<const ElemId> a,
                                  std::span<const ElemId> a1,
                                  std::span<const ElemId> b,
                                  std::span<const ElemId> c,
                                  const IndependenceAmalgam& result);

struct LocalCharacter {
  std::vector<IdSet> chain;  // M_0 ⊆ M_1 ⊆ ... ⊆ M
  Report report;
};

/// M_{i+1} = dcl(M_i ∪ (dcl(aM_i) ∩ N) ∪ reps), where reps holds the least
/// N-member of each class of dcl(aM_i) that meets N; iterated to a fixed
/// point and certified by dcl(aM) ∩ N ⊆ M and dcl(aM)/E ∩ N/E ⊆ M/E.
LocalCharacter local_character_chain(const FinStructure& ambient,
                                     std::span<const ElemId> n,
                                     std::span<const ElemId> a,
                                     std::span<const ElemId> m0);

}  // namespace kimlab
