#pragma once

// Strong amalgamation and joint embedding in K_n, and a checker for the
// Fraïssé properties (HP, JEP, SAP, uniform local finiteness).

#include <cstdint>
#include <map>
#include <vector>

#include "kimlab/report.hpp"
#include "kimlab/structure.hpp"

namespace kimlab {

/// Checks that A is a substructure of both B and C (as id-sets with equal
/// induced structure), that ids(B) ∩ ids(C) = ids(A), and that the arities
/// agree.
Report check_amalgam_input(const FinStructure& a, const FinStructure& b,
                           const FinStructure& c);

/// The canonical strong amalgam D of B and C over A, on the universe
/// B ∪ C. E^D is generated by E^B ∪ E^C. For an F-tuple f̄ and a D-class K:
/// if f̄ ⊆ B and K meets B, eval^D(f̄; K) is computed in B; otherwise if
/// f̄ ⊆ C and K meets C, in C; otherwise it is the least member of K.
/// Throws PreconditionError (naming the witness) when the input is not an
/// amalgamation problem.
FinStructure strong_amalgam(const FinStructure& a, const FinStructure& b,
                            const FinStructure& c);

struct JointEmbedding {
  FinStructure d;
  /// Where each element of C landed in D (identity unless ids collided).
  std::map<ElemId, ElemId> c_map;
};

/// Amalgam over the empty structure. When ids of B and C overlap, C is
/// shifted past the ids of B first. Throws DomainError on arity mismatch.
JointEmbedding joint_embed_with_map(const FinStructure& b, const FinStructure& c);
FinStructure joint_embed(const FinStructure& b, const FinStructure& c);

/// Full post-condition check for one amalgam: D validates, D|B == B,
/// D|C == C, ids(D) = ids(B) ∪ ids(C), and every E^D-link between B and C
/// passes through A.
Report check_amalgam(const FinStructure& a, const FinStructure& b,
                     const FinStructure& c, const FinStructure& d);

enum class FraisseMode { Exhaustive, Random };

struct FraisseOptions {
  int n = 1;
  /// Largest structure size considered; at most 4 in exhaustive mode.
  std::size_t cap = 3;
  FraisseMode mode = FraisseMode::Exhaustive;
  std::uint64_t samples = 10'000;  // random mode only
  std::uint64_t seed = 1;
};

/// Verifies HP, JEP, SAP and |⟨X⟩| ≤ |X|^{n+1} + |X| on every structure of
/// size ≤ cap (exhaustive) or on random samples. Throws DomainError when an
/// exhaustive cap exceeds 4.
Report check_fraisse(const FraisseOptions& options);

/// The same checks over an explicit corpus; pairs of corpus members serve as
/// JEP inputs and as SAP sides.
Report check_fraisse_corpus(const std::vector<FinStructure>& corpus);

}  // namespace kimlab
