#pragma once

// Satisfiability of quantifier-free diagrams over a finite base in the
// generic model of T_n. Because T*_n eliminates quantifiers and is the model
// completion of T_n, a diagram over B is realized there iff it is realized in
// some finite model of T_n extending B; the search below looks for such an
// extension inside ⟨B ∪ vars⟩, which is bounded by k^{n+1} + k for
// k = |B| + |vars|.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kimlab/report.hpp"
#include "kimlab/structure.hpp"
#include "kimlab/term.hpp"

namespace kimlab {

struct Witness {
  FinStructure extension;
  Assignment assignment;
};

struct OracleOptions {
  /// Least id given to new elements; defaults to base.next_free_id().
  std::optional<ElemId> first_fresh;
  /// Maximum number of search nodes per query; SearchLimitError beyond it.
  /// Zero means default_node_budget().
  std::uint64_t node_budget = 0;
};

/// Budget taken from KIMLAB_CAP when set, otherwise 20 million nodes.
std::uint64_t default_node_budget();

/// The first witness in canonical search order, or nullopt when the diagram
/// is unsatisfiable over `base`. Throws DomainError for constants outside the
/// base, undeclared variables or ill-sorted literals, and PreconditionError
/// when the base violates the T_n axioms.
std::optional<Witness> satisfiable(const FinStructure& base, const Diagram& d,
                                   const OracleOptions& options = {});

/// Independent re-check of a witness: the extension is a model of T_n, the
/// base is a substructure of it, and every literal holds.
Report check_witness(const FinStructure& base, const Diagram& d,
                     const Witness& w);

using ParamList = std::vector<std::vector<ElemId>>;

/// Whether the conjunction over i of (the disjunction of phi instantiated at
/// params[i]) is satisfiable. Non-parameter variables are shared between the
/// instances. Throws DomainError on arity mismatch.
bool consistent_set(const FinStructure& base, const Formula& phi,
                    const ParamList& params, const OracleOptions& options = {});

/// Every k-element subfamily of {phi(params[i])} is unsatisfiable. Throws
/// DomainError when k < 2 or k > params.size().
bool k_inconsistent(const FinStructure& base, const Formula& phi,
                    const ParamList& params, std::size_t k,
                    const OracleOptions& options = {});

/// Least k in [2, params.size()] with k_inconsistent, if any.
std::optional<std::size_t> inconsistency_degree(const FinStructure& base,
                                                const Formula& phi,
                                                const ParamList& params,
                                                const OracleOptions& options = {});

}  // namespace kimlab
