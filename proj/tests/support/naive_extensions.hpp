#pragma once

// Brute-force reference for the consistency oracle.
//
// Completeness of the reduction used here: if a diagram whose eval-terms
// have depth at most 1 is realized in some extension D of the base, keep
// only the base, the values of the variables and the values of the
// eval-terms. Restricting E and keeping eval where its value survives (and
// sending every other entry to the least member of the class) yields a
// model of T_n that still extends the base and still realizes the diagram.
// So enumerating every extension by at most |vars| + #eval-terms new
// elements decides satisfiability for such diagrams.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "kimlab/structure.hpp"
#include "kimlab/term.hpp"

namespace kimlab::testing {

/// Calls visit on every model of T_n whose universe is the base plus
/// 0..extras new ids (starting at base.next_free_id()) and which has the base
/// as a substructure. Eval tables are enumerated in full.
void for_each_extension(const FinStructure& base, std::size_t extras,
                        const std::function<void(const FinStructure&)>& visit);

/// Evaluates a literal whose terms are variables, constants or eval of those,
/// without going through the library's evaluator.
bool naive_holds(const FinStructure& s, const Assignment& asg, const Literal& l);

/// Every diagram in the agreement corpus is a set of at most two literals
/// drawn from this pool: (in)equalities between terms of depth ≤ 1 with at
/// most one eval-term per literal, and (non-)E between atoms. Literals that
/// mention no variable are left out.
std::vector<Literal> literal_pool(const FinStructure& base,
                                  const std::vector<VarDecl>& vars);

struct AgreementStats {
  std::size_t bases = 0;
  std::size_t queries = 0;
  std::size_t sat = 0;
  std::size_t disagreements = 0;
  std::size_t bad_witnesses = 0;
  std::string first_problem;
};

/// Compares satisfiable() with the naive enumerator on every base in K_1 with
/// at most max_base_size elements, every declaration of at most two
/// variables, and every diagram of one or two pool literals. Also re-checks
/// each witness and its size against the generation bound.
AgreementStats oracle_agreement(std::size_t max_base_size);

}  // namespace kimlab::testing
