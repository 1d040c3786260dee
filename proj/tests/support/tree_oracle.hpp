#pragma once

// Brute-force model of finite branching trees as words: ω^{≤n} truncated to
// values below b, ordered by prefix, with longest common prefix as meet and
// the usual lexicographic order (a proper prefix comes first).

#include <cstddef>
#include <vector>

#include "kimlab/report.hpp"
#include "kimlab/tree.hpp"

namespace kimlab::testing {

using Word = std::vector<tree::Value>;

std::vector<Word> all_words(std::size_t max_len, tree::Value branching);
bool is_prefix(const Word& a, const Word& b);
Word common_prefix(const Word& a, const Word& b);
bool word_lex_less(const Word& a, const Word& b);

/// Exhaustive checks on every truncation with alpha ≤ max_alpha and
/// branching ≤ max_branch: partial order, meet semilattice, lex total order
/// refining the tree order, inclusion composition, and the isomorphism with
/// the word model.
Report tree_suite(tree::Level max_alpha, tree::Value max_branch);

}  // namespace kimlab::testing
