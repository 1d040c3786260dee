#pragma once

// Finite trees of finite-support functions on end-segments of levels.
//
// A node of the tree with `alpha` levels is a function whose domain is
// [start, alpha). Level alpha-1 sits next to the root (the empty function,
// start == alpha) and level 0 is the deepest. Only nonzero values are
// stored; every other level in the domain reads as 0.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kimlab::tree {

using Level = std::uint32_t;
using Value = std::uint32_t;

class TreeNode {
 public:
  /// The root (empty function) of the tree with `alpha` levels.
  explicit TreeNode(Level alpha = 0);

  /// Node with domain [start, alpha). Zero entries in `values` are dropped.
  /// Throws DomainError if start > alpha or a key lies outside the domain.
  TreeNode(Level alpha, Level start,
           std::vector<std::pair<Level, Value>> values);

  /// Node from its value string read from level alpha-1 downwards.
  static TreeNode from_path(Level alpha, const std::vector<Value>& path);

  Level alpha() const { return alpha_; }
  Level start() const { return start_; }
  /// Number of levels in the domain.
  Level length() const { return alpha_ - start_; }
  bool is_root() const { return start_ == alpha_; }

  /// Value at `level`; 0 for levels without a stored entry. Throws
  /// DomainError if `level` is outside [start, alpha).
  Value at(Level level) const;

  /// Stored (nonzero) entries, sorted by level ascending.
  const std::vector<std::pair<Level, Value>>& support() const {
    return values_;
  }

  /// Values read from level alpha-1 down to start.
  std::vector<Value> path() const;

  bool operator==(const TreeNode&) const = default;

 private:
  Level alpha_ = 0;
  Level start_ = 0;
  std::vector<std::pair<Level, Value>> values_;
};

/// Sorted set of levels below alpha.
class LevelSet {
 public:
  LevelSet(Level alpha, std::vector<Level> levels);
  static LevelSet all(Level alpha);

  Level alpha() const { return alpha_; }
  const std::vector<Level>& levels() const { return levels_; }
  bool contains(Level level) const;

 private:
  Level alpha_;
  std::vector<Level> levels_;
};

/// a ⊴ b: a is a restriction of b.
bool tree_leq(const TreeNode& a, const TreeNode& b);

/// Restriction of a and b to the largest end-segment on which they agree.
/// Disagreement at the top level yields the root.
TreeNode meet(const TreeNode& a, const TreeNode& b);

/// Lexicographic order: a proper restriction comes first, incomparable nodes
/// are ordered by their values at the level just below their meet.
std::strong_ordering lex_cmp(const TreeNode& a, const TreeNode& b);

/// Nodes whose least level is in `w` and which vanish off `w`, with values
/// below `branching`, in enumeration order. The root is always included.
std::vector<TreeNode> restrict(Level alpha, const LevelSet& w, Value branching);

/// Every node of the tree with `alpha` levels and values below `branching`.
std::vector<TreeNode> enumerate(Level alpha, Value branching);

/// Enumeration order: shorter domains first, then lexicographic.
bool enumeration_less(const TreeNode& a, const TreeNode& b);

/// eta ⌢ ⟨i⟩: extend one level deeper. Throws DomainError if start == 0.
TreeNode concat_low(const TreeNode& eta, Value i);

/// ⟨i⟩ ⌢ eta: the node of the tree with alpha+1 levels obtained by putting
/// value i on the new level alpha.
TreeNode concat_high(Value i, const TreeNode& eta);

/// Canonical inclusion of the tree with `from` levels into the one with `to`
/// levels: pads the new levels [from, to) with zeros.
TreeNode iota(Level from, Level to, const TreeNode& eta);

/// The all-zeros node with domain [beta, alpha). Requires beta < alpha.
TreeNode zeta(Level beta, Level alpha);

/// Renders "⟨i_k,...,i_0⟩@alpha" with values read from level alpha-1 down.
std::string to_string(const TreeNode& node);

/// Parses the notation produced by to_string. ASCII '<' '>' are accepted in
/// place of the angle brackets.
TreeNode parse_node(std::string_view text);

}  // namespace kimlab::tree
