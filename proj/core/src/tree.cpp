#include "kimlab/tree.hpp"

#include <algorithm>
#include <sstream>

#include "kimlab/errors.hpp"

namespace kimlab::tree {
namespace {

void require_same_alpha(const TreeNode& a, const TreeNode& b) {
  if (a.alpha() != b.alpha()) {
    throw DomainError("tree nodes live in different trees (alpha " +
                      std::to_string(a.alpha()) + " vs " +
                      std::to_string(b.alpha()) + ")");
  }
}

}  // namespace

TreeNode::TreeNode(Level alpha) : alpha_(alpha), start_(alpha) {}

TreeNode::TreeNode(Level alpha, Level start,
                   std::vector<std::pair<Level, Value>> values)
    : alpha_(alpha), start_(start) {
  if (start > alpha) {
    throw DomainError("tree node start " + std::to_string(start) +
                      " exceeds alpha " + std::to_string(alpha));
  }
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto [level, value] = values[i];
    if (level < start || level >= alpha) {
      throw DomainError("level " + std::to_string(level) +
                        " outside node domain");
    }
    if (i > 0 && values[i - 1].first == level) {
      throw DomainError("duplicate level " + std::to_string(level));
    }
    if (value != 0) values_.emplace_back(level, value);
  }
}

TreeNode TreeNode::from_path(Level alpha, const std::vector<Value>& path) {
  if (path.size() > alpha) {
    throw DomainError("path longer than the tree height");
  }
  const Level start = alpha - static_cast<Level>(path.size());
  std::vector<std::pair<Level, Value>> values;
  for (std::size_t k = 0; k < path.size(); ++k) {
    values.emplace_back(alpha - 1 - static_cast<Level>(k), path[k]);
  }
  return TreeNode(alpha, start, std::move(values));
}

Value TreeNode::at(Level level) const {
  if (level < start_ || level >= alpha_) {
    throw DomainError("level " + std::to_string(level) + " outside domain");
  }
  auto it = std::lower_bound(values_.begin(), values_.end(),
                             std::pair<Level, Value>{level, 0});
  if (it != values_.end() && it->first == level) return it->second;
  return 0;
}

std::vector<Value> TreeNode::path() const {
  std::vector<Value> out;
  out.reserve(length());
  for (Level l = alpha_; l > start_; --l) out.push_back(at(l - 1));
  return out;
}

LevelSet::LevelSet(Level alpha, std::vector<Level> levels)
    : alpha_(alpha), levels_(std::move(levels)) {
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
  if (!levels_.empty() && levels_.back() >= alpha_) {
    throw DomainError("level " + std::to_string(levels_.back()) +
                      " not below alpha " + std::to_string(alpha_));
  }
}

LevelSet LevelSet::all(Level alpha) {
  std::vector<Level> levels(alpha);
  for (Level l = 0; l < alpha; ++l) levels[l] = l;
  return LevelSet(alpha, std::move(levels));
}

bool LevelSet::contains(Level level) const {
  return std::binary_search(levels_.begin(), levels_.end(), level);
}

bool tree_leq(const TreeNode& a, const TreeNode& b) {
  require_same_alpha(a, b);
  if (a.start() < b.start()) return false;
  for (Level l = a.start(); l < a.alpha(); ++l) {
    if (a.at(l) != b.at(l)) return false;
  }
  return true;
}

TreeNode meet(const TreeNode& a, const TreeNode& b) {
  require_same_alpha(a, b);
  const Level floor = std::max(a.start(), b.start());
  Level beta = a.alpha();
  while (beta > floor && a.at(beta - 1) == b.at(beta - 1)) --beta;
  std::vector<std::pair<Level, Value>> values;
  for (const auto& [level, value] : a.support()) {
    if (level >= beta) values.emplace_back(level, value);
  }
  return TreeNode(a.alpha(), beta, std::move(values));
}

std::strong_ordering lex_cmp(const TreeNode& a, const TreeNode& b) {
  require_same_alpha(a, b);
  if (a == b) return std::strong_ordering::equal;
  const TreeNode m = meet(a, b);
  if (m == a) return std::strong_ordering::less;
  if (m == b) return std::strong_ordering::greater;
  const Level gamma = m.start() - 1;
  return a.at(gamma) <=> b.at(gamma);
}

bool enumeration_less(const TreeNode& a, const TreeNode& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return lex_cmp(a, b) == std::strong_ordering::less;
}

std::vector<TreeNode> enumerate(Level alpha, Value branching) {
  return restrict(alpha, LevelSet::all(alpha), branching);
}

std::vector<TreeNode> restrict(Level alpha, const LevelSet& w,
                               Value branching) {
  if (w.alpha() != alpha) {
    throw DomainError("level set belongs to a different tree");
  }
  if (branching == 0) throw DomainError("branching must be at least 1");
  std::vector<TreeNode> out;
  out.emplace_back(alpha);
  // Grow nodes one level at a time, from the root downwards.
  std::vector<std::vector<Value>> frontier{{}};
  for (Level depth = 1; depth <= alpha; ++depth) {
    const Level level = alpha - depth;
    const Value options = w.contains(level) ? branching : 1;
    std::vector<std::vector<Value>> next;
    next.reserve(frontier.size() * options);
    for (const auto& prefix : frontier) {
      for (Value v = 0; v < options; ++v) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    }
    frontier = std::move(next);
    if (w.contains(level)) {
      for (const auto& p : frontier) out.push_back(TreeNode::from_path(alpha, p));
    }
  }
  std::stable_sort(out.begin(), out.end(), enumeration_less);
  return out;
}

TreeNode concat_low(const TreeNode& eta, Value i) {
  if (eta.start() == 0) {
    throw DomainError("concat_low: node already reaches level 0");
  }
  auto values = eta.support();
  values.emplace_back(eta.start() - 1, i);
  return TreeNode(eta.alpha(), eta.start() - 1, std::move(values));
}

TreeNode concat_high(Value i, const TreeNode& eta) {
  auto values = eta.support();
  values.emplace_back(eta.alpha(), i);
  return TreeNode(eta.alpha() + 1, eta.start(), std::move(values));
}

TreeNode iota(Level from, Level to, const TreeNode& eta) {
  if (from > to) {
    throw DomainError("iota: source height exceeds target height");
  }
  if (eta.alpha() != from) {
    throw DomainError("iota: node does not belong to the source tree");
  }
  return TreeNode(to, eta.start(), eta.support());
}

TreeNode zeta(Level beta, Level alpha) {
  if (beta >= alpha) {
    throw DomainError("zeta: beta must be below alpha");
  }
  return TreeNode(alpha, beta, {});
}

std::string to_string(const TreeNode& node) {
  std::ostringstream out;
  out << "⟨";
  const auto p = node.path();
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k > 0) out << ',';
    out << p[k];
  }
  out << "⟩@" << node.alpha();
  return out.str();
}

TreeNode parse_node(std::string_view text) {
  auto fail = [&](std::size_t col, const std::string& what) -> ParseError {
    return ParseError(what, 1, col + 1);
  };
  static constexpr std::string_view kOpen = "⟨";
  static constexpr std::string_view kClose = "⟩";
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto read_number = [&]() -> std::uint32_t {
    skip_ws();
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') {
      throw fail(pos, "expected a number");
    }
    std::uint64_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (v > 0xffffffffu) throw fail(pos, "number too large");
      ++pos;
    }
    return static_cast<std::uint32_t>(v);
  };
  skip_ws();
  if (text.substr(pos, kOpen.size()) == kOpen) {
    pos += kOpen.size();
  } else if (pos < text.size() && text[pos] == '<') {
    ++pos;
  } else {
    throw fail(pos, "expected an opening angle bracket");
  }
  std::vector<Value> path;
  skip_ws();
  const bool empty = text.substr(pos, kClose.size()) == kClose ||
                     (pos < text.size() && text[pos] == '>');
  if (!empty) {
    path.push_back(read_number());
    skip_ws();
    while (pos < text.size() && text[pos] == ',') {
      ++pos;
      path.push_back(read_number());
      skip_ws();
    }
  }
  if (text.substr(pos, kClose.size()) == kClose) {
    pos += kClose.size();
  } else if (pos < text.size() && text[pos] == '>') {
    ++pos;
  } else {
    throw fail(pos, "expected a closing angle bracket");
  }
  skip_ws();
  if (pos >= text.size() || text[pos] != '@') throw fail(pos, "expected '@'");
  ++pos;
  const Level alpha = read_number();
  skip_ws();
  if (pos != text.size()) throw fail(pos, "trailing characters");
  if (path.size() > alpha) throw fail(pos, "more values than levels");
  return TreeNode::from_path(alpha, path);
}

}  // namespace kimlab::tree
