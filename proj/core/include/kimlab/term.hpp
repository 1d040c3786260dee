#pragma once

// Quantifier-free syntax over L_n: terms, literals and diagrams (finite
// conjunctions of literals over a base structure plus sorted variables).

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kimlab/structure.hpp"

namespace kimlab {

class SymbolTable;

struct Term {
  enum class Kind : std::uint8_t { Var, Const, Eval };

  Kind kind = Kind::Var;
  std::string var;          // Var
  Sort var_sort = Sort::O;  // Var
  ElemId id;                // Const
  /// Eval: the n F-terms followed by the O-term.
  std::vector<Term> args;

  static Term variable(std::string name, Sort sort);
  static Term constant(ElemId id);
  static Term eval(std::vector<Term> fs, Term o);

  bool is_atom() const { return kind != Kind::Eval; }
  std::span<const Term> f_args() const {
    return {args.data(), args.empty() ? 0 : args.size() - 1};
  }
  const Term& o_arg() const { return args.back(); }

  bool operator==(const Term&) const = default;
};

struct Literal {
  enum class Atom : std::uint8_t { Eq, Equiv, SortIs };

  bool positive = true;
  Atom atom = Atom::Eq;
  Term lhs;
  Term rhs;                // unused for SortIs
  Sort sort = Sort::O;     // SortIs only

  static Literal eq(Term a, Term b, bool positive = true);
  static Literal equiv(Term a, Term b, bool positive = true);
  static Literal sort_is(Term t, Sort s, bool positive = true);

  Literal negated() const {
    Literal l = *this;
    l.positive = !l.positive;
    return l;
  }

  bool operator==(const Literal&) const = default;
};

struct VarDecl {
  std::string name;
  Sort sort = Sort::O;
  bool operator==(const VarDecl&) const = default;
};

struct Diagram {
  std::vector<VarDecl> vars;
  std::vector<Literal> literals;

  std::optional<Sort> var_sort(const std::string& name) const;
  bool operator==(const Diagram&) const = default;
};

/// Diagram with parameter variables, instantiated by substituting element
/// ids for the parameters. The remaining variables are shared between
/// instances.
struct Template {
  Diagram body;
  std::vector<std::string> params;
};

/// A disjunction of conjunctive templates over the same parameters.
using Formula = std::vector<Template>;

using Assignment = std::map<std::string, ElemId>;

/// Sort of a term when it is determined syntactically; constants need a
/// structure to resolve.
std::optional<Sort> syntactic_sort(const Term& t);

/// Throws DomainError for ill-sorted terms: wrong arity (when n is given),
/// an O-term in an F position or vice versa. Constants are checked against
/// `base` when it is non-null.
void check_sorts(const Term& t, Sort expected, const FinStructure* base,
                 int n = 0);
void check_sorts(const Literal& l, const FinStructure* base, int n = 0);

/// Eval never nested in the O-position: eval(x̄; eval(ȳ; z)) = eval(x̄; z).
/// Idempotent; throws DomainError on ill-sorted input.
Term normalize_term(const Term& t);

/// E-atoms reduced to atom arguments (E(x, eval(ȳ; z)) ⇔ E(x, z)); equality
/// atoms with normalized terms.
Literal normalize_literal(const Literal& l);
Diagram normalize(const Diagram& d);

std::size_t depth(const Term& t);

/// Value of a term. Throws DomainError for unassigned variables and unknown
/// constants.
ElemId evaluate(const FinStructure& s, const Assignment& asg, const Term& t);
bool holds(const FinStructure& s, const Assignment& asg, const Literal& l);
bool holds(const FinStructure& s, const Assignment& asg, const Diagram& d);

/// Replaces variables by constants.
Term substitute(const Term& t, const std::map<std::string, ElemId>& values);
Literal substitute(const Literal& l, const std::map<std::string, ElemId>& values);

/// The body with params[i] replaced by args[i]; parameters disappear from
/// the variable declarations. Throws DomainError on arity mismatch.
Diagram instantiate(const Template& t, std::span<const ElemId> args);

/// Conjunction of two diagrams; variables with the same name are identified
/// (their sorts must agree).
Diagram conjoin(const Diagram& a, const Diagram& b);

std::string to_string(const Term& t, const SymbolTable& symbols);
std::string to_string(const Literal& l, const SymbolTable& symbols);

}  // namespace kimlab
