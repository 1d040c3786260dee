#include "kimlab/term.hpp"

#include <algorithm>

#include "kimlab/errors.hpp"
#include "kimlab/structure_io.hpp"

namespace kimlab {

Term Term::variable(std::string name, Sort sort) {
  Term t;
  t.kind = Kind::Var;
  t.var = std::move(name);
  t.var_sort = sort;
  return t;
}

Term Term::constant(ElemId id) {
  Term t;
  t.kind = Kind::Const;
  t.id = id;
  return t;
}

Term Term::eval(std::vector<Term> fs, Term o) {
  Term t;
  t.kind = Kind::Eval;
  t.args = std::move(fs);
  t.args.push_back(std::move(o));
  return t;
}

Literal Literal::eq(Term a, Term b, bool positive) {
  Literal l;
  l.positive = positive;
  l.atom = Atom::Eq;
  l.lhs = std::move(a);
  l.rhs = std::move(b);
  return l;
}

Literal Literal::equiv(Term a, Term b, bool positive) {
  Literal l = eq(std::move(a), std::move(b), positive);
  l.atom = Atom::Equiv;
  return l;
}

Literal Literal::sort_is(Term t, Sort s, bool positive) {
  Literal l;
  l.positive = positive;
  l.atom = Atom::SortIs;
  l.lhs = std::move(t);
  l.sort = s;
  return l;
}

std::optional<Sort> Diagram::var_sort(const std::string& name) const {
  for (const auto& v : vars) {
    if (v.name == name) return v.sort;
  }
  return std::nullopt;
}

std::optional<Sort> syntactic_sort(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
      return t.var_sort;
    case Term::Kind::Eval:
      return Sort::O;
    case Term::Kind::Const:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

std::string describe(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
      return t.var;
    case Term::Kind::Const:
      return "e" + std::to_string(t.id.value);
    case Term::Kind::Eval: {
      std::string out = "eval(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i > 0) out += (i + 1 == t.args.size()) ? ";" : ",";
        out += describe(t.args[i]);
      }
      return out + ")";
    }
  }
  return {};
}

std::optional<Sort> sort_in(const Term& t, const FinStructure* base) {
  if (auto s = syntactic_sort(t)) return s;
  if (base != nullptr) return base->sort_of(t.id);
  return std::nullopt;
}

}  // namespace

void check_sorts(const Term& t, Sort expected, const FinStructure* base, int n) {
  if (t.kind == Term::Kind::Eval) {
    if (t.args.size() < 2) {
      throw DomainError("ill-sorted term " + describe(t) + ": eval needs arguments");
    }
    if (n > 0 && t.args.size() != static_cast<std::size_t>(n) + 1) {
      throw DomainError("ill-sorted term " + describe(t) + ": eval takes " +
                        std::to_string(n) + " function arguments");
    }
    for (const Term& f : t.f_args()) check_sorts(f, Sort::F, base, n);
    check_sorts(t.o_arg(), Sort::O, base, n);
  }
  if (auto s = sort_in(t, base); s && *s != expected) {
    throw DomainError("ill-sorted term " + describe(t) + ": expected sort " +
                      sort_char(expected));
  }
}

void check_sorts(const Literal& l, const FinStructure* base, int n) {
  switch (l.atom) {
    case Literal::Atom::SortIs: {
      // Either sort is admissible here; only the subterms are constrained.
      if (l.lhs.kind == Term::Kind::Eval) check_sorts(l.lhs, Sort::O, base, n);
      return;
    }
    case Literal::Atom::Equiv:
      check_sorts(l.lhs, Sort::O, base, n);
      check_sorts(l.rhs, Sort::O, base, n);
      return;
    case Literal::Atom::Eq: {
      auto a = sort_in(l.lhs, base);
      auto b = sort_in(l.rhs, base);
      const Sort s = a ? *a : (b ? *b : Sort::O);
      if (!a && !b && base == nullptr) {
        // Two unresolved constants: nothing to check yet.
        return;
      }
      check_sorts(l.lhs, s, base, n);
      check_sorts(l.rhs, s, base, n);
      return;
    }
  }
}

Term normalize_term(const Term& t) {
  if (t.kind != Term::Kind::Eval) return t;
  std::vector<Term> fs;
  for (const Term& f : t.f_args()) {
    if (f.kind == Term::Kind::Eval ||
        (f.kind == Term::Kind::Var && f.var_sort != Sort::F)) {
      throw DomainError("ill-sorted term " + describe(t) +
                        ": O-term in function position");
    }
    fs.push_back(f);
  }
  const Term& o = t.o_arg();
  if (o.kind == Term::Kind::Var && o.var_sort != Sort::O) {
    throw DomainError("ill-sorted term " + describe(t) +
                      ": F-term in object position");
  }
  Term inner = normalize_term(o);
  if (inner.kind == Term::Kind::Eval) inner = Term(inner.o_arg());
  return Term::eval(std::move(fs), std::move(inner));
}

Literal normalize_literal(const Literal& l) {
  Literal out = l;
  out.lhs = normalize_term(l.lhs);
  if (l.atom != Literal::Atom::SortIs) out.rhs = normalize_term(l.rhs);
  if (l.atom == Literal::Atom::Equiv) {
    for (Term* side : {&out.lhs, &out.rhs}) {
      if (side->kind == Term::Kind::Var && side->var_sort != Sort::O) {
        throw DomainError("ill-sorted literal: E relates O-terms only");
      }
      if (side->kind == Term::Kind::Eval) *side = Term(side->o_arg());
    }
  }
  if (l.atom == Literal::Atom::Eq) {
    auto a = syntactic_sort(out.lhs);
    auto b = syntactic_sort(out.rhs);
    if (a && b && *a != *b) {
      throw DomainError("ill-sorted literal: equality between sorts O and F");
    }
  }
  return out;
}

Diagram normalize(const Diagram& d) {
  Diagram out;
  out.vars = d.vars;
  for (const auto& l : d.literals) out.literals.push_back(normalize_literal(l));
  return out;
}

std::size_t depth(const Term& t) {
  if (t.kind != Term::Kind::Eval) return 0;
  std::size_t d = 0;
  for (const Term& a : t.args) d = std::max(d, depth(a));
  return d + 1;
}

ElemId evaluate(const FinStructure& s, const Assignment& asg, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = asg.find(t.var);
      if (it == asg.end()) {
        throw DomainError("variable '" + t.var + "' has no assignment");
      }
      if (s.sort_of(it->second) != t.var_sort) {
        throw DomainError("variable '" + t.var + "' assigned an element of the wrong sort");
      }
      return it->second;
    }
    case Term::Kind::Const:
      if (!s.contains(t.id)) {
        throw DomainError("constant e" + std::to_string(t.id.value) +
                          " is not in the structure");
      }
      return t.id;
    case Term::Kind::Eval: {
      std::vector<ElemId> fs;
      for (const Term& f : t.f_args()) fs.push_back(evaluate(s, asg, f));
      return s.eval(fs, evaluate(s, asg, t.o_arg()));
    }
  }
  return {};
}

bool holds(const FinStructure& s, const Assignment& asg, const Literal& l) {
  bool truth = false;
  switch (l.atom) {
    case Literal::Atom::Eq:
      truth = evaluate(s, asg, l.lhs) == evaluate(s, asg, l.rhs);
      break;
    case Literal::Atom::Equiv:
      truth = s.equivalent(evaluate(s, asg, l.lhs), evaluate(s, asg, l.rhs));
      break;
    case Literal::Atom::SortIs:
      truth = s.sort_of(evaluate(s, asg, l.lhs)) == l.sort;
      break;
  }
  return truth == l.positive;
}

bool holds(const FinStructure& s, const Assignment& asg, const Diagram& d) {
  return std::all_of(d.literals.begin(), d.literals.end(),
                     [&](const Literal& l) { return holds(s, asg, l); });
}

Term substitute(const Term& t, const std::map<std::string, ElemId>& values) {
  if (t.kind == Term::Kind::Var) {
    if (auto it = values.find(t.var); it != values.end()) {
      return Term::constant(it->second);
    }
    return t;
  }
  if (t.kind == Term::Kind::Const) return t;
  Term out = t;
  for (Term& a : out.args) a = substitute(a, values);
  return out;
}

Literal substitute(const Literal& l, const std::map<std::string, ElemId>& values) {
  Literal out = l;
  out.lhs = substitute(l.lhs, values);
  if (l.atom != Literal::Atom::SortIs) out.rhs = substitute(l.rhs, values);
  return out;
}

Diagram instantiate(const Template& t, std::span<const ElemId> args) {
  if (args.size() != t.params.size()) {
    throw DomainError("template expects " + std::to_string(t.params.size()) +
                      " parameters, got " + std::to_string(args.size()));
  }
  std::map<std::string, ElemId> values;
  for (std::size_t i = 0; i < args.size(); ++i) values[t.params[i]] = args[i];
  Diagram out;
  for (const auto& v : t.body.vars) {
    if (!values.count(v.name)) out.vars.push_back(v);
  }
  for (const auto& l : t.body.literals) out.literals.push_back(substitute(l, values));
  return out;
}

Diagram conjoin(const Diagram& a, const Diagram& b) {
  Diagram out = a;
  for (const auto& v : b.vars) {
    if (auto s = out.var_sort(v.name)) {
      if (*s != v.sort) {
        throw DomainError("variable '" + v.name + "' declared with two sorts");
      }
    } else {
      out.vars.push_back(v);
    }
  }
  out.literals.insert(out.literals.end(), b.literals.begin(), b.literals.end());
  return out;
}

std::string to_string(const Term& t, const SymbolTable& symbols) {
  switch (t.kind) {
    case Term::Kind::Var:
      return t.var;
    case Term::Kind::Const:
      return symbols.name(t.id);
    case Term::Kind::Eval: {
      std::string out = "eval(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i > 0) out += (i + 1 == t.args.size()) ? ";" : ",";
        out += to_string(t.args[i], symbols);
      }
      return out + ")";
    }
  }
  return {};
}

std::string to_string(const Literal& l, const SymbolTable& symbols) {
  std::string out = l.positive ? "" : "!";
  switch (l.atom) {
    case Literal::Atom::Eq:
      out += to_string(l.lhs, symbols) + " = " + to_string(l.rhs, symbols);
      break;
    case Literal::Atom::Equiv:
      out += "E(" + to_string(l.lhs, symbols) + "," + to_string(l.rhs, symbols) + ")";
      break;
    case Literal::Atom::SortIs:
      out += std::string(1, sort_char(l.sort)) + "(" + to_string(l.lhs, symbols) + ")";
      break;
  }
  return out;
}

}  // namespace kimlab
