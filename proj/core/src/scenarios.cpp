#include "kimlab/scenarios.hpp"

#include <algorithm>
#include <functional>

#include "kimlab/amalgamation.hpp"
#include "kimlab/embedding.hpp"
#include "kimlab/errors.hpp"
#include "kimlab/generate.hpp"
#include "kimlab/independence.hpp"

namespace kimlab {
namespace {

std::string show(ElemId id) { return "e" + std::to_string(id.value); }

std::string show(std::span<const ElemId> ids) {
  std::string out = "(";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + show(ids[i]);
  return out + ")";
}

ElemId id(std::uint32_t v) { return ElemId{v}; }

Template make_tmpl(std::vector<VarDecl> vars, std::vector<Literal> lits,
                   std::vector<std::string> params) {
  Template t;
  t.body.vars = std::move(vars);
  t.body.literals = std::move(lits);
  t.params = std::move(params);
  return t;
}

// eval(x; y) = y with x:F free and y the parameter.
Formula fixes_param() {
  return {make_tmpl({{"x", Sort::F}, {"y", Sort::O}},
                    {Literal::eq(Term::eval({Term::variable("x", Sort::F)},
                                            Term::variable("y", Sort::O)),
                                 Term::variable("y", Sort::O))},
                    {"y"})};
}

// E(x, y) with x:O free and y the parameter.
Formula same_class() {
  return {make_tmpl({{"x", Sort::O}, {"y", Sort::O}},
                    {Literal::equiv(Term::variable("x", Sort::O),
                                    Term::variable("y", Sort::O))},
                    {"y"})};
}

// eval(x; z) = z ∨ E(y, z), parameter z.
Formula fork_formula() {
  const Term x = Term::variable("x", Sort::F);
  const Term y = Term::variable("y", Sort::O);
  const Term z = Term::variable("z", Sort::O);
  std::vector<VarDecl> vars{{"x", Sort::F}, {"y", Sort::O}, {"z", Sort::O}};
  return {make_tmpl(vars, {Literal::eq(Term::eval({x}, z), z)}, {"z"}),
          make_tmpl(vars, {Literal::equiv(y, z)}, {"z"})};
}

ParamList singletons(std::span<const ElemId> ids) {
  ParamList out;
  for (ElemId x : ids) out.push_back({x});
  return out;
}

const Check* find_check(const Report& r, const std::string& prefix) {
  for (const auto& c : r.checks) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

// All checks whose name starts with `prefix` pass (and at least one exists).
bool clause_passes(const Report& r, const std::string& prefix) {
  bool any = false;
  for (const auto& c : r.checks) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    any = true;
    if (!c.pass) return false;
  }
  return any;
}

void absorb(Report& into, const Report& from, const std::string& prefix) {
  for (const auto& c : from.checks) {
    into.checks.push_back(Check{prefix + c.name, c.claim, c.pass, c.witness});
  }
}

std::string failure_text(const Report& r) {
  const Check* f = r.first_failure();
  if (!f) return {};
  return f->name + (f->witness.empty() ? "" : ": " + f->witness);
}

// ---------------------------------------------------------------------------
// SOP1 configurations

Report sop1_scenario(const ScenarioOptions& opt) {
  Report r;
  r.subject = "sop1-config";

  // Base: K = {0}, L = {1, 2, 3}; no F-elements.
  StructureBuilder bb(1);
  for (std::uint32_t i = 0; i < 4; ++i) bb.add(id(i), Sort::O);
  bb.unite(id(1), id(2)).unite(id(1), id(3));
  const FinStructure base = bb.build();
  const Formula phi = fixes_param();

  const Report positive =
      sop1_config_check(base, phi, {{{{id(0)}, {id(1)}}}, {{{id(2)}, {id(3)}}}}, 2,
                        opt.oracle);
  r.add("2-row array with phi = eval(x,y)=y satisfies (a), (b) and (c)",
        positive.pass(), failure_text(positive),
        "c_{i,0} ≡_{c<i} c_{i,1}; {φ(c_{i,0})} consistent; {φ(c_{i,1})} 2-inconsistent");

  const Report identical =
      sop1_config_check(base, phi, {{{{id(0)}, {id(0)}}}, {{{id(2)}, {id(2)}}}}, 2,
                        opt.oracle);
  r.add("identical columns with a consistent column: (a), (b) hold and (c) fails",
        clause_passes(identical, "(a)") && clause_passes(identical, "(b)") &&
            !clause_passes(identical, "(c)"),
        failure_text(identical), "c_{i,0} = c_{i,1} ⇒ column 1 consistent");

  // Fresh-class entries against entries sharing the class of m = 0.
  StructureBuilder fb(1);
  for (std::uint32_t i = 0; i < 5; ++i) fb.add(id(i), Sort::O);
  fb.unite(id(0), id(2)).unite(id(0), id(4));
  const FinStructure fresh_base = fb.build();
  const Report mixed = sop1_config_check(
      fresh_base, same_class(), {{{{id(1)}, {id(2)}}}, {{{id(3)}, {id(4)}}}}, 2,
      opt.oracle);
  const Check* row1 = find_check(mixed, "(a) row 1");
  r.add("fresh-class vs shared-class rows with phi = E(x,y): (a) fails at row 1",
        clause_passes(mixed, "(a) row 0") && row1 && !row1->pass,
        row1 ? row1->witness : "", "¬E(b_{1,0}, b_{0,1}) but E(b_{1,1}, b_{0,1})");

  // An eval value outside the argument's class.
  StructureBuilder xb(base);
  xb.add(id(4), Sort::F).set_eval({id(4)}, id(1), id(0));
  const Report broken =
      sop1_config_check(xb.build(), phi, {{{{id(0)}, {id(1)}}}, {{{id(2)}, {id(3)}}}},
                        2, opt.oracle);
  const Check* valid = find_check(broken, "base is a model");
  r.add("array over a structure violating the selector axiom is rejected",
        valid && !valid->pass && broken.checks.size() == 1,
        valid ? valid->witness : "", "E(eval(f̄;b), b)");
  return r;
}

// ---------------------------------------------------------------------------
// Forking and Morley sequences over a base with a point in a new class

struct PointOverBase {
  FinStructure ambient;  // base ∪ {b} (∪ {b*})
  IdSet m;
  ElemId b;
};

void require_forking_base(const FinStructure& base) {
  const Report v = validate(base);
  if (!v.pass()) {
    throw DomainError("unsuitable base: " + failure_text(v));
  }
  if (base.objects().empty()) {
    throw DomainError("unsuitable base: at least one E-class is required");
  }
}

// Adds b in a new class. When the base has F-elements, every h ∈ F(M) sends
// the class of b to a second new point b*, so that b has conjugates inside
// its own class.
PointOverBase point_in_new_class(const FinStructure& base) {
  StructureBuilder sb(base);
  const ElemId b = base.next_free_id();
  sb.add(b, Sort::O);
  if (!base.functions().empty()) {
    const ElemId star{b.value + 1};
    sb.add(star, Sort::O).unite(b, star);
    for_each_tuple_over(base.functions(), base.arity(), [&](std::span<const ElemId> fs) {
      sb.set_eval_class(std::vector<ElemId>(fs.begin(), fs.end()), b, star);
    });
  }
  return {sb.build(), base.elements(), b};
}

// `groups` new classes of the given sizes, each shaped like the class of b:
// every h ∈ F(M) sends the class to an extra point. Returns the ambient and
// the points in order.
std::pair<FinStructure, std::vector<ElemId>> copies_in_classes(
    const FinStructure& base, const std::vector<std::size_t>& groups) {
  StructureBuilder sb(base);
  std::uint32_t next = base.next_free_id().value;
  std::vector<ElemId> points;
  for (std::size_t size : groups) {
    const ElemId head{next};
    for (std::size_t i = 0; i < size; ++i) {
      const ElemId p{next++};
      sb.add(p, Sort::O).unite(p, head);
      points.push_back(p);
    }
    if (!base.functions().empty()) {
      const ElemId star{next++};
      sb.add(star, Sort::O).unite(star, head);
      for_each_tuple_over(base.functions(), base.arity(), [&](std::span<const ElemId> fs) {
        sb.set_eval_class(std::vector<ElemId>(fs.begin(), fs.end()), head, star);
      });
    }
  }
  return {sb.build(), points};
}

bool all_conjugate(const PointOverBase& p, const FinStructure& s,
                   std::span<const ElemId> points, std::string& why) {
  for (ElemId x : points) {
    const ElemId bx[] = {p.b};
    const ElemId xx[] = {x};
    if (!equal_type_over(p.m, bx, p.ambient, xx, s)) {
      why = show(x) + " does not realize tp(b/M)";
      return false;
    }
  }
  return true;
}

bool pairwise(const FinStructure& s, std::span<const ElemId> points, bool equivalent,
              std::string& why) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j] || s.equivalent(points[i], points[j]) != equivalent) {
        why = show(points[i]) + ", " + show(points[j]);
        return false;
      }
    }
  }
  return true;
}

std::vector<ElemId> firsts(const std::vector<std::vector<ElemId>>& tuples) {
  std::vector<ElemId> out;
  for (const auto& t : tuples) out.push_back(t.front());
  return out;
}

}  // namespace

Report sop1_config_check(const FinStructure& base, const Formula& phi,
                         const std::vector<ArrayRow>& array, std::size_t k,
                         const OracleOptions& options) {
  Report r;
  r.subject = "SOP1 configuration";
  const Report v = validate(base);
  r.add("base is a model of T_n", v.pass(), failure_text(v));
  if (!v.pass()) return r;
  for (const auto& row : array) {
    if (row[0].size() != row[1].size()) {
      throw DomainError("array row entries have different lengths");
    }
  }
  std::vector<ElemId> prefix;
  for (std::size_t i = 0; i < array.size(); ++i) {
    const bool same = equal_type_over(prefix, array[i][0], array[i][1], base);
    r.add("(a) row " + std::to_string(i) + ": c_{i,0} ≡ c_{i,1} over earlier rows",
          same,
          same ? "" : show(array[i][0]) + " vs " + show(array[i][1]) + " over " +
                          show(prefix),
          "c_{i,0} ≡_{c̄<i} c_{i,1}");
    for (const auto& col : array[i]) prefix.insert(prefix.end(), col.begin(), col.end());
  }
  ParamList col0;
  ParamList col1;
  for (const auto& row : array) {
    col0.push_back(row[0]);
    col1.push_back(row[1]);
  }
  r.add("(b) column 0 is consistent", consistent_set(base, phi, col0, options), {},
        "{φ(x; c_{i,0})} consistent");
  r.add("(c) column 1 is " + std::to_string(k) + "-inconsistent",
        k_inconsistent(base, phi, col1, k, options), {},
        "{φ(x; c_{i,1})} k-inconsistent");
  return r;
}

Report verify_not_cosimple(std::size_t m, const OracleOptions& options, bool fault) {
  if (m < 2 || m > 5) throw DomainError("not-cosimple needs 2 ≤ m ≤ 5");
  auto a = [m](std::size_t row, std::size_t col) {
    return ElemId{static_cast<std::uint32_t>(row * m + col)};
  };
  StructureBuilder sb(1);
  for (std::size_t i = 0; i < m * m; ++i) sb.add(id(static_cast<std::uint32_t>(i)), Sort::O);
  for (std::size_t row = 0; row < m; ++row) {
    for (std::size_t col = 1; col < m; ++col) {
      if (fault && row == 0 && col == 1) continue;
      sb.unite(a(row, 0), a(row, col));
    }
  }
  if (fault) sb.unite(a(1, 0), a(0, 1));
  const FinStructure s = sb.build();
  const Formula phi = fixes_param();

  Report r;
  r.subject = "not-cosimple m=" + std::to_string(m);
  std::string shape;
  for (std::size_t r1 = 0; r1 < m && shape.empty(); ++r1) {
    for (std::size_t c1 = 0; c1 < m && shape.empty(); ++c1) {
      for (std::size_t r2 = 0; r2 < m; ++r2) {
        for (std::size_t c2 = 0; c2 < m; ++c2) {
          if (s.equivalent(a(r1, c1), a(r2, c2)) != (r1 == r2)) {
            shape = show(a(r1, c1)) + ", " + show(a(r2, c2));
          }
        }
      }
    }
  }
  r.add("rows are exactly the E-classes of the array", shape.empty(), shape,
        "E(a_{α,β}, a_{α,β'}) and ¬E(a_{α,β}, a_{α',β'}) for α ≠ α'");

  std::size_t paths = 1;
  for (std::size_t i = 0; i < m; ++i) paths *= m;
  std::string bad_path;
  for (std::size_t p = 0; p < paths && bad_path.empty(); ++p) {
    std::vector<ElemId> chosen;
    std::size_t code = p;
    for (std::size_t row = 0; row < m; ++row) {
      chosen.push_back(a(row, code % m));
      code /= m;
    }
    if (!consistent_set(s, phi, singletons(chosen), options)) bad_path = show(chosen);
  }
  r.add("every path {eval(x, a_{α,f(α)}) = a_{α,f(α)} : α < m} is consistent",
        bad_path.empty(),
        bad_path.empty() ? std::to_string(paths) + " paths" : "inconsistent path " + bad_path,
        "∀f: {φ(x; a_{α,f(α)})} consistent");

  std::string bad_row;
  for (std::size_t row = 0; row < m && bad_row.empty(); ++row) {
    std::vector<ElemId> entries;
    for (std::size_t col = 0; col < m; ++col) entries.push_back(a(row, col));
    if (!k_inconsistent(s, phi, singletons(entries), 2, options)) {
      bad_row = "row " + std::to_string(row) + " " + show(entries);
    }
  }
  r.add("every row {eval(x, a_{α,β}) = a_{α,β} : β < m} is 2-inconsistent",
        bad_row.empty(), bad_row.empty() ? std::to_string(m) + " rows" : bad_row,
        "∀α: {φ(x; a_{α,β})} 2-inconsistent");
  return r;
}

FinStructure default_forking_base() {
  StructureBuilder sb(1);
  sb.add(id(0), Sort::O).add(id(1), Sort::O).add(id(2), Sort::F);
  return sb.build();
}

Report verify_forking_not_dividing(const FinStructure& base,
                                   const OracleOptions& options) {
  require_forking_base(base);
  const PointOverBase p = point_in_new_class(base);
  const std::size_t len = 4;
  const Formula phi = fork_formula();
  Report r;
  r.subject = "forking-not-dividing";

  const GenericSpec spec{p.m, {p.b}};
  const MorleySequence ineq = morley_sequence(p.ambient, spec, len);
  const std::vector<ElemId> ib = firsts(ineq.tuples);
  const auto [eq_s, eb] = copies_in_classes(base, {len});

  std::string why;
  r.add("inequivalent sequence: b_i ≡_M b, pairwise ¬E",
        all_conjugate(p, ineq.ambient, ib, why) && pairwise(ineq.ambient, ib, false, why),
        why);
  why.clear();
  r.add("equivalent sequence: b_i ≡_M b, pairwise E and distinct",
        all_conjugate(p, eq_s, eb, why) && pairwise(eq_s, eb, true, why), why);

  r.add("(i) {E(y, b_i)} is 2-inconsistent along the inequivalent sequence",
        k_inconsistent(ineq.ambient, same_class(), singletons(ib), 2, options), {},
        "¬E(b_i, b_j) ⇒ {E(y; b_i)} 2-inconsistent");
  r.add("(ii) {eval(x, b_i) = b_i} is 2-inconsistent along the equivalent sequence",
        k_inconsistent(eq_s, fixes_param(), singletons(eb), 2, options), {},
        "E(b_i, b_j), b_i ≠ b_j ⇒ {eval(x; b_i) = b_i} 2-inconsistent");
  r.add("(iii) {φ(x, y; b_i)} is consistent along the equivalent sequence",
        consistent_set(eq_s, phi, singletons(eb), options), {},
        "φ = eval(x,z) = z ∨ E(y,z)");
  r.add("(iv) {φ(x, y; b_i)} is consistent along the inequivalent sequence",
        consistent_set(ineq.ambient, phi, singletons(ib), options), {},
        "φ = eval(x,z) = z ∨ E(y,z)");

  const auto [q4, b4] = copies_in_classes(base, {2, 2});
  why.clear();
  const bool shape4 = all_conjugate(p, q4, b4, why) && q4.equivalent(b4[0], b4[1]) &&
                      q4.equivalent(b4[2], b4[3]) && !q4.equivalent(b4[1], b4[2]);
  r.add("quasi-dividing: {φ(x, y; b_i) : i < 4} with E(b0,b1), E(b2,b3), ¬E(b1,b2) is "
        "inconsistent",
        shape4 && !consistent_set(q4, phi, singletons(b4), options), why,
        "E(b0,b1) ∧ E(b2,b3) ∧ ¬E(b1,b2) ⇒ {φ(x,y;b_i)}_{i<4} inconsistent");

  const auto [q3, b3] = copies_in_classes(base, {2, 1});
  why.clear();
  const bool shape3 = all_conjugate(p, q3, b3, why) && q3.equivalent(b3[0], b3[1]) &&
                      !q3.equivalent(b3[1], b3[2]);
  r.add("three parameters with E(b0,b1), ¬E(b1,b2): {φ(x, y; b_i)} is consistent",
        shape3 && consistent_set(q3, phi, singletons(b3), options), why);
  r.add("four pairwise equivalent parameters: {φ(x, y; b_i)} is consistent",
        consistent_set(eq_s, phi, singletons(eb), options));
  return r;
}

Report verify_no_universal_morley(const FinStructure& base, std::size_t length,
                                  const OracleOptions& options) {
  require_forking_base(base);
  if (length < 2) throw DomainError("no-universal-morley needs L ≥ 2");
  const PointOverBase p = point_in_new_class(base);
  Report r;
  r.subject = "no-universal-morley L=" + std::to_string(length);

  const MorleySequence ineq = morley_sequence(p.ambient, {p.m, {p.b}}, length);
  const std::vector<ElemId> ib = firsts(ineq.tuples);
  const auto [eq_s, eb] = copies_in_classes(base, {length});
  std::vector<std::vector<ElemId>> eq_tuples;
  for (ElemId x : eb) eq_tuples.push_back({x});

  std::string why;
  r.add("equivalent sequence realizes tp(b/M), pairwise E",
        all_conjugate(p, eq_s, eb, why) && pairwise(eq_s, eb, true, why), why);
  why.clear();
  r.add("inequivalent sequence realizes tp(b/M), pairwise ¬E",
        all_conjugate(p, ineq.ambient, ib, why) && pairwise(ineq.ambient, ib, false, why),
        why);
  const std::size_t depth = std::min<std::size_t>(length, 3);
  const Report ind_eq = check_indiscernible(eq_s, p.m, eq_tuples, depth);
  r.add("equivalent sequence is indiscernible over M", ind_eq.pass(), failure_text(ind_eq));
  const Report ind_ineq = check_indiscernible(ineq.ambient, p.m, ineq.tuples, depth);
  r.add("inequivalent sequence is indiscernible over M", ind_ineq.pass(),
        failure_text(ind_ineq));

  r.add("case 1: {E(x, b_i)} is consistent along the equivalent sequence",
        consistent_set(eq_s, same_class(), singletons(eb), options), {},
        "E(b_i, b_j) for all i, j");
  r.add("case 1: E(x, b) divides, 2-inconsistent along the inequivalent sequence",
        k_inconsistent(ineq.ambient, same_class(), singletons(ib), 2, options), {},
        "¬E(c_i, c_{i+1}) ⇒ {E(x; c_i)} inconsistent");
  r.add("case 2: {eval(x, b_i) = b_i} is consistent along the inequivalent sequence",
        consistent_set(ineq.ambient, fixes_param(), singletons(ib), options), {},
        "¬E(b_i, b_j) for i ≠ j");
  r.add("case 2: eval(x, b) = b divides, 2-inconsistent along the equivalent sequence",
        k_inconsistent(eq_s, fixes_param(), singletons(eb), 2, options), {},
        "eval(a, -) is constant on each E-class");
  return r;
}

TransitivityModel transitivity_model(bool clause_one) {
  // m = 0, m0 = 1, m1 = 2 represent the classes of M; h = 3 is M's function.
  const ElemId m{0}, h{3}, c{4}, f{5}, g{6};
  StructureBuilder sb(2);
  sb.add(m, Sort::O).add(id(1), Sort::O).add(id(2), Sort::O).add(h, Sort::F);
  sb.add(c, Sort::O).unite(m, c);
  sb.add(f, Sort::F).add(g, Sort::F);
  // Every value on M's classes defaults to the class representative, which
  // is clauses (2) and (3); clause (1) is the only exception.
  const ElemId value = clause_one ? c : m;
  sb.set_eval_class({f, g}, m, value).set_eval_class({g, f}, m, value);
  return {sb.build(), make_id_set({m, id(1), id(2), h}), f, g, c};
}

Report verify_transitivity_failure(bool clause_one) {
  const TransitivityModel t = transitivity_model(clause_one);
  const FinStructure& s = t.s;
  Report r;
  r.subject = clause_one ? "transitivity-failure" : "transitivity-failure without clause 1";
  const Report v = validate(s);
  r.add("the constructed structure is a model of T_2", v.pass(), failure_text(v));

  auto with = [&](std::vector<ElemId> extra) {
    extra.insert(extra.end(), t.m.begin(), t.m.end());
    return make_id_set(std::move(extra));
  };
  auto dcl_check = [&](const std::string& name, std::vector<ElemId> gens,
                       std::vector<ElemId> expected) {
    const IdSet got = dcl(s, with(gens));
    r.add(name, got == with(expected), got == with(expected) ? "" : "got " + show(got),
          name);
  };
  dcl_check("dcl(fM) = M ∪ {f}", {t.f}, {t.f});
  dcl_check("dcl(gM) = M ∪ {g}", {t.g}, {t.g});
  dcl_check("dcl(cM) = M ∪ {c}", {t.c}, {t.c});
  dcl_check("dcl(fgM) = M ∪ {f,g,c}", {t.f, t.g}, {t.f, t.g, t.c});
  dcl_check("dcl(gcM) = M ∪ {g,c}", {t.g, t.c}, {t.g, t.c});

  const ElemId f[] = {t.f};
  const ElemId g[] = {t.g};
  const ElemId c[] = {t.c};
  const ElemId gc[] = {t.g, t.c};
  const ElemId fg[] = {t.f, t.g};
  const Report r1 = indep_star(s, f, gc, t.m);
  r.add("f ⫝*_M gc", r1.pass(), failure_text(r1), "dcl(fM) ∩ dcl(gcM) ⊆ M");
  const Report r2 = indep_star(s, g, c, t.m);
  r.add("g ⫝*_M c", r2.pass(), failure_text(r2), "dcl(gM) ∩ dcl(cM) ⊆ M");
  const Report r3 = indep_star(s, fg, c, t.m);
  const Check* elem = find_check(r3, "dcl(aC) ∩ dcl(bC)");
  const bool names_c = elem && !elem->pass && elem->witness.rfind(show(t.c), 0) == 0;
  r.add("fg ⫝̸*_M c, witnessed by c", !r3.pass() && names_c, failure_text(r3),
        "c ∈ (dcl(fgM) ∩ dcl(cM)) \\ M");

  const std::vector<ElemId> over = with({t.g, t.c});
  r.add("f ≢ g over M ∪ {g, c}", !equal_type_over(over, f, g, s), {},
        "eval(f,g;m) = c, eval(g,g;m) = m");
  return r;
}

namespace {

Report transitivity_scenario() {
  Report r = verify_transitivity_failure(true);
  const Report control = verify_transitivity_failure(false);
  const Check* fg = find_check(control, "fg ⫝̸*_M c");
  r.add("control: without clause (1), fg ⫝*_M c holds and the scenario fails",
        !control.pass() && fg && !fg->pass, failure_text(control));
  return r;
}

Report not_cosimple_scenario(const ScenarioOptions& opt) {
  Report r;
  r.subject = "not-cosimple";
  std::vector<std::size_t> sizes;
  if (opt.m == 0) {
    sizes = {2, 3};
  } else {
    sizes = {opt.m};
  }
  for (std::size_t m : sizes) {
    absorb(r, verify_not_cosimple(m, opt.oracle), "m=" + std::to_string(m) + ": ");
  }
  const Report faulty = verify_not_cosimple(sizes.front(), opt.oracle, true);
  const Check* row = find_check(faulty, "every row");
  r.add("fault injection: moving a_{0,1} into row 1 breaks the row bullet",
        !faulty.pass() && row && !row->pass, failure_text(faulty));
  return r;
}

// Random instances of the independence theorem for ⫝*.
Report independence_amalgam_scenario(const ScenarioOptions& opt) {
  Report r;
  r.subject = "independence-amalgam";
  Rng rng(opt.seed);
  std::size_t passed = 0;
  std::size_t nontrivial = 0;
  std::string first_failure;
  for (std::size_t t = 0; t < opt.instances; ++t) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 2));
    RandomShape shape;
    shape.n = n;
    shape.objects = 1 + uniform_below(rng, 2);
    shape.functions = uniform_below(rng, 2);
    shape.classes = 1 + uniform_below(rng, shape.objects);
    const FinStructure mstruct = random_structure(shape, rng);
    const FinStructure s0 = random_extension(mstruct, 1 + uniform_below(rng, 2),
                                             uniform_below(rng, 2), rng);
    const IdSet& m = mstruct.elements();

    std::vector<ElemId> outside;
    for (ElemId x : s0.elements()) {
      if (!mstruct.contains(x)) outside.push_back(x);
    }
    std::vector<ElemId> a{outside[uniform_below(rng, outside.size())]};
    if (outside.size() > 1 && uniform_below(rng, 2) == 0) {
      const ElemId extra = outside[uniform_below(rng, outside.size())];
      if (extra != a.front()) a.push_back(extra);
    }

    // a′ lives in a copy of ⟨aM⟩ amalgamated with s0 over M.
    const FinStructure pa = restrict_to(s0, closure(s0, [&] {
                                          std::vector<ElemId> g(m.begin(), m.end());
                                          g.insert(g.end(), a.begin(), a.end());
                                          return g;
                                        }()));
    std::map<ElemId, ElemId> copy;
    std::uint32_t next = s0.next_free_id().value;
    for (ElemId x : pa.elements()) copy[x] = mstruct.contains(x) ? x : ElemId{next++};
    const FinStructure pcopy = relabel(pa, [&](ElemId x) { return copy.at(x); });
    const FinStructure s = strong_amalgam(mstruct, s0, pcopy);
    std::vector<ElemId> a1;
    for (ElemId x : a) a1.push_back(copy.at(x));

    // B and C by rejection sampling; B = C = M always qualifies.
    std::vector<ElemId> b(m.begin(), m.end());
    std::vector<ElemId> c(m.begin(), m.end());
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::vector<ElemId> bb(m.begin(), m.end());
      std::vector<ElemId> cc(m.begin(), m.end());
      for (ElemId x : s.elements()) {
        const std::size_t roll = uniform_below(rng, 4);
        if (roll == 0) bb.push_back(x);
        if (roll == 1) cc.push_back(x);
      }
      const IdSet bcl = closure(s, bb);
      const IdSet ccl = closure(s, cc);
      if (is_indep_star(s, a, bcl, m) && is_indep_star(s, a1, ccl, m) &&
          is_indep_star(s, bcl, ccl, m)) {
        b.assign(bcl.begin(), bcl.end());
        c.assign(ccl.begin(), ccl.end());
        break;
      }
    }
    if (b.size() > m.size() || c.size() > m.size()) ++nontrivial;

    const IndependenceAmalgam res = independence_amalgam(s, m, a, a1, b, c);
    const Report check = check_independence_amalgam(s, m, a, a1, b, c, res);
    if (check.pass()) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = "instance " + std::to_string(t) + ": " + failure_text(check);
    }
  }
  r.add("a″ ≡_{MB} a, a″ ≡_{MC} a′ and a″ ⫝*_M BC on every random instance",
        passed == opt.instances,
        first_failure.empty()
            ? std::to_string(passed) + " instances, " + std::to_string(nontrivial) +
                  " with B or C larger than M"
            : first_failure,
        "a ≡_M a′, a ⫝*_M B, a′ ⫝*_M C, B ⫝*_M C ⇒ ∃a″");
  r.add("random corpus exercises non-trivial B or C", nontrivial * 2 >= opt.instances,
        std::to_string(nontrivial) + " of " + std::to_string(opt.instances));

  // a = a′ ⊆ M.
  {
    const TransitivityModel tm = transitivity_model(true);
    const std::vector<ElemId> a{ElemId{0}};
    const IndependenceAmalgam res =
        independence_amalgam(tm.s, tm.m, a, a, tm.m, tm.m);
    r.add("a = a′ ∈ M gives a″ = a", res.a2 == a, show(res.a2));
  }
  // B ⫝̸*_M C is rejected.
  {
    const TransitivityModel tm = transitivity_model(true);
    const std::vector<ElemId> a{ElemId{1}};
    const std::vector<ElemId> b{tm.f, tm.g};
    const std::vector<ElemId> c{tm.c};
    std::string what;
    try {
      independence_amalgam(tm.s, tm.m, a, a, b, c);
    } catch (const PreconditionError& e) {
      what = e.what();
    }
    r.add("input violating B ⫝*_M C is rejected with a precondition error",
          what.find("B ⫝*_M C") != std::string::npos, what);
  }
  return r;
}

Report local_character_scenario(const ScenarioOptions& opt) {
  Report r;
  r.subject = "local-character";
  Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::size_t ok = 0;
  std::size_t longest = 0;
  std::string first_failure;
  for (std::size_t t = 0; t < opt.instances; ++t) {
    RandomShape shape;
    shape.n = 1;
    shape.objects = 4 + uniform_below(rng, 17);
    shape.functions = 1 + uniform_below(rng, 6);
    shape.classes = 1 + uniform_below(rng, shape.objects);
    const FinStructure s = random_structure(shape, rng);
    std::vector<ElemId> seed;
    for (ElemId x : s.elements()) {
      if (uniform_below(rng, 2) == 0) seed.push_back(x);
    }
    const IdSet n = closure(s, seed);
    std::vector<ElemId> rest;
    for (ElemId x : s.elements()) {
      if (!std::binary_search(n.begin(), n.end(), x)) rest.push_back(x);
    }
    const std::vector<ElemId> a{rest.empty() ? s.elements()[uniform_below(rng, s.size())]
                                             : rest[uniform_below(rng, rest.size())]};
    std::vector<ElemId> m0;
    if (!n.empty()) m0.push_back(n[uniform_below(rng, n.size())]);
    const LocalCharacter lc = local_character_chain(s, n, a, m0);
    longest = std::max(longest, lc.chain.size() - 1);
    const bool bounded = lc.chain.size() - 1 <= n.size();
    if (lc.report.pass() && bounded) {
      ++ok;
    } else if (first_failure.empty()) {
      first_failure = "instance " + std::to_string(t) + ": " +
                      (bounded ? failure_text(lc.report) : "chain longer than |N|");
    }
  }
  r.add("chain reaches a fixed point M within |N| steps with dcl(aM) ∩ N ⊆ M and "
        "dcl(aM)/E ∩ N/E ⊆ M/E",
        ok == opt.instances,
        first_failure.empty() ? std::to_string(ok) + " instances, longest chain " +
                                    std::to_string(longest) + " steps"
                              : first_failure,
        "dcl(aM_i) ∩ N ⊆ M_{i+1}; dcl(aM_i)/E ∩ N/E represented in M_{i+1}");

  const TransitivityModel tm = transitivity_model(true);
  const std::vector<ElemId> a{ElemId{0}};
  const LocalCharacter trivial = local_character_chain(tm.s, tm.s.elements(), a, tm.m);
  r.add("a ⊆ M_0 is a fixed point at step 0", trivial.chain.size() == 1,
        std::to_string(trivial.chain.size() - 1) + " steps");
  return r;
}

}  // namespace

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids{
      "sop1-config",         "not-cosimple",         "forking-not-dividing",
      "no-universal-morley", "transitivity-failure", "independence-amalgam",
      "local-character"};
  return ids;
}

Report run_scenario(const std::string& name, const ScenarioOptions& opt) {
  if (name == "sop1-config") return sop1_scenario(opt);
  if (name == "not-cosimple") return not_cosimple_scenario(opt);
  if (name == "forking-not-dividing") {
    Report r = verify_forking_not_dividing(default_forking_base(), opt.oracle);
    return r;
  }
  if (name == "no-universal-morley") {
    return verify_no_universal_morley(default_forking_base(), opt.length, opt.oracle);
  }
  if (name == "transitivity-failure") return transitivity_scenario();
  if (name == "independence-amalgam") return independence_amalgam_scenario(opt);
  if (name == "local-character") return local_character_scenario(opt);
  throw DomainError("unknown scenario '" + name + "'");
}

}  // namespace kimlab
