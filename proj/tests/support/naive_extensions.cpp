#include "support/naive_extensions.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "kimlab/errors.hpp"
#include "kimlab/generate.hpp"
#include "kimlab/oracle.hpp"

namespace kimlab::testing {
namespace {

using Tuple = std::vector<ElemId>;

std::vector<Tuple> tuples_over(const std::vector<ElemId>& fs, int n) {
  std::vector<Tuple> out;
  if (fs.empty()) return out;
  Tuple t(static_cast<std::size_t>(n));
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    for (std::size_t i = 0; i < idx.size(); ++i) t[i] = fs[idx[i]];
    out.push_back(t);
    std::size_t pos = idx.size();
    while (pos > 0 && ++idx[pos - 1] == fs.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

struct Enumerator {
  const FinStructure& base;
  const std::function<void(const FinStructure&)>& visit;
  std::vector<ElemId> new_objects;
  std::vector<ElemId> new_functions;
  // Blocks of the final partition; the first base.num_classes() are the
  // base classes, extended with new members.
  std::vector<std::vector<ElemId>> blocks;

  void place(std::size_t i) {
    if (i == new_objects.size()) {
      fill_eval();
      return;
    }
    const std::size_t existing = blocks.size();
    for (std::size_t b = 0; b <= existing; ++b) {
      if (b == existing) blocks.emplace_back();
      blocks[b].push_back(new_objects[i]);
      place(i + 1);
      blocks[b].pop_back();
      if (b == existing) blocks.pop_back();
    }
  }

  void fill_eval() {
    std::vector<ElemId> fs(base.functions().begin(), base.functions().end());
    fs.insert(fs.end(), new_functions.begin(), new_functions.end());
    const auto tuples = tuples_over(fs, base.arity());
    const std::size_t kb = base.num_classes();

    struct Slot {
      std::size_t tuple;
      std::size_t block;
    };
    std::vector<Slot> free;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      const bool old = std::all_of(tuples[t].begin(), tuples[t].end(),
                                   [&](ElemId f) { return base.contains(f); });
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (!(old && b < kb)) free.push_back({t, b});
      }
    }
    std::vector<std::size_t> choice(free.size(), 0);
    while (true) {
      StructureBuilder sb(base.arity());
      for (ElemId e : base.elements()) sb.add(e, base.sort_of(e));
      for (ElemId e : new_objects) sb.add(e, Sort::O);
      for (ElemId e : new_functions) sb.add(e, Sort::F);
      for (const auto& block : blocks) {
        for (std::size_t i = 1; i < block.size(); ++i) sb.unite(block[0], block[i]);
      }
      for (std::size_t t = 0; t < tuples.size(); ++t) {
        const bool old = std::all_of(tuples[t].begin(), tuples[t].end(),
                                     [&](ElemId f) { return base.contains(f); });
        if (!old) continue;
        for (std::size_t b = 0; b < kb; ++b) {
          const ElemId member = base.class_members_of(b).front();
          sb.set_eval_class(tuples[t], member, base.eval(tuples[t], member));
        }
      }
      for (std::size_t i = 0; i < free.size(); ++i) {
        const auto& block = blocks[free[i].block];
        sb.set_eval_class(tuples[free[i].tuple], block[0], block[choice[i]]);
      }
      visit(sb.build());

      std::size_t pos = 0;
      while (pos < free.size()) {
        if (++choice[pos] < blocks[free[pos].block].size()) break;
        choice[pos] = 0;
        ++pos;
      }
      if (pos == free.size()) break;
    }
  }
};

std::vector<Assignment> assignments(const FinStructure& s, const std::vector<VarDecl>& vars) {
  std::vector<Assignment> out{Assignment{}};
  for (const auto& v : vars) {
    const IdSet& pool = v.sort == Sort::O ? s.objects() : s.functions();
    std::vector<Assignment> next;
    for (const auto& a : out) {
      for (ElemId e : pool) {
        Assignment b = a;
        b[v.name] = e;
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

ElemId naive_value(const FinStructure& s, const Assignment& asg, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
      return asg.at(t.var);
    case Term::Kind::Const:
      return t.id;
    case Term::Kind::Eval: {
      Tuple fs;
      for (const Term& f : t.f_args()) fs.push_back(naive_value(s, asg, f));
      return s.eval(fs, naive_value(s, asg, t.o_arg()));
    }
  }
  return {};
}

bool mentions_var(const Term& t) {
  if (t.kind == Term::Kind::Var) return true;
  return std::any_of(t.args.begin(), t.args.end(), mentions_var);
}

using Bits = std::vector<bool>;

}  // namespace

void for_each_extension(const FinStructure& base, std::size_t extras,
                        const std::function<void(const FinStructure&)>& visit) {
  const std::uint32_t first = base.next_free_id().value;
  for (std::size_t j = 0; j <= extras; ++j) {
    for (std::uint32_t mask = 0; mask < (1u << j); ++mask) {
      Enumerator en{base, visit, {}, {}, {}};
      for (std::uint32_t i = 0; i < j; ++i) {
        const ElemId id{first + i};
        ((mask >> i) & 1u ? en.new_functions : en.new_objects).push_back(id);
      }
      for (std::size_t c = 0; c < base.num_classes(); ++c) {
        const IdSet& m = base.class_members_of(c);
        en.blocks.emplace_back(m.begin(), m.end());
      }
      en.place(0);
    }
  }
}

bool naive_holds(const FinStructure& s, const Assignment& asg, const Literal& l) {
  const ElemId a = naive_value(s, asg, l.lhs);
  bool truth = false;
  switch (l.atom) {
    case Literal::Atom::Eq:
      truth = a == naive_value(s, asg, l.rhs);
      break;
    case Literal::Atom::Equiv:
      truth = s.class_index(a) == s.class_index(naive_value(s, asg, l.rhs));
      break;
    case Literal::Atom::SortIs:
      truth = s.sort_of(a) == l.sort;
      break;
  }
  return truth == l.positive;
}

std::vector<Literal> literal_pool(const FinStructure& base,
                                  const std::vector<VarDecl>& vars) {
  std::vector<Term> o_atoms;
  std::vector<Term> f_atoms;
  for (const auto& v : vars) {
    (v.sort == Sort::O ? o_atoms : f_atoms).push_back(Term::variable(v.name, v.sort));
  }
  for (ElemId e : base.objects()) o_atoms.push_back(Term::constant(e));
  for (ElemId e : base.functions()) f_atoms.push_back(Term::constant(e));

  std::vector<Term> o_terms = o_atoms;
  if (base.arity() == 1) {
    for (const Term& f : f_atoms) {
      for (const Term& o : o_atoms) o_terms.push_back(Term::eval({f}, o));
    }
  }

  std::vector<Literal> pool;
  auto push_both = [&](Literal l) {
    if (!mentions_var(l.lhs) && !mentions_var(l.rhs)) return;
    pool.push_back(l);
    pool.push_back(l.negated());
  };
  for (std::size_t i = 0; i < o_terms.size(); ++i) {
    for (std::size_t j = i + 1; j < o_terms.size(); ++j) {
      if (!o_terms[i].is_atom() && !o_terms[j].is_atom()) continue;
      push_both(Literal::eq(o_terms[i], o_terms[j]));
    }
  }
  for (std::size_t i = 0; i < o_atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < o_atoms.size(); ++j) {
      push_both(Literal::equiv(o_atoms[i], o_atoms[j]));
    }
  }
  for (std::size_t i = 0; i < f_atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < f_atoms.size(); ++j) {
      push_both(Literal::eq(f_atoms[i], f_atoms[j]));
    }
  }
  return pool;
}

AgreementStats oracle_agreement(std::size_t max_base_size) {
  AgreementStats stats;
  const std::vector<std::vector<VarDecl>> decls = {
      {},
      {{"x", Sort::O}},
      {{"x", Sort::F}},
      {{"x", Sort::O}, {"y", Sort::O}},
      {{"x", Sort::O}, {"y", Sort::F}},
      {{"x", Sort::F}, {"y", Sort::F}},
  };
  std::vector<FinStructure> bases;
  for (std::size_t size = 0; size <= max_base_size; ++size) {
    enumerate_structures(1, size, [&](const FinStructure& s) {
      bases.push_back(s);
      return true;
    });
  }

  auto problem = [&](const std::string& what) {
    if (stats.first_problem.empty()) stats.first_problem = what;
  };

  for (const FinStructure& base : bases) {
    ++stats.bases;
    std::vector<std::vector<Literal>> pools;
    std::vector<std::set<Bits>> patterns(decls.size());
    for (const auto& d : decls) pools.push_back(literal_pool(base, d));

    // At most two eval-terms per diagram.
    for_each_extension(base, 2 + 2, [&](const FinStructure& ext) {
      for (std::size_t di = 0; di < decls.size(); ++di) {
        for (const Assignment& asg : assignments(ext, decls[di])) {
          Bits bits(pools[di].size());
          for (std::size_t i = 0; i < bits.size(); ++i) {
            bits[i] = naive_holds(ext, asg, pools[di][i]);
          }
          patterns[di].insert(std::move(bits));
        }
      }
    });

    for (std::size_t di = 0; di < decls.size(); ++di) {
      const auto& pool = pools[di];
      const std::size_t p = pool.size();
      std::vector<bool> pair_sat(p * p, false);
      for (const Bits& bits : patterns[di]) {
        for (std::size_t i = 0; i < p; ++i) {
          if (!bits[i]) continue;
          for (std::size_t j = i; j < p; ++j) {
            if (bits[j]) pair_sat[i * p + j] = true;
          }
        }
      }
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
          Diagram d;
          d.vars = decls[di];
          d.literals.push_back(pool[i]);
          if (j != i) d.literals.push_back(pool[j]);
          ++stats.queries;
          const auto w = satisfiable(base, d);
          const bool naive = pair_sat[i * p + j];
          if (w.has_value() != naive) {
            ++stats.disagreements;
            problem("base of size " + std::to_string(base.size()) + ", literals " +
                    std::to_string(i) + "," + std::to_string(j) + ": oracle " +
                    (w ? "SAT" : "UNSAT") + ", naive " + (naive ? "SAT" : "UNSAT"));
          }
          if (!w) continue;
          ++stats.sat;
          const std::size_t k = base.size() + d.vars.size();
          const bool small = w->extension.size() <= generation_bound(k, 1);
          const bool holds_naively =
              std::all_of(d.literals.begin(), d.literals.end(), [&](const Literal& l) {
                return naive_holds(w->extension, w->assignment, l);
              });
          if (!check_witness(base, d, *w).pass() || !small || !holds_naively) {
            ++stats.bad_witnesses;
            problem("witness for literals " + std::to_string(i) + "," +
                    std::to_string(j) + " does not re-verify");
          }
        }
      }
    }
  }
  return stats;
}

}  // namespace kimlab::testing
