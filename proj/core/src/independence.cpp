#include "kimlab/independence.hpp"

#include <algorithm>
#include <map>

#include "kimlab/embedding.hpp"
#include "kimlab/errors.hpp"

namespace kimlab {
namespace {

std::string show(ElemId id) { return "e" + std::to_string(id.value); }

bool in(const IdSet& s, ElemId x) { return std::binary_search(s.begin(), s.end(), x); }

IdSet with(std::span<const ElemId> x, std::span<const ElemId> y) {
  std::vector<ElemId> v(x.begin(), x.end());
  v.insert(v.end(), y.begin(), y.end());
  return make_id_set(std::move(v));
}

// Is the class of `o` represented in `set`?
bool class_meets(const FinStructure& s, ElemId o, const IdSet& set) {
  for (ElemId m : s.class_members_of(s.class_index(o))) {
    if (in(set, m)) return true;
  }
  return false;
}

}  // namespace

IdSet dcl(const FinStructure& ambient, std::span<const ElemId> x) {
  for (ElemId id : x) {
    if (!ambient.contains(id)) throw DomainError("unknown element " + show(id));
  }
  return closure(ambient, x);
}

Report indep_star(const FinStructure& ambient, std::span<const ElemId> a,
                  std::span<const ElemId> b, std::span<const ElemId> c) {
  const IdSet da = dcl(ambient, with(a, c));
  const IdSet db = dcl(ambient, with(b, c));
  const IdSet dc = dcl(ambient, c);

  Report r;
  r.subject = "a ⫝*_C b";
  std::string cls;
  for (ElemId x : da) {
    if (ambient.sort_of(x) != Sort::O) continue;
    if (class_meets(ambient, x, db) && !class_meets(ambient, x, dc)) {
      cls = "class of " + show(ambient.class_rep(x)) +
            " is represented in dcl(aC) and dcl(bC) but not in dcl(C)";
      break;
    }
  }
  r.add("dcl(aC)/E ∩ dcl(bC)/E ⊆ dcl(C)/E", cls.empty(), cls);
  std::string elem;
  for (ElemId x : da) {
    if (in(db, x) && !in(dc, x)) {
      elem = show(x) + " ∈ dcl(aC) ∩ dcl(bC) \\ dcl(C)";
      break;
    }
  }
  r.add("dcl(aC) ∩ dcl(bC) ⊆ dcl(C)", elem.empty(), elem);
  return r;
}

bool is_indep_star(const FinStructure& ambient, std::span<const ElemId> a,
                   std::span<const ElemId> b, std::span<const ElemId> c) {
  return indep_star(ambient, a, b, c).pass();
}

Extension generic_extend(const FinStructure& s, const GenericSpec& spec,
                         std::optional<ElemId> first_id) {
  if (s.arity() != 1) {
    throw DomainError("generic_extend supports n = 1 only (got n = " +
                      std::to_string(s.arity()) + ")");
  }
  const IdSet c = make_id_set(spec.base);
  for (ElemId id : c) {
    if (!s.contains(id)) throw DomainError("unknown base element " + show(id));
  }
  for (ElemId id : spec.prototype) {
    if (!s.contains(id)) throw DomainError("unknown prototype element " + show(id));
  }
  if (closure(s, c) != c) throw PreconditionError("generic_extend: base is not eval-closed");

  const IdSet p = closure(s, with(c, spec.prototype));
  std::uint32_t next = first_id.value_or(s.next_free_id()).value;
  if (next < s.next_free_id().value) throw DomainError("first id collides with the ambient");

  StructureBuilder b(s);
  std::map<ElemId, ElemId> pi;
  for (ElemId x : p) pi[x] = in(c, x) ? x : ElemId{next++};

  // Copies of P-classes: attached to the ambient class when it meets C,
  // otherwise grouped into a new class.
  std::map<ElemId, ElemId> copy_class;  // copy -> representative in the result
  std::vector<ElemId> new_class_reps;   // copies heading a new class
  for (ElemId x : p) {
    if (in(c, x)) continue;
    b.add(pi[x], s.sort_of(x));
    if (s.sort_of(x) != Sort::O) continue;
    ElemId head{};
    bool meets_c = false;
    bool found = false;
    for (ElemId m : s.class_members_of(s.class_index(x))) {
      if (in(c, m)) {
        head = m;
        meets_c = true;
        break;
      }
      if (!found && in(p, m)) {
        head = pi[m];
        found = true;
      }
    }
    b.unite(pi[x], head);
    if (!meets_c && head == pi[x]) new_class_reps.push_back(head);
  }

  const std::vector<ElemId> p_f = [&] {
    std::vector<ElemId> v;
    for (ElemId x : p) {
      if (s.sort_of(x) == Sort::F) v.push_back(x);
    }
    return v;
  }();
  const std::vector<ElemId> p_classes = [&] {
    std::vector<ElemId> v;
    for (ElemId x : p) {
      if (s.sort_of(x) == Sort::O && s.class_rep(x) == x) v.push_back(x);
      else if (s.sort_of(x) == Sort::O) {
        // least member of the class inside P
        bool earlier = false;
        for (ElemId m : s.class_members_of(s.class_index(x))) {
          if (m == x) break;
          if (in(p, m)) earlier = true;
        }
        if (!earlier) v.push_back(x);
      }
    }
    return v;
  }();

  // The copy carries P's eval table wherever a copied element is involved.
  for (ElemId f : p_f) {
    for (ElemId q : p_classes) {
      const bool q_meets_c = class_meets(s, q, c);
      if (in(c, f) && q_meets_c) continue;  // already in the ambient
      b.set_eval_class({pi[f]}, pi[q], pi[s.eval(std::vector<ElemId>{f}, q)]);
    }
  }

  // New F-elements on ambient classes not meeting C: distinct fresh values.
  for (ElemId f : p_f) {
    if (in(c, f)) continue;
    for (std::size_t k = 0; k < s.num_classes(); ++k) {
      const ElemId rep = s.class_members_of(k).front();
      if (class_meets(s, rep, c)) continue;
      const ElemId z{next++};
      b.add(z, Sort::O).unite(z, rep);
      b.set_eval_class({pi[f]}, rep, z);
    }
  }
  // Old F-elements outside C on new classes: fresh values.
  for (ElemId m : s.functions()) {
    if (in(c, m)) continue;
    for (ElemId head : new_class_reps) {
      const ElemId w{next++};
      b.add(w, Sort::O).unite(w, head);
      b.set_eval_class({m}, head, w);
    }
  }

  Extension out{b.build(), {}};
  for (ElemId x : spec.prototype) out.tuple.push_back(pi.at(x));
  return out;
}

Report check_generic(const FinStructure& old, const GenericSpec& spec,
                     const Extension& ext) {
  Report r;
  r.subject = "generic realization";
  const FinStructure& s = ext.ambient;
  const IdSet c = make_id_set(spec.base);
  const Report v = validate(s);
  r.add("extension is a model of T_n", v.pass(), v.pass() ? "" : v.first_failure()->witness);
  if (!v.pass()) return r;
  bool sub = true;
  try {
    sub = restrict_to(s, old.elements()) == old;
  } catch (const Error&) {
    sub = false;
  }
  r.add("ambient is a substructure of the extension", sub);
  r.add("tuple realizes tp(prototype / C)",
        equal_type_over(c, spec.prototype, old, ext.tuple, s));

  std::vector<ElemId> xs;
  std::vector<ElemId> ys;
  for (ElemId t : ext.tuple) {
    if (in(c, t)) continue;
    (s.sort_of(t) == Sort::F ? xs : ys).push_back(t);
  }
  auto ev = [&](ElemId f, ElemId o) { return s.eval(std::vector<ElemId>{f}, o); };
  auto outside_c_class = [&](ElemId m) {
    for (ElemId k : s.class_members_of(s.class_index(m))) {
      if (in(c, k)) return false;
    }
    return true;
  };
  std::string w1, w2, w3, w4, w5;
  for (ElemId m : old.objects()) {
    const bool m_in_c = in(c, m);
    const bool fresh_class = outside_c_class(m);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!m_in_c && w1.empty() && ev(xs[i], m) == m) {
        w1 = "eval(" + show(xs[i]) + "," + show(m) + ") = " + show(m);
      }
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        if (fresh_class && w2.empty() && ev(xs[i], m) == ev(xs[j], m)) {
          w2 = "eval(" + show(xs[i]) + "," + show(m) + ") = eval(" + show(xs[j]) +
               "," + show(m) + ")";
        }
      }
      for (ElemId y : ys) {
        if (!m_in_c && w3.empty() && ev(xs[i], y) == m) {
          w3 = "eval(" + show(xs[i]) + "," + show(y) + ") = " + show(m);
        }
      }
    }
    for (ElemId y : ys) {
      if (fresh_class && w5.empty() && s.equivalent(y, m)) {
        w5 = "E(" + show(y) + "," + show(m) + ")";
      }
    }
  }
  for (ElemId m : old.functions()) {
    if (in(c, m)) continue;
    for (ElemId y : ys) {
      if (w4.empty() && ev(m, y) == y) {
        w4 = "eval(" + show(m) + "," + show(y) + ") = " + show(y);
      }
    }
  }
  r.add("eval(x_i,m) ≠ m for m ∉ C", w1.empty(), w1);
  r.add("eval(x_i,m) ≠ eval(x_j,m) for m/E ∉ C/E", w2.empty(), w2);
  r.add("eval(x_i,y_j) ≠ m for m ∉ C", w3.empty(), w3);
  r.add("eval(m,y_j) ≠ y_j for m ∉ C", w4.empty(), w4);
  r.add("¬E(y_j,m) for m/E ∉ C/E", w5.empty(), w5);
  return r;
}

MorleySequence morley_sequence(const FinStructure& ambient, const GenericSpec& spec,
                               std::size_t length) {
  if (length == 0) throw DomainError("Morley sequence length must be positive");
  MorleySequence out{ambient, {}};
  for (std::size_t i = 0; i < length; ++i) {
    Extension e = generic_extend(out.ambient, spec);
    out.ambient = std::move(e.ambient);
    out.tuples.push_back(std::move(e.tuple));
  }
  return out;
}

Report check_indiscernible(const FinStructure& ambient, std::span<const ElemId> base,
                           const std::vector<std::vector<ElemId>>& tuples,
                           std::size_t max_len) {
  Report r;
  r.subject = "indiscernibility over C";
  const std::size_t count = tuples.size();
  if (count > 20) throw DomainError("too many tuples for subsequence enumeration");
  auto concat = [&](std::uint32_t mask) {
    std::vector<ElemId> v;
    for (std::size_t i = 0; i < count; ++i) {
      if (mask & (1u << i)) v.insert(v.end(), tuples[i].begin(), tuples[i].end());
    }
    return v;
  };
  for (std::size_t len = 1; len <= std::min(max_len, count); ++len) {
    std::optional<std::vector<ElemId>> first;
    std::string bad;
    std::uint64_t compared = 0;
    for (std::uint32_t mask = 0; mask < (1u << count); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != len) continue;
      const auto t = concat(mask);
      if (!first) {
        first = t;
        continue;
      }
      ++compared;
      if (!equal_type_over(base, *first, t, ambient)) {
        bad = "subsequence mask " + std::to_string(mask) +
              " differs in type from the first";
        break;
      }
    }
    r.add("increasing subsequences of length " + std::to_string(len) +
              " have one type",
          bad.empty(), bad.empty() ? std::to_string(compared) + " comparisons" : bad);
  }
  return r;
}

KimDividing kim_divides(const FinStructure& ambient, const Formula& phi,
                        std::span<const ElemId> b, std::span<const ElemId> base,
                        std::size_t length, const OracleOptions& options) {
  if (length < 2) throw DomainError("Kim-dividing check needs L ≥ 2");
  GenericSpec spec{make_id_set(std::vector<ElemId>(base.begin(), base.end())),
                   std::vector<ElemId>(b.begin(), b.end())};
  KimDividing out{{}, false, std::nullopt, morley_sequence(ambient, spec, length)};
  const ParamList params(out.sequence.tuples.begin(), out.sequence.tuples.end());
  out.consistent = consistent_set(out.sequence.ambient, phi, params, options);
  if (!out.consistent) {
    out.inconsistency_degree =
        inconsistency_degree(out.sequence.ambient, phi, params, options);
  }
  out.report = check_indiscernible(out.sequence.ambient, base, out.sequence.tuples,
                                   std::min<std::size_t>(length, 4));
  out.report.subject = "Kim-dividing along a Morley sequence of length " +
                       std::to_string(length);
  out.report.add("instances along the sequence", true,
                 out.consistent ? "consistent"
                                : std::to_string(*out.inconsistency_degree) +
                                      "-inconsistent");
  return out;
}

}  // namespace kimlab
