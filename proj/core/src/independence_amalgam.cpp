#include <algorithm>
#include <map>
#include <set>

#include "kimlab/embedding.hpp"
#include "kimlab/errors.hpp"
#include "kimlab/independence.hpp"
#include "kimlab/scenarios.hpp"

namespace kimlab {
namespace {

std::string show(ElemId id) { return "e" + std::to_string(id.value); }

bool in(const IdSet& s, ElemId x) { return std::binary_search(s.begin(), s.end(), x); }

IdSet join(std::span<const ElemId> x, std::span<const ElemId> y) {
  std::vector<ElemId> v(x.begin(), x.end());
  v.insert(v.end(), y.begin(), y.end());
  return make_id_set(std::move(v));
}

// A copy of part of the ambient inside D, with its inverse.
struct Image {
  std::map<ElemId, ElemId> to;    // ambient -> D
  std::map<ElemId, ElemId> from;  // D -> ambient

  void put(ElemId x, ElemId y) {
    to[x] = y;
    from[y] = x;
  }
};

}  // namespace

IndependenceAmalgam independence_amalgam(const FinStructure& s,
                                         std::span<const ElemId> m_in,
                                         std::span<const ElemId> a,
                                         std::span<const ElemId> a1,
                                         std::span<const ElemId> b_in,
                                         std::span<const ElemId> c_in) {
  const IdSet m = make_id_set(std::vector<ElemId>(m_in.begin(), m_in.end()));
  if (closure(s, m) != m) throw PreconditionError("M is not eval-closed");
  if (a.size() != a1.size()) throw PreconditionError("a and a′ have different lengths");
  const IdSet b = closure(s, join(m, b_in));
  const IdSet c = closure(s, join(m, c_in));

  std::vector<ElemId> ma(m.begin(), m.end());
  std::vector<ElemId> ma1(m.begin(), m.end());
  ma.insert(ma.end(), a.begin(), a.end());
  ma1.insert(ma1.end(), a1.begin(), a1.end());
  const auto sigma = generated_isomorphism(s, ma, s, ma1);
  if (!sigma) throw PreconditionError("a ≢_M a′");
  if (!is_indep_star(s, a, b, m)) throw PreconditionError("a ⫝*_M B fails");
  if (!is_indep_star(s, a1, c, m)) throw PreconditionError("a′ ⫝*_M C fails");
  if (!is_indep_star(s, b, c, m)) throw PreconditionError("B ⫝*_M C fails");

  const IdSet am = closure(s, ma);     // ⟨aM⟩
  const IdSet dab = closure(s, join(b, a));    // dcl(aB)
  const IdSet dac = closure(s, join(c, a1));   // dcl(a′C)
  const IdSet bc = closure(s, join(b, c));     // ⟨BC⟩

  std::uint32_t next = s.next_free_id().value;
  Image u;  // ι0 : dcl(aB) -> BU
  Image v;  // ι1 : dcl(a′C) -> CV
  for (ElemId x : dab) u.put(x, in(b, x) ? x : ElemId{next++});
  std::map<ElemId, ElemId> sigma_inv;
  for (const auto& [from, to] : sigma->pairs()) sigma_inv[to] = from;
  for (ElemId y : dac) {
    if (in(c, y)) {
      v.put(y, y);
    } else if (auto it = sigma_inv.find(y); it != sigma_inv.end() && in(am, it->second)) {
      v.put(y, u.to.at(it->second));  // u_h = v_{σ(h)}
    } else {
      v.put(y, ElemId{next++});
    }
  }

  StructureBuilder db(s.arity());
  std::map<ElemId, Sort> sorts;
  auto declare = [&](ElemId d, Sort sort) {
    auto [it, inserted] = sorts.emplace(d, sort);
    if (!inserted && it->second != sort) {
      throw ConstructionError("sort clash at " + show(d));
    }
    db.add(d, sort);
  };
  for (ElemId x : bc) declare(x, s.sort_of(x));
  for (const auto& [x, d] : u.to) declare(d, s.sort_of(x));
  for (const auto& [y, d] : v.to) declare(d, s.sort_of(y));

  // E^D is generated by the three pieces.
  auto unite_piece = [&](const IdSet& piece, const std::map<ElemId, ElemId>* img) {
    for (ElemId x : piece) {
      if (s.sort_of(x) != Sort::O) continue;
      for (ElemId y : s.class_members_of(s.class_index(x))) {
        if (y == x || !in(piece, y)) continue;
        db.unite(img ? img->at(x) : x, img ? img->at(y) : y);
        break;
      }
    }
  };
  unite_piece(dab, &u.to);
  unite_piece(dac, &v.to);
  unite_piece(bc, nullptr);

  std::map<ElemId, IdSet> classes;  // D-class root -> members
  std::vector<ElemId> fd;
  for (const auto& [d, sort] : sorts) {
    if (sort == Sort::O) {
      classes[db.find(d)].push_back(d);
    } else {
      fd.push_back(d);
    }
  }
  const IdSet m_set = m;

  // The union of the three eval tables is a function; undefined entries go
  // to a representative chosen in M when the class meets M.
  for_each_tuple_over(fd, s.arity(), [&](std::span<const ElemId> fs) {
    for (const auto& [root, members] : classes) {
      std::optional<ElemId> value;
      auto offer = [&](ElemId candidate) {
        if (value && *value != candidate) {
          throw ConstructionError("eval tables disagree on the class of " + show(root));
        }
        value = candidate;
      };
      auto from_piece = [&](const Image* img, const IdSet* piece) {
        std::vector<ElemId> pre;
        for (ElemId f : fs) {
          if (img) {
            auto it = img->from.find(f);
            if (it == img->from.end()) return;
            pre.push_back(it->second);
          } else {
            if (!in(*piece, f)) return;
            pre.push_back(f);
          }
        }
        for (ElemId e : members) {
          if (img) {
            auto it = img->from.find(e);
            if (it == img->from.end()) continue;
            offer(img->to.at(s.eval(pre, it->second)));
          } else if (in(*piece, e)) {
            offer(s.eval(pre, e));
          }
        }
      };
      from_piece(&u, nullptr);
      from_piece(&v, nullptr);
      from_piece(nullptr, &bc);
      if (!value) {
        value = members.front();
        for (ElemId e : members) {
          if (in(m_set, e)) {
            value = e;
            break;
          }
        }
      }
      db.set_eval_class(std::vector<ElemId>(fs.begin(), fs.end()), root, *value);
    }
  });

  IndependenceAmalgam out{db.build(), {}};
  for (ElemId x : a) out.a2.push_back(u.to.at(x));
  return out;
}

Report check_independence_amalgam(const FinStructure& s, std::span<const ElemId> m_in,
                                  std::span<const ElemId> a,
                                  std::span<const ElemId> a1,
                                  std::span<const ElemId> b_in,
                                  std::span<const ElemId> c_in,
                                  const IndependenceAmalgam& res) {
  const IdSet m = make_id_set(std::vector<ElemId>(m_in.begin(), m_in.end()));
  const IdSet b = closure(s, join(m, b_in));
  const IdSet c = closure(s, join(m, c_in));
  const IdSet bc = closure(s, join(b, c));
  Report r;
  r.subject = "independence amalgam";
  const Report v = validate(res.d);
  r.add("D is a model of T_n", v.pass(),
        v.pass() ? "" : v.first_failure()->witness);
  if (!v.pass()) return r;
  bool sub = false;
  try {
    sub = restrict_to(res.d, bc) == restrict_to(s, bc);
  } catch (const Error&) {
    sub = false;
  }
  r.add("⟨BC⟩ is a substructure of D", sub);
  if (!sub) return r;
  r.add("a″ ≡_B a", equal_type_over(b, a, s, res.a2, res.d), {}, "a″ ≡_{MB} a");
  r.add("a″ ≡_C a′", equal_type_over(c, a1, s, res.a2, res.d), {}, "a″ ≡_{MC} a′");
  const Report ind = indep_star(res.d, res.a2, bc, m);
  r.add("a″ ⫝*_M BC", ind.pass(),
        ind.pass() ? "" : ind.first_failure()->witness, "a″ ⫝*_M BC");
  return r;
}

LocalCharacter local_character_chain(const FinStructure& s,
                                     std::span<const ElemId> n_in,
                                     std::span<const ElemId> a,
                                     std::span<const ElemId> m0) {
  const IdSet n = closure(s, n_in);
  for (ElemId x : m0) {
    if (!in(n, x)) throw DomainError("M_0 is not contained in N: " + show(x));
  }
  LocalCharacter out;
  out.chain.push_back(closure(s, m0));
  auto class_in = [&](ElemId o, const IdSet& set) -> std::optional<ElemId> {
    for (ElemId y : s.class_members_of(s.class_index(o))) {
      if (in(set, y)) return y;
    }
    return std::nullopt;
  };
  while (true) {
    const IdSet& cur = out.chain.back();
    const IdSet dam = closure(s, join(a, cur));
    std::vector<ElemId> grow(cur.begin(), cur.end());
    for (ElemId x : dam) {
      if (in(n, x)) grow.push_back(x);
      if (s.sort_of(x) == Sort::O) {
        if (auto rep = class_in(x, n)) grow.push_back(*rep);
      }
    }
    IdSet next = closure(s, grow);
    if (next == cur) break;
    out.chain.push_back(std::move(next));
  }

  const IdSet& m = out.chain.back();
  const IdSet dam = closure(s, join(a, m));
  Report& r = out.report;
  r.subject = "local character chain";
  bool monotone = true;
  for (std::size_t i = 1; i < out.chain.size(); ++i) {
    monotone = monotone && std::includes(out.chain[i].begin(), out.chain[i].end(),
                                         out.chain[i - 1].begin(), out.chain[i - 1].end());
  }
  r.add("chain is increasing", monotone);
  std::string elem;
  std::string cls;
  for (ElemId x : dam) {
    if (elem.empty() && in(n, x) && !in(m, x)) elem = show(x);
    if (cls.empty() && s.sort_of(x) == Sort::O && class_in(x, n) && !class_in(x, m)) {
      cls = "class of " + show(s.class_rep(x));
    }
  }
  r.add("dcl(aM) ∩ N ⊆ M", elem.empty(), elem, "dcl(aM) ∩ N ⊆ M");
  r.add("dcl(aM)/E ∩ N/E ⊆ M/E", cls.empty(), cls, "dcl(aM)/E ∩ N/E ⊆ M/E");
  const Report ind = indep_star(s, a, n, m);
  r.add("a ⫝*_M N", ind.pass(), ind.pass() ? "" : ind.first_failure()->witness);
  r.add("steps to the fixed point", true, std::to_string(out.chain.size() - 1));
  return out;
}

}  // namespace kimlab
