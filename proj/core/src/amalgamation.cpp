#include "kimlab/amalgamation.hpp"

#include <algorithm>
#include <sstream>

#include "kimlab/embedding.hpp"
#include "kimlab/errors.hpp"
#include "kimlab/generate.hpp"

namespace kimlab {
namespace {

std::string show(ElemId id) { return "e" + std::to_string(id.value); }

bool is_substructure(const FinStructure& sub, const FinStructure& s,
                     std::string& why) {
  for (ElemId id : sub.elements()) {
    if (!s.contains(id)) {
      why = show(id) + " is missing";
      return false;
    }
    if (s.sort_of(id) != sub.sort_of(id)) {
      why = show(id) + " changes sort";
      return false;
    }
  }
  try {
    if (restrict_to(s, sub.elements()) != sub) {
      why = "induced structure differs";
      return false;
    }
  } catch (const DomainError& e) {
    why = e.what();
    return false;
  }
  return true;
}

IdSet ids_union(const IdSet& x, const IdSet& y) {
  IdSet out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

IdSet ids_intersection(const IdSet& x, const IdSet& y) {
  IdSet out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                        std::back_inserter(out));
  return out;
}

bool subset_of(std::span<const ElemId> xs, const FinStructure& s) {
  return std::all_of(xs.begin(), xs.end(), [&](ElemId x) { return s.contains(x); });
}

}  // namespace

Report check_amalgam_input(const FinStructure& a, const FinStructure& b,
                           const FinStructure& c) {
  Report r;
  r.subject = "amalgamation input";
  r.add("arities agree", a.arity() == b.arity() && b.arity() == c.arity(),
        "n = " + std::to_string(a.arity()) + ", " + std::to_string(b.arity()) +
            ", " + std::to_string(c.arity()));
  if (!r.pass()) return r;
  std::string why;
  r.add("A is a substructure of B", is_substructure(a, b, why), why);
  why.clear();
  r.add("A is a substructure of C", is_substructure(a, c, why), why);
  const IdSet common = ids_intersection(b.elements(), c.elements());
  std::string extra;
  for (ElemId id : common) {
    if (!a.contains(id)) {
      extra = show(id) + " lies in B ∩ C but not in A";
      break;
    }
  }
  r.add("ids(B) ∩ ids(C) = ids(A)", extra.empty(), extra);
  return r;
}

FinStructure strong_amalgam(const FinStructure& a, const FinStructure& b,
                            const FinStructure& c) {
  const Report pre = check_amalgam_input(a, b, c);
  if (!pre.pass()) {
    const Check* f = pre.first_failure();
    throw PreconditionError("strong_amalgam: " + f->name +
                            (f->witness.empty() ? "" : " (" + f->witness + ")"));
  }
  const int n = b.arity();
  StructureBuilder builder(n);
  for (const FinStructure* s : {&b, &c}) {
    for (ElemId id : s->elements()) builder.add(id, s->sort_of(id));
    for (std::size_t k = 0; k < s->num_classes(); ++k) {
      const auto& m = s->class_members_of(k);
      for (std::size_t i = 1; i < m.size(); ++i) builder.unite(m.front(), m[i]);
    }
  }
  // D-classes keyed by their union-find root, with members ascending.
  const IdSet objects = ids_union(b.objects(), c.objects());
  std::map<ElemId, IdSet> classes;
  for (ElemId o : objects) classes[builder.find(o)].push_back(o);

  const IdSet functions = ids_union(b.functions(), c.functions());
  for_each_tuple_over(functions, n, [&](std::span<const ElemId> fs) {
    const bool in_b = subset_of(fs, b);
    const bool in_c = subset_of(fs, c);
    for (const auto& [root, members] : classes) {
      std::optional<ElemId> from_b;
      std::optional<ElemId> from_c;
      for (ElemId m : members) {
        if (in_b && !from_b && b.contains(m)) from_b = b.eval(fs, m);
        if (in_c && !from_c && c.contains(m)) from_c = c.eval(fs, m);
      }
      if (from_b && from_c && *from_b != *from_c) {
        std::ostringstream w;
        w << "B and C disagree on a tuple over the class of " << show(root) << ": "
          << show(*from_b) << " vs " << show(*from_c);
        throw ConstructionError(w.str());
      }
      const ElemId v = from_b ? *from_b : (from_c ? *from_c : members.front());
      builder.set_eval_class(std::vector<ElemId>(fs.begin(), fs.end()), root, v);
    }
  });
  return builder.build();
}

JointEmbedding joint_embed_with_map(const FinStructure& b, const FinStructure& c) {
  if (b.arity() != c.arity()) {
    throw DomainError("joint_embed: arities " + std::to_string(b.arity()) + " and " +
                      std::to_string(c.arity()) + " differ");
  }
  JointEmbedding out{FinStructure(b.arity()), {}};
  const bool overlap = !ids_intersection(b.elements(), c.elements()).empty();
  const std::uint32_t shift = overlap ? b.next_free_id().value : 0;
  for (ElemId id : c.elements()) out.c_map[id] = ElemId{id.value + shift};
  const FinStructure c2 =
      overlap ? relabel(c, [&](ElemId id) { return ElemId{id.value + shift}; }) : c;
  out.d = strong_amalgam(FinStructure(b.arity()), b, c2);
  return out;
}

FinStructure joint_embed(const FinStructure& b, const FinStructure& c) {
  return joint_embed_with_map(b, c).d;
}

Report check_amalgam(const FinStructure& a, const FinStructure& b,
                     const FinStructure& c, const FinStructure& d) {
  Report r;
  r.subject = "amalgam";
  const Report v = validate(d);
  r.add("D is a model of T_n", v.pass(), v.pass() ? "" : v.first_failure()->witness);
  r.add("ids(D) = ids(B) ∪ ids(C)",
        d.elements() == ids_union(b.elements(), c.elements()));
  if (!r.pass()) return r;
  r.add("D|B = B", restrict_to(d, b.elements()) == b);
  r.add("D|C = C", restrict_to(d, c.elements()) == c);
  std::string link;
  for (ElemId x : b.objects()) {
    if (c.contains(x)) continue;
    for (ElemId y : c.objects()) {
      if (b.contains(y) || !d.equivalent(x, y)) continue;
      const bool through_a =
          std::any_of(a.objects().begin(), a.objects().end(),
                      [&](ElemId z) { return d.equivalent(x, z); });
      if (!through_a) {
        link = "E(" + show(x) + "," + show(y) + ") with no witness in A";
        break;
      }
    }
    if (!link.empty()) break;
  }
  r.add("E^D-links between B and C pass through A", link.empty(), link,
        "b ∈ B, c ∈ C, E(b,c) → ∃a ∈ A: E(b,a)");
  return r;
}

namespace {

struct Tally {
  std::uint64_t structures = 0;
  std::uint64_t hp = 0;
  std::uint64_t jep = 0;
  std::uint64_t sap = 0;
  std::string failure_name;
  std::string failure;

  bool failed() const { return !failure.empty(); }
  void fail(std::string name, std::string what) {
    if (failed()) return;
    failure_name = std::move(name);
    failure = std::move(what);
  }
};

std::string dump(const FinStructure& s) {
  std::ostringstream out;
  out << "n=" << s.arity() << " O={";
  for (std::size_t i = 0; i < s.objects().size(); ++i) {
    out << (i ? "," : "") << show(s.objects()[i]);
  }
  out << "} F={";
  for (std::size_t i = 0; i < s.functions().size(); ++i) {
    out << (i ? "," : "") << show(s.functions()[i]);
  }
  out << "} classes=[";
  for (std::size_t k = 0; k < s.num_classes(); ++k) {
    out << (k ? " " : "") << "{";
    const auto& m = s.class_members_of(k);
    for (std::size_t i = 0; i < m.size(); ++i) out << (i ? "," : "") << show(m[i]);
    out << "}";
  }
  out << "] eval=[";
  bool first = true;
  s.for_each_tuple([&](std::span<const ElemId> fs) {
    for (ElemId o : s.objects()) {
      out << (first ? "" : " ");
      first = false;
      for (ElemId f : fs) out << show(f) << ",";
      out << show(o) << "->" << show(s.eval(fs, o));
    }
  });
  out << "]";
  return out.str();
}

// Validity, HP and the generation bound over every subset of the universe.
void check_single(const FinStructure& s, Tally& t) {
  ++t.structures;
  const Report v = validate(s);
  if (!v.pass()) {
    t.fail("corpus member is a model of T_n",
           v.first_failure()->witness + " in " + dump(s));
    return;
  }
  const auto& elems = s.elements();
  const std::size_t count = elems.size();
  if (count > 16) throw DomainError("structure too large for subset enumeration");
  for (std::uint32_t mask = 0; mask < (1u << count); ++mask) {
    std::vector<ElemId> x;
    for (std::size_t i = 0; i < count; ++i) {
      if (mask & (1u << i)) x.push_back(elems[i]);
    }
    const IdSet gen = closure(s, x);
    const FinStructure sub = restrict_to(s, gen);
    ++t.hp;
    if (!validate(sub).pass()) {
      t.fail("HP: generated substructures are in K_n", dump(sub));
      return;
    }
    if (gen.size() > generation_bound(x.size(), s.arity())) {
      t.fail("|⟨X⟩| ≤ |X|^{n+1} + |X|",
             "|X| = " + std::to_string(x.size()) + ", |⟨X⟩| = " +
                 std::to_string(gen.size()) + " in " + dump(s));
      return;
    }
  }
}

void check_jep(const FinStructure& b, const FinStructure& c, Tally& t) {
  ++t.jep;
  const JointEmbedding je = joint_embed_with_map(b, c);
  BaseMap bm;
  for (ElemId id : b.elements()) bm.insert(id, id);
  BaseMap cm;
  for (const auto& [from, to] : je.c_map) cm.insert(from, to);
  if (!validate(je.d).pass() || !is_embedding(b, je.d, bm) ||
      !is_embedding(c, je.d, cm)) {
    t.fail("JEP", dump(b) + " and " + dump(c));
  }
}

void check_sap(const FinStructure& a, const FinStructure& b, const FinStructure& c,
               Tally& t) {
  ++t.sap;
  FinStructure d(a.arity());
  try {
    d = strong_amalgam(a, b, c);
  } catch (const Error& e) {
    t.fail("SAP", std::string(e.what()) + " for A=" + dump(a) + " B=" + dump(b) +
                      " C=" + dump(c));
    return;
  }
  const Report r = check_amalgam(a, b, c, d);
  if (!r.pass()) {
    t.fail("SAP: " + r.first_failure()->name,
           r.first_failure()->witness + " for A=" + dump(a) + " B=" + dump(b) +
               " C=" + dump(c));
  }
}

// For every closed A ⊆ B and every embedding e : A -> C, amalgamate B with
// a copy of C in which e(a) is renamed a and the rest moved past B's ids.
void check_sap_all(const FinStructure& b, const FinStructure& c, Tally& t) {
  const auto& elems = b.elements();
  const std::size_t count = elems.size();
  for (std::uint32_t mask = 0; mask < (1u << count) && !t.failed(); ++mask) {
    std::vector<ElemId> x;
    for (std::size_t i = 0; i < count; ++i) {
      if (mask & (1u << i)) x.push_back(elems[i]);
    }
    if (closure(b, x).size() != x.size()) continue;
    const FinStructure a = restrict_to(b, x);
    for (const BaseMap& e : find_embeddings(a, c)) {
      std::map<ElemId, ElemId> rename;
      for (const auto& [from, to] : e.pairs()) rename[to] = from;
      std::uint32_t next = std::max(b.next_free_id().value, c.next_free_id().value);
      for (ElemId id : c.elements()) {
        if (!rename.count(id)) rename[id] = ElemId{next++};
      }
      const FinStructure c2 = relabel(c, [&](ElemId id) { return rename.at(id); });
      check_sap(a, b, c2, t);
      if (t.failed()) return;
    }
  }
}

Report finish(Tally& t, const std::string& subject) {
  Report r;
  r.subject = subject;
  r.add("structures checked", t.structures > 0, std::to_string(t.structures));
  if (t.failed()) {
    r.add(t.failure_name, false, t.failure);
    return r;
  }
  r.add("HP: every generated substructure is in K_n", true,
        std::to_string(t.hp) + " subsets", "⟨X⟩ ∈ K_n");
  r.add("|⟨X⟩| ≤ |X|^{n+1} + |X|", true, std::to_string(t.hp) + " subsets",
        "|⟨X⟩| ≤ k^{n+1} + k");
  r.add("JEP via joint_embed", true, std::to_string(t.jep) + " pairs");
  r.add("SAP via strong_amalgam", true, std::to_string(t.sap) + " amalgams",
        "B ⊗_A C ∈ K_n, strong");
  return r;
}

}  // namespace

Report check_fraisse_corpus(const std::vector<FinStructure>& corpus) {
  Tally t;
  for (const auto& s : corpus) {
    check_single(s, t);
    if (t.failed()) return finish(t, "Fraïssé properties (corpus)");
  }
  for (const auto& b : corpus) {
    for (const auto& c : corpus) {
      if (b.arity() != c.arity()) continue;
      check_jep(b, c, t);
      if (!t.failed()) check_sap_all(b, c, t);
      if (t.failed()) return finish(t, "Fraïssé properties (corpus)");
    }
  }
  return finish(t, "Fraïssé properties (corpus)");
}

Report check_fraisse(const FraisseOptions& o) {
  if (o.n < 1) throw DomainError("arity n must be at least 1");
  if (o.mode == FraisseMode::Exhaustive) {
    if (o.cap > 4) throw DomainError("exhaustive Fraïssé check supports cap ≤ 4");
    std::vector<FinStructure> corpus;
    for (std::size_t size = 0; size <= o.cap; ++size) {
      enumerate_structures(o.n, size, [&](const FinStructure& s) {
        corpus.push_back(s);
        return true;
      });
    }
    Report r = check_fraisse_corpus(corpus);
    r.subject = "Fraïssé properties of K_" + std::to_string(o.n) +
                " (exhaustive, size ≤ " + std::to_string(o.cap) + ")";
    return r;
  }

  Rng rng(o.seed);
  Tally t;
  auto random_member = [&](std::size_t max_size) {
    const std::size_t size = uniform_below(rng, max_size + 1);
    RandomShape shape;
    shape.n = o.n;
    shape.objects = size == 0 ? 0 : uniform_below(rng, size + 1);
    shape.functions = size - shape.objects;
    shape.classes = shape.objects == 0 ? 0 : 1 + uniform_below(rng, shape.objects);
    return random_structure(shape, rng);
  };
  for (std::uint64_t i = 0; i < o.samples && !t.failed(); ++i) {
    const FinStructure b = random_member(o.cap);
    check_single(b, t);
    if (t.failed()) break;
    // JEP against an independent sample.
    check_jep(b, random_member(o.cap), t);
    if (t.failed()) break;
    // SAP: a generated A ⊆ B and a random extension C of A with ids past B.
    std::vector<ElemId> x;
    for (ElemId id : b.elements()) {
      if (uniform_below(rng, 2) == 0) x.push_back(id);
    }
    const FinStructure a = restrict_to(b, closure(b, x));
    const std::size_t room = o.cap > a.size() ? o.cap - a.size() : 0;
    const std::size_t extra = room == 0 ? 0 : uniform_below(rng, room + 1);
    const std::size_t extra_o = extra == 0 ? 0 : uniform_below(rng, extra + 1);
    const FinStructure c = random_extension(a, extra_o, extra - extra_o, rng,
                                            b.next_free_id());
    check_sap(a, b, c, t);
  }
  Report r = finish(t, "Fraïssé properties of K_" + std::to_string(o.n) +
                           " (random, " + std::to_string(o.samples) +
                           " samples, size ≤ " + std::to_string(o.cap) + ")");
  return r;
}

}  // namespace kimlab
