#include "kimlab/structure.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "kimlab/errors.hpp"

namespace kimlab {

IdSet make_id_set(std::vector<ElemId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

namespace {

std::string id_text(ElemId id) { return "e" + std::to_string(id.value); }

std::string tuple_text(std::span<const ElemId> fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i > 0) out += ',';
    out += id_text(fs[i]);
  }
  return out;
}

}  // namespace

void for_each_tuple_over(std::span<const ElemId> fs, int n,
                         const std::function<void(std::span<const ElemId>)>& fn) {
  if (fs.empty() || n <= 0) return;
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  std::vector<ElemId> tuple(static_cast<std::size_t>(n), fs[0]);
  while (true) {
    fn(tuple);
    int k = n - 1;
    while (k >= 0 && ++digits[k] == fs.size()) {
      digits[k] = 0;
      tuple[k] = fs[0];
      --k;
    }
    if (k < 0) return;
    tuple[k] = fs[digits[k]];
  }
}

// Assembles a structure from already-resolved data. `class_key` maps each
// O-element to an arbitrary key shared exactly by the members of its class;
// `value` returns eval for every F-tuple and O-element.
class StructureAssembler {
 public:
  static FinStructure assemble(
      int n, const std::vector<std::pair<ElemId, Sort>>& elems,
      const std::function<ElemId(ElemId)>& class_key,
      const std::function<ElemId(std::span<const ElemId>, ElemId)>& value) {
    FinStructure s(n);
    s.elems_.reserve(elems.size());
    for (const auto& [id, sort] : elems) {
      s.elems_.push_back(id);
      s.sorts_.push_back(sort);
      if (sort == Sort::O) {
        s.ordinal_.push_back(static_cast<std::uint32_t>(s.objects_.size()));
        s.objects_.push_back(id);
      } else {
        s.ordinal_.push_back(static_cast<std::uint32_t>(s.functions_.size()));
        s.functions_.push_back(id);
      }
    }
    for (std::size_t i = 1; i < s.elems_.size(); ++i) {
      if (!(s.elems_[i - 1] < s.elems_[i])) {
        throw DomainError("duplicate element id " + id_text(s.elems_[i]));
      }
    }
    // Classes numbered by least member; objects_ is ascending so the first
    // occurrence of each key is its least member.
    std::map<ElemId, std::uint32_t> key_to_class;
    s.class_of_.resize(s.objects_.size());
    for (std::size_t i = 0; i < s.objects_.size(); ++i) {
      const ElemId key = class_key(s.objects_[i]);
      auto [it, inserted] = key_to_class.emplace(
          key, static_cast<std::uint32_t>(s.class_members_.size()));
      if (inserted) s.class_members_.emplace_back();
      s.class_of_[i] = it->second;
      s.class_members_[it->second].push_back(s.objects_[i]);
    }
    const std::size_t num_objects = s.objects_.size();
    std::size_t tuples = s.functions_.empty() ? 0 : 1;
    for (int k = 0; k < n; ++k) tuples *= s.functions_.size();
    s.table_.assign(tuples * num_objects, 0);
    std::size_t t = 0;
    for_each_tuple_over(s.functions_, n, [&](std::span<const ElemId> fs) {
      for (std::size_t o = 0; o < num_objects; ++o) {
        const ElemId v = value(fs, s.objects_[o]);
        const std::size_t li = s.local(v);
        if (s.sorts_[li] != Sort::O) {
          throw DomainError("eval(" + tuple_text(fs) + ";" +
                            id_text(s.objects_[o]) + ") is not an O-element");
        }
        s.table_[t * num_objects + o] = s.ordinal_[li];
      }
      ++t;
    });
    return s;
  }
};

FinStructure::FinStructure(int n) : n_(n) {
  if (n < 1) throw DomainError("arity n must be at least 1");
}

std::size_t FinStructure::local(ElemId id) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), id);
  if (it == elems_.end() || *it != id) {
    throw DomainError("unknown element " + id_text(id));
  }
  return static_cast<std::size_t>(it - elems_.begin());
}

bool FinStructure::contains(ElemId id) const {
  return std::binary_search(elems_.begin(), elems_.end(), id);
}

Sort FinStructure::sort_of(ElemId id) const { return sorts_[local(id)]; }

std::size_t FinStructure::object_ordinal(ElemId o) const {
  const std::size_t li = local(o);
  if (sorts_[li] != Sort::O) {
    throw DomainError(id_text(o) + " is not an O-element");
  }
  return ordinal_[li];
}

std::size_t FinStructure::tuple_index(std::span<const ElemId> fs) const {
  if (fs.size() != static_cast<std::size_t>(n_)) {
    throw DomainError("eval expects " + std::to_string(n_) +
                      " function arguments, got " + std::to_string(fs.size()));
  }
  std::size_t index = 0;
  for (ElemId f : fs) {
    const std::size_t li = local(f);
    if (sorts_[li] != Sort::F) {
      throw DomainError(id_text(f) + " is not an F-element");
    }
    index = index * functions_.size() + ordinal_[li];
  }
  return index;
}

bool FinStructure::equivalent(ElemId a, ElemId b) const {
  return class_of_[object_ordinal(a)] == class_of_[object_ordinal(b)];
}

std::size_t FinStructure::class_index(ElemId o) const {
  return class_of_[object_ordinal(o)];
}

ElemId FinStructure::class_rep(ElemId o) const {
  return class_members_[class_index(o)].front();
}

ElemId FinStructure::eval(std::span<const ElemId> fs, ElemId o) const {
  const std::size_t t = tuple_index(fs);
  const std::size_t oi = object_ordinal(o);
  return objects_[table_[t * objects_.size() + oi]];
}

void FinStructure::for_each_tuple(
    const std::function<void(std::span<const ElemId>)>& fn) const {
  for_each_tuple_over(functions_, n_, fn);
}

ElemId FinStructure::next_free_id() const {
  return elems_.empty() ? ElemId{0} : ElemId{elems_.back().value + 1};
}

StructureBuilder::StructureBuilder(int n) : n_(n) {
  if (n < 1) throw DomainError("arity n must be at least 1");
}

StructureBuilder::StructureBuilder(const FinStructure& base)
    : StructureBuilder(base.arity()) {
  for (ElemId id : base.elements()) add(id, base.sort_of(id));
  for (std::size_t c = 0; c < base.num_classes(); ++c) {
    const auto& members = base.class_members_of(c);
    for (std::size_t i = 1; i < members.size(); ++i) {
      unite(members.front(), members[i]);
    }
  }
  base.for_each_tuple([&](std::span<const ElemId> fs) {
    std::vector<ElemId> tuple(fs.begin(), fs.end());
    for (std::size_t c = 0; c < base.num_classes(); ++c) {
      const auto& members = base.class_members_of(c);
      const ElemId v = base.eval(fs, members.front());
      class_entries_.push_back({{tuple, members.front()}, v});
      for (std::size_t i = 1; i < members.size(); ++i) {
        const ElemId w = base.eval(fs, members[i]);
        if (w != v) element_entries_[{tuple, members[i]}] = w;
      }
    }
  });
}

std::optional<Sort> StructureBuilder::sort_of(ElemId id) const {
  auto it = sorts_.find(id);
  if (it == sorts_.end()) return std::nullopt;
  return it->second;
}

StructureBuilder& StructureBuilder::add(ElemId id, Sort sort) {
  auto [it, inserted] = sorts_.emplace(id, sort);
  if (!inserted && it->second != sort) {
    throw DomainError("element " + id_text(id) + " declared with two sorts");
  }
  if (sort == Sort::O) parent_.emplace(id, id);
  return *this;
}

ElemId StructureBuilder::find(ElemId o) const {
  auto it = parent_.find(o);
  if (it == parent_.end()) {
    throw DomainError("E relates " + id_text(o) +
                      ", which is not a declared O-element");
  }
  ElemId root = o;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[o] != root) {
    const ElemId next = parent_[o];
    parent_[o] = root;
    o = next;
  }
  return root;
}

StructureBuilder& StructureBuilder::unite(ElemId a, ElemId b) {
  const ElemId ra = find(a);
  const ElemId rb = find(b);
  if (ra < rb) {
    parent_[rb] = ra;
  } else if (rb < ra) {
    parent_[ra] = rb;
  }
  return *this;
}

StructureBuilder& StructureBuilder::set_eval(std::vector<ElemId> fs, ElemId o,
                                             ElemId value) {
  element_entries_[{std::move(fs), o}] = value;
  return *this;
}

StructureBuilder& StructureBuilder::set_eval_class(std::vector<ElemId> fs,
                                                   ElemId o, ElemId value) {
  class_entries_.push_back({{std::move(fs), o}, value});
  return *this;
}

FinStructure StructureBuilder::build() const {
  std::vector<std::pair<ElemId, Sort>> elems(sorts_.begin(), sorts_.end());
  auto check_entry = [&](const std::vector<ElemId>& fs, ElemId o) {
    if (fs.size() != static_cast<std::size_t>(n_)) {
      throw DomainError("eval entry with " + std::to_string(fs.size()) +
                        " function arguments, expected " + std::to_string(n_));
    }
    for (ElemId f : fs) {
      if (sort_of(f) != Sort::F) {
        throw DomainError("eval entry uses " + id_text(f) +
                          " as a function, but it is not an F-element");
      }
    }
    if (sort_of(o) != Sort::O) {
      throw DomainError("eval entry applied to " + id_text(o) +
                        ", which is not an O-element");
    }
  };
  std::map<std::pair<std::vector<ElemId>, ElemId>, ElemId> by_class;
  for (const auto& [key, v] : class_entries_) {
    check_entry(key.first, key.second);
    const ElemId root = find(key.second);
    auto [it, inserted] = by_class.emplace(std::make_pair(key.first, root), v);
    if (!inserted && it->second != v) {
      throw ConstructionError(
          "conflicting class values for eval(" + tuple_text(key.first) + ";" +
          id_text(key.second) + "): " + id_text(it->second) + " vs " +
          id_text(v));
    }
  }
  for (const auto& [key, v] : element_entries_) check_entry(key.first, key.second);
  return StructureAssembler::assemble(
      n_, elems, [&](ElemId o) { return find(o); },
      [&](std::span<const ElemId> fs, ElemId o) {
        std::vector<ElemId> tuple(fs.begin(), fs.end());
        auto key = std::make_pair(tuple, o);
        if (auto it = element_entries_.find(key); it != element_entries_.end()) {
          return it->second;
        }
        key.second = find(o);
        if (auto it = by_class.find(key); it != by_class.end()) return it->second;
        return key.second;
      });
}

Report validate(const FinStructure& s) {
  Report report;
  report.subject = "T_" + std::to_string(s.arity()) + " axioms";
  report.add("sorts partition the universe", true, {}, "O ∩ F = ∅, O ∪ F = universe");
  report.add("E is an equivalence relation on O", true, {}, "E ⊆ O×O");
  std::string in_class_witness;
  std::string constant_witness;
  s.for_each_tuple([&](std::span<const ElemId> fs) {
    for (ElemId b : s.objects()) {
      const ElemId v = s.eval(fs, b);
      if (in_class_witness.empty() && !s.equivalent(v, b)) {
        std::ostringstream w;
        w << "eval(" << tuple_text(fs) << ";" << id_text(b) << ") = " << id_text(v)
          << " is not E-equivalent to " << id_text(b);
        in_class_witness = w.str();
      }
      const ElemId b0 = s.class_rep(b);
      if (constant_witness.empty() && s.eval(fs, b0) != v) {
        std::ostringstream w;
        w << "E(" << id_text(b0) << "," << id_text(b) << ") but eval("
          << tuple_text(fs) << ";" << id_text(b0) << ") = " << id_text(s.eval(fs, b0))
          << " differs from eval(" << tuple_text(fs) << ";" << id_text(b)
          << ") = " << id_text(v);
        constant_witness = w.str();
      }
    }
  });
  report.add("eval(f̄;-) stays inside E-classes", in_class_witness.empty(),
             in_class_witness, "E(eval(f̄;b), b)");
  report.add("eval(f̄;-) is constant on E-classes", constant_witness.empty(),
             constant_witness, "E(b,b') → eval(f̄;b) = eval(f̄;b')");
  return report;
}

IdSet closure(const FinStructure& s, std::span<const ElemId> x) {
  IdSet result = make_id_set(std::vector<ElemId>(x.begin(), x.end()));
  std::vector<ElemId> fs;
  for (ElemId id : result) {
    if (s.sort_of(id) == Sort::F) fs.push_back(id);
  }
  while (true) {
    std::vector<ElemId> objects;
    for (ElemId id : result) {
      if (s.sort_of(id) == Sort::O) objects.push_back(id);
    }
    std::vector<ElemId> grown = result;
    for_each_tuple_over(fs, s.arity(), [&](std::span<const ElemId> tuple) {
      for (ElemId o : objects) grown.push_back(s.eval(tuple, o));
    });
    grown = make_id_set(std::move(grown));
    if (grown.size() == result.size()) return result;
    result = std::move(grown);
  }
}

FinStructure restrict_to(const FinStructure& s, std::span<const ElemId> ids) {
  IdSet set = make_id_set(std::vector<ElemId>(ids.begin(), ids.end()));
  std::vector<std::pair<ElemId, Sort>> elems;
  elems.reserve(set.size());
  for (ElemId id : set) elems.emplace_back(id, s.sort_of(id));
  return StructureAssembler::assemble(
      s.arity(), elems,
      [&](ElemId o) {
        // Least member of the class within the restriction.
        for (ElemId m : s.class_members_of(s.class_index(o))) {
          if (std::binary_search(set.begin(), set.end(), m)) return m;
        }
        return o;
      },
      [&](std::span<const ElemId> fs, ElemId o) {
        const ElemId v = s.eval(fs, o);
        if (!std::binary_search(set.begin(), set.end(), v)) {
          throw DomainError("restriction is not closed: eval(" + tuple_text(fs) +
                            ";" + id_text(o) + ") = " + id_text(v));
        }
        return v;
      });
}

FinStructure generated_substructure(const FinStructure& s,
                                    std::span<const ElemId> x) {
  const IdSet ids = closure(s, x);
  return restrict_to(s, ids);
}

IdSet class_reps(const FinStructure& s, std::span<const ElemId> x) {
  std::vector<ElemId> reps;
  reps.reserve(x.size());
  for (ElemId o : x) reps.push_back(s.class_rep(o));
  return make_id_set(std::move(reps));
}

std::uint64_t generation_bound(std::uint64_t k, int n) {
  std::uint64_t p = k;
  for (int i = 0; i < n; ++i) p *= k;
  return p + k;
}

FinStructure relabel(const FinStructure& s,
                     const std::function<ElemId(ElemId)>& rename) {
  std::unordered_map<ElemId, ElemId> back;
  std::vector<std::pair<ElemId, Sort>> elems;
  for (ElemId id : s.elements()) {
    const ElemId to = rename(id);
    if (!back.emplace(to, id).second) {
      throw DomainError("relabel is not injective at " + id_text(to));
    }
    elems.emplace_back(to, s.sort_of(id));
  }
  std::sort(elems.begin(), elems.end());
  return StructureAssembler::assemble(
      s.arity(), elems,
      [&](ElemId o) { return rename(s.class_rep(back.at(o))); },
      [&](std::span<const ElemId> fs, ElemId o) {
        std::vector<ElemId> old(fs.size());
        for (std::size_t i = 0; i < fs.size(); ++i) old[i] = back.at(fs[i]);
        return rename(s.eval(old, back.at(o)));
      });
}

}  // namespace kimlab
