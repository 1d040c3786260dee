#include "kimlab/embedding.hpp"

#include <algorithm>

#include "kimlab/errors.hpp"

namespace kimlab {

bool BaseMap::insert(ElemId from, ElemId to) {
  auto f = forward_.find(from);
  if (f != forward_.end()) return f->second == to;
  if (inverse_.count(to) != 0) return false;
  forward_.emplace(from, to);
  inverse_.emplace(to, from);
  return true;
}

std::optional<ElemId> BaseMap::at(ElemId from) const {
  auto it = forward_.find(from);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

bool is_embedding(const FinStructure& a, const FinStructure& b,
                  const BaseMap& map) {
  for (ElemId x : a.elements()) {
    auto y = map.at(x);
    if (!y || !b.contains(*y) || b.sort_of(*y) != a.sort_of(x)) return false;
  }
  if (map.size() != a.size()) return false;
  const auto& objs = a.objects();
  for (std::size_t i = 0; i < objs.size(); ++i) {
    for (std::size_t j = i + 1; j < objs.size(); ++j) {
      if (a.equivalent(objs[i], objs[j]) !=
          b.equivalent(*map.at(objs[i]), *map.at(objs[j]))) {
        return false;
      }
    }
  }
  bool ok = true;
  std::vector<ElemId> image(static_cast<std::size_t>(a.arity()));
  a.for_each_tuple([&](std::span<const ElemId> fs) {
    if (!ok) return;
    for (std::size_t k = 0; k < fs.size(); ++k) image[k] = *map.at(fs[k]);
    for (ElemId o : objs) {
      if (*map.at(a.eval(fs, o)) != b.eval(image, *map.at(o))) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

namespace {

class EmbeddingSearch {
 public:
  EmbeddingSearch(const FinStructure& a, const FinStructure& b,
                  const std::function<bool(const BaseMap&)>& visit)
      : a_(a), b_(b), visit_(visit) {
    order_.insert(order_.end(), a.functions().begin(), a.functions().end());
    order_.insert(order_.end(), a.objects().begin(), a.objects().end());
  }

  void run(BaseMap partial) {
    for (const auto& [from, to] : partial.pairs()) {
      if (!a_.contains(from) || !b_.contains(to) ||
          a_.sort_of(from) != b_.sort_of(to)) {
        return;
      }
    }
    map_ = std::move(partial);
    // Partial entries are checked as soon as their neighbours are placed.
    step(0);
  }

 private:
  // Consistency of the element order_[pos] with everything placed before.
  bool consistent(std::size_t pos) const {
    const ElemId x = order_[pos];
    const ElemId y = *map_.at(x);
    if (a_.sort_of(x) == Sort::F) return true;
    for (std::size_t i = a_.functions().size(); i < pos; ++i) {
      const ElemId p = order_[i];
      if (a_.equivalent(x, p) != b_.equivalent(y, *map_.at(p))) return false;
    }
    // All F-elements precede O-elements, so every tuple is mapped; check the
    // eval entries whose argument and value are both placed.
    bool ok = true;
    std::vector<ElemId> image(static_cast<std::size_t>(a_.arity()));
    a_.for_each_tuple([&](std::span<const ElemId> fs) {
      if (!ok) return;
      for (std::size_t k = 0; k < fs.size(); ++k) image[k] = *map_.at(fs[k]);
      for (std::size_t i = a_.functions().size(); i <= pos; ++i) {
        const ElemId o = order_[i];
        const ElemId v = a_.eval(fs, o);
        if (!placed(v)) continue;
        if (o != x && v != x) continue;
        if (*map_.at(v) != b_.eval(image, *map_.at(o))) {
          ok = false;
          return;
        }
      }
    });
    return ok;
  }

  bool placed(ElemId v) const { return map_.at(v).has_value(); }

  bool step(std::size_t pos) {
    if (pos == order_.size()) return visit_(map_);
    const ElemId x = order_[pos];
    if (map_.at(x)) {
      if (!consistent(pos)) return true;
      return step(pos + 1);
    }
    const auto& candidates =
        a_.sort_of(x) == Sort::F ? b_.functions() : b_.objects();
    for (ElemId y : candidates) {
      if (map_.contains_target(y)) continue;
      BaseMap saved = map_;
      map_.insert(x, y);
      if (consistent(pos) && !step(pos + 1)) return false;
      map_ = std::move(saved);
    }
    return true;
  }

  const FinStructure& a_;
  const FinStructure& b_;
  const std::function<bool(const BaseMap&)>& visit_;
  std::vector<ElemId> order_;
  BaseMap map_;
};

}  // namespace

void for_each_embedding(const FinStructure& a, const FinStructure& b,
                        const BaseMap& partial,
                        const std::function<bool(const BaseMap&)>& visit) {
  if (a.arity() != b.arity()) return;
  EmbeddingSearch search(a, b, visit);
  search.run(partial);
}

std::vector<BaseMap> find_embeddings(const FinStructure& a,
                                     const FinStructure& b,
                                     const BaseMap& partial) {
  std::vector<BaseMap> out;
  for_each_embedding(a, b, partial, [&](const BaseMap& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::optional<BaseMap> generated_isomorphism(const FinStructure& s1,
                                             std::span<const ElemId> gens1,
                                             const FinStructure& s2,
                                             std::span<const ElemId> gens2) {
  if (gens1.size() != gens2.size()) {
    throw DomainError("tuples of different length");
  }
  if (s1.arity() != s2.arity()) return std::nullopt;
  BaseMap map;
  for (std::size_t i = 0; i < gens1.size(); ++i) {
    if (s1.sort_of(gens1[i]) != s2.sort_of(gens2[i])) {
      throw DomainError("sort mismatch at tuple position " + std::to_string(i));
    }
    if (!map.insert(gens1[i], gens2[i])) return std::nullopt;
  }
  const IdSet g1 = closure(s1, gens1);
  const IdSet g2 = closure(s2, gens2);
  if (g1.size() != g2.size()) return std::nullopt;
  std::vector<ElemId> fs1, os1;
  for (ElemId x : make_id_set({gens1.begin(), gens1.end()})) {
    (s1.sort_of(x) == Sort::F ? fs1 : os1).push_back(x);
  }
  bool ok = true;
  std::vector<ElemId> image(static_cast<std::size_t>(s1.arity()));
  for_each_tuple_over(fs1, s1.arity(), [&](std::span<const ElemId> fs) {
    if (!ok) return;
    for (std::size_t k = 0; k < fs.size(); ++k) image[k] = *map.at(fs[k]);
    for (ElemId o : os1) {
      if (!map.insert(s1.eval(fs, o), s2.eval(image, *map.at(o)))) {
        ok = false;
        return;
      }
    }
  });
  if (!ok || map.size() != g1.size()) return std::nullopt;
  const FinStructure sub1 = restrict_to(s1, g1);
  const FinStructure sub2 = restrict_to(s2, g2);
  if (!is_embedding(sub1, sub2, map)) return std::nullopt;
  return map;
}

bool equal_type_over(std::span<const ElemId> c, std::span<const ElemId> a,
                     const FinStructure& s1, std::span<const ElemId> b,
                     const FinStructure& s2) {
  if (a.size() != b.size()) {
    throw DomainError("tuples of different length");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (s1.sort_of(a[i]) != s2.sort_of(b[i])) {
      throw DomainError("sort mismatch at tuple position " + std::to_string(i));
    }
  }
  std::vector<ElemId> g1(c.begin(), c.end());
  std::vector<ElemId> g2(c.begin(), c.end());
  g1.insert(g1.end(), a.begin(), a.end());
  g2.insert(g2.end(), b.begin(), b.end());
  const auto iso = generated_isomorphism(s1, g1, s2, g2);
  if (!iso) return false;
  if (&s1 == &s2) return true;
  // ⟨C⟩ must be fixed pointwise.
  for (ElemId x : closure(s1, c)) {
    if (iso->at(x) != x) return false;
  }
  return true;
}

bool equal_type_over(std::span<const ElemId> c, std::span<const ElemId> a,
                     std::span<const ElemId> b, const FinStructure& s) {
  return equal_type_over(c, a, s, b, s);
}

}  // namespace kimlab
