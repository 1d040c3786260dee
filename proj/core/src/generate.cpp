#include "kimlab/generate.hpp"

#include <optional>

#include "kimlab/errors.hpp"

namespace kimlab {

std::size_t uniform_below(Rng& rng, std::size_t bound) {
  if (bound == 0) throw DomainError("uniform_below: empty range");
  std::uniform_int_distribution<std::size_t> dist(0, bound - 1);
  return dist(rng);
}

FinStructure random_structure(const RandomShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  return random_structure(shape, rng);
}

FinStructure random_structure(const RandomShape& shape, Rng& rng) {
  if (shape.classes > shape.objects) {
    throw DomainError("more classes than O-elements");
  }
  if (shape.classes == 0 && shape.objects > 0) {
    throw DomainError("O-elements need at least one class");
  }
  StructureBuilder b(shape.n);
  std::vector<std::vector<ElemId>> classes(shape.classes);
  for (std::size_t i = 0; i < shape.objects; ++i) {
    const ElemId id{static_cast<std::uint32_t>(i)};
    b.add(id, Sort::O);
    const std::size_t c = i < shape.classes ? i : uniform_below(rng, shape.classes);
    if (!classes[c].empty()) b.unite(classes[c].front(), id);
    classes[c].push_back(id);
  }
  std::vector<ElemId> fs;
  for (std::size_t j = 0; j < shape.functions; ++j) {
    const ElemId id{static_cast<std::uint32_t>(shape.objects + j)};
    b.add(id, Sort::F);
    fs.push_back(id);
  }
  for_each_tuple_over(fs, shape.n, [&](std::span<const ElemId> tuple) {
    for (const auto& members : classes) {
      const ElemId v = members[uniform_below(rng, members.size())];
      b.set_eval_class({tuple.begin(), tuple.end()}, members.front(), v);
    }
  });
  return b.build();
}

FinStructure random_extension(const FinStructure& base,
                              std::size_t extra_objects,
                              std::size_t extra_functions, Rng& rng,
                              std::optional<ElemId> first_id) {
  StructureBuilder b(base);
  std::uint32_t next = first_id ? first_id->value : base.next_free_id().value;
  // Class representatives: existing classes first, then fresh ones.
  std::vector<std::vector<ElemId>> classes;
  for (std::size_t c = 0; c < base.num_classes(); ++c) {
    classes.push_back(base.class_members_of(c));
  }
  const std::size_t old_classes = classes.size();
  for (std::size_t i = 0; i < extra_objects; ++i) {
    const ElemId id{next++};
    b.add(id, Sort::O);
    const std::size_t c = uniform_below(rng, classes.size() + 1);
    if (c == classes.size()) {
      classes.push_back({id});
    } else {
      b.unite(classes[c].front(), id);
      classes[c].push_back(id);
    }
  }
  std::vector<ElemId> all_fs(base.functions().begin(), base.functions().end());
  for (std::size_t j = 0; j < extra_functions; ++j) {
    const ElemId id{next++};
    b.add(id, Sort::F);
    all_fs.push_back(id);
  }
  for_each_tuple_over(all_fs, base.arity(), [&](std::span<const ElemId> tuple) {
    bool old_tuple = true;
    for (ElemId f : tuple) old_tuple = old_tuple && base.contains(f);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (old_tuple && c < old_classes) continue;  // fixed by the base
      const auto& members = classes[c];
      b.set_eval_class({tuple.begin(), tuple.end()}, members.front(),
                       members[uniform_below(rng, members.size())]);
    }
  });
  return b.build();
}

void for_each_partition(
    std::size_t k,
    const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> rgs(k, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                           std::size_t blocks) {
    if (i == k) {
      visit(rgs);
      return;
    }
    for (std::size_t c = 0; c <= blocks; ++c) {
      rgs[i] = c;
      rec(i + 1, c == blocks ? blocks + 1 : blocks);
    }
  };
  rec(0, 0);
}

bool enumerate_structures(int n, std::size_t size,
                          const std::function<bool(const FinStructure&)>& visit) {
  bool keep_going = true;
  for (std::size_t objects = 0; objects <= size && keep_going; ++objects) {
    const std::size_t functions = size - objects;
    std::vector<ElemId> fs;
    for (std::size_t j = 0; j < functions; ++j) {
      fs.push_back(ElemId{static_cast<std::uint32_t>(objects + j)});
    }
    std::size_t tuples = functions == 0 ? 0 : 1;
    for (int k = 0; k < n; ++k) tuples *= functions;
    std::vector<std::vector<ElemId>> tuple_list;
    for_each_tuple_over(fs, n, [&](std::span<const ElemId> t) {
      tuple_list.emplace_back(t.begin(), t.end());
    });
    for_each_partition(objects, [&](const std::vector<std::size_t>& rgs) {
      if (!keep_going) return;
      std::vector<std::vector<ElemId>> classes;
      for (std::size_t i = 0; i < objects; ++i) {
        if (rgs[i] == classes.size()) classes.emplace_back();
        classes[rgs[i]].push_back(ElemId{static_cast<std::uint32_t>(i)});
      }
      // Mixed-radix counter over (tuple, class) -> member choice.
      std::vector<std::size_t> choice(tuples * classes.size(), 0);
      while (keep_going) {
        StructureBuilder b(n);
        for (std::size_t i = 0; i < objects; ++i) {
          b.add(ElemId{static_cast<std::uint32_t>(i)}, Sort::O);
        }
        for (ElemId f : fs) b.add(f, Sort::F);
        for (const auto& members : classes) {
          for (std::size_t i = 1; i < members.size(); ++i) {
            b.unite(members.front(), members[i]);
          }
        }
        for (std::size_t t = 0; t < tuples; ++t) {
          for (std::size_t c = 0; c < classes.size(); ++c) {
            b.set_eval_class(tuple_list[t], classes[c].front(),
                             classes[c][choice[t * classes.size() + c]]);
          }
        }
        keep_going = visit(b.build());
        std::size_t pos = 0;
        while (pos < choice.size()) {
          const std::size_t radix = classes[pos % classes.size()].size();
          if (++choice[pos] < radix) break;
          choice[pos] = 0;
          ++pos;
        }
        if (pos == choice.size()) break;
      }
    });
  }
  return keep_going;
}

}  // namespace kimlab
