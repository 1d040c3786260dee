#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "kimlab/embedding.hpp"
#include "kimlab/errors.hpp"
#include "kimlab/generate.hpp"
#include "kimlab/scenarios.hpp"
#include "kimlab/structure.hpp"
#include "support/brute_embeddings.hpp"

namespace kimlab {
namespace {

constexpr ElemId id(std::uint32_t v) { return ElemId{v}; }

// Two classes {0,1} and {2}; F = {3}; eval(3; {0,1}) = 1.
FinStructure small() {
  StructureBuilder b(1);
  b.add(id(0), Sort::O).add(id(1), Sort::O).add(id(2), Sort::O).add(id(3), Sort::F);
  b.unite(id(0), id(1));
  b.set_eval_class({id(3)}, id(0), id(1));
  return b.build();
}

TEST(Validate, SinglePointWithoutFunctions) {
  StructureBuilder b(1);
  b.add(id(0), Sort::O);
  EXPECT_TRUE(validate(b.build()).pass());
}

TEST(Validate, EvalLeavingTheClassIsNamed) {
  StructureBuilder b(1);
  b.add(id(0), Sort::O).add(id(1), Sort::O).add(id(5), Sort::F);
  b.set_eval({id(5)}, id(0), id(1));
  const Report r = validate(b.build());
  ASSERT_FALSE(r.pass());
  EXPECT_NE(r.first_failure()->witness.find("eval(e5;e0)"), std::string::npos)
      << r.first_failure()->witness;
}

TEST(Validate, EvalNotConstantOnAClass) {
  StructureBuilder b(1);
  b.add(id(0), Sort::O).add(id(1), Sort::O).add(id(5), Sort::F).unite(id(0), id(1));
  b.set_eval({id(5)}, id(0), id(1)).set_eval({id(5)}, id(1), id(0));
  EXPECT_FALSE(validate(b.build()).pass());
}

TEST(Validate, TransitivityStructureIsAModel) {
  EXPECT_TRUE(validate(transitivity_model().s).pass());
}

TEST(Builder, DefaultsToClassRepresentative) {
  const FinStructure s = small();
  const ElemId f[] = {id(3)};
  EXPECT_EQ(s.eval(f, id(0)), id(1));
  EXPECT_EQ(s.eval(f, id(1)), id(1));
  EXPECT_EQ(s.eval(f, id(2)), id(2));
  EXPECT_EQ(s.num_classes(), 2u);
  EXPECT_EQ(s.class_rep(id(1)), id(0));
}

TEST(Builder, RejectsSortClash) {
  StructureBuilder b(1);
  b.add(id(0), Sort::O);
  EXPECT_THROW(b.add(id(0), Sort::F), DomainError);
}

TEST(Closure, ClosedSetIsFixed) {
  const FinStructure s = small();
  const IdSet all = s.elements();
  EXPECT_EQ(closure(s, all), all);
}

TEST(Closure, SingleStepForArityOne) {
  // eval(f; o) = p with p outside X.
  StructureBuilder b(1);
  b.add(id(0), Sort::O).add(id(1), Sort::O).add(id(2), Sort::F).unite(id(0), id(1));
  b.set_eval_class({id(2)}, id(0), id(1));
  const FinStructure s = b.build();
  const ElemId x[] = {id(0), id(2)};
  EXPECT_EQ(closure(s, x), make_id_set({id(0), id(1), id(2)}));
  const FinStructure g = generated_substructure(s, x);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_TRUE(validate(g).pass());
}

TEST(Closure, GenerationBoundOnRandomStructures) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    RandomShape shape;
    shape.n = 1 + i % 2;
    shape.objects = 1 + uniform_below(rng, 8);
    shape.functions = uniform_below(rng, 5);
    shape.classes = 1 + uniform_below(rng, shape.objects);
    const FinStructure s = random_structure(shape, rng);
    std::vector<ElemId> pool(s.elements().begin(), s.elements().end());
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min<std::size_t>(pool.size(), 1 + uniform_below(rng, 4)));
    EXPECT_LE(closure(s, pool).size(), generation_bound(pool.size(), shape.n));
  }
}

TEST(Closure, IsAClosureOperator) {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    RandomShape shape{1 + i % 2, 1 + uniform_below(rng, 6), uniform_below(rng, 4), 0};
    shape.classes = 1 + uniform_below(rng, shape.objects);
    const FinStructure s = random_structure(shape, rng);
    std::vector<ElemId> y(s.elements().begin(), s.elements().end());
    std::shuffle(y.begin(), y.end(), rng);
    y.resize(uniform_below(rng, y.size() + 1));
    std::vector<ElemId> x(y.begin(), y.begin() + uniform_below(rng, y.size() + 1));
    const IdSet cx = closure(s, x);
    const IdSet cy = closure(s, y);
    const IdSet xs = make_id_set(x);
    EXPECT_TRUE(std::includes(cx.begin(), cx.end(), xs.begin(), xs.end()));
    EXPECT_TRUE(std::includes(cy.begin(), cy.end(), cx.begin(), cx.end()));
    EXPECT_EQ(closure(s, cx), cx);
  }
}

TEST(RestrictTo, RejectsOpenSets) {
  const FinStructure s = small();
  const ElemId x[] = {id(0), id(3)};
  EXPECT_THROW(restrict_to(s, x), DomainError);
  const ElemId unknown[] = {id(9)};
  EXPECT_THROW(closure(s, unknown), DomainError);
}

TEST(ClassReps, Examples) {
  const FinStructure s = small();
  const ElemId one[] = {id(1)};
  EXPECT_EQ(class_reps(s, one), IdSet{id(0)});
  EXPECT_EQ(class_reps(s, s.objects()), make_id_set({id(0), id(2)}));
  const ElemId f[] = {id(3)};
  EXPECT_THROW(class_reps(s, f), DomainError);
}

TEST(ClassReps, AgreeWithPartitionScan) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    RandomShape shape{1, 1 + uniform_below(rng, 8), uniform_below(rng, 3), 0};
    shape.classes = 1 + uniform_below(rng, shape.objects);
    const FinStructure s = random_structure(shape, rng);
    std::vector<ElemId> x;
    for (ElemId o : s.objects()) {
      if (uniform_below(rng, 2) == 0) x.push_back(o);
    }
    IdSet expected;
    for (ElemId o : x) {
      ElemId least = o;
      for (ElemId p : s.objects()) {
        if (s.equivalent(o, p)) least = std::min(least, p);
      }
      expected.push_back(least);
    }
    EXPECT_EQ(class_reps(s, x), make_id_set(expected));
  }
}

TEST(NotCosimpleArray, RowsAreTheClasses) {
  for (std::size_t m = 2; m <= 5; ++m) {
    StructureBuilder b(1);
    for (std::uint32_t r = 0; r < m; ++r) {
      for (std::uint32_t c = 0; c < m; ++c) {
        b.add(id(r * 10 + c), Sort::O);
        if (c > 0) b.unite(id(r * 10), id(r * 10 + c));
      }
    }
    const FinStructure s = b.build();
    EXPECT_EQ(class_reps(s, s.objects()).size(), m);
  }
}

TEST(RandomStructure, DeterministicAndValid) {
  const RandomShape shape{2, 5, 2, 3};
  EXPECT_EQ(random_structure(shape, 5), random_structure(shape, 5));
  const RandomShape discrete{1, 4, 1, 4};
  const FinStructure s = random_structure(discrete, 9);
  EXPECT_EQ(s.num_classes(), 4u);
  Rng rng(14);
  for (int i = 0; i < 1000; ++i) {
    RandomShape r{1 + i % 2, 1 + uniform_below(rng, 7), uniform_below(rng, 4), 0};
    r.classes = 1 + uniform_below(rng, r.objects);
    EXPECT_TRUE(validate(random_structure(r, rng)).pass());
  }
  EXPECT_THROW(random_structure(RandomShape{1, 2, 0, 3}, 1), DomainError);
}

TEST(RandomExtension, KeepsBaseAsSubstructure) {
  Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    RandomShape shape{1 + i % 2, 1 + uniform_below(rng, 4), uniform_below(rng, 3), 0};
    shape.classes = 1 + uniform_below(rng, shape.objects);
    const FinStructure base = random_structure(shape, rng);
    const FinStructure ext =
        random_extension(base, uniform_below(rng, 3), uniform_below(rng, 3), rng);
    EXPECT_TRUE(validate(ext).pass());
    EXPECT_EQ(restrict_to(ext, base.elements()), base);
  }
}

TEST(Enumerate, CountsSmallSizes) {
  std::vector<std::size_t> counts;
  for (std::size_t size = 0; size <= 3; ++size) {
    std::size_t c = 0;
    enumerate_structures(1, size, [&](const FinStructure& s) {
      EXPECT_TRUE(validate(s).pass());
      ++c;
      return true;
    });
    counts.push_back(c);
  }
  // Size 3: OOO gives 5 partitions, OOF gives 3, OFF and FFF one each.
  EXPECT_EQ(counts, (std::vector<std::size_t>{1, 2, 4, 10}));
}

TEST(Embeddings, Examples) {
  StructureBuilder p(1);
  p.add(id(0), Sort::O);
  const FinStructure point = p.build();
  EXPECT_EQ(find_embeddings(point, point).size(), 1u);

  StructureBuilder a(1);
  a.add(id(0), Sort::O).add(id(1), Sort::O);
  StructureBuilder b(1);
  b.add(id(0), Sort::O).add(id(1), Sort::O).unite(id(0), id(1));
  EXPECT_TRUE(find_embeddings(a.build(), b.build()).empty());
}

TEST(Embeddings, CountMatchesBruteForce) {
  Rng rng(16);
  for (int i = 0; i < 60; ++i) {
    RandomShape sa{1, 2, 1, 1 + uniform_below(rng, 2)};
    RandomShape sb{1, 4, 2, 1 + uniform_below(rng, 4)};
    const FinStructure a = random_structure(sa, rng);
    const FinStructure b = random_structure(sb, rng);
    EXPECT_EQ(find_embeddings(a, b).size(), testing::count_embeddings_brute(a, b)) << i;
    for (const auto& m : find_embeddings(a, b)) EXPECT_TRUE(is_embedding(a, b, m));
  }
}

TEST(Embeddings, StreamIsClosedUnderAutomorphisms) {
  Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    const FinStructure a = random_structure(RandomShape{1, 2, 1, 2}, rng);
    const FinStructure b = random_structure(RandomShape{1, 4, 1, 2}, rng);
    const auto embs = find_embeddings(a, b);
    const std::set<BaseMap> set(embs.begin(), embs.end());
    for (const auto& aut : find_embeddings(b, b)) {
      std::set<BaseMap> moved;
      for (const auto& e : embs) {
        BaseMap m;
        for (const auto& [x, y] : e.pairs()) m.insert(x, *aut.at(y));
        moved.insert(m);
      }
      EXPECT_EQ(moved, set);
    }
  }
}

TEST(EqualTypeOver, Examples) {
  const FinStructure s = small();
  const ElemId a[] = {id(2), id(3)};
  EXPECT_TRUE(equal_type_over({}, a, a, s));

  // Two singleton classes outside C = {0,1}: same type.
  StructureBuilder b(1);
  b.add(id(0), Sort::O).add(id(1), Sort::O).add(id(2), Sort::O);
  const FinStructure t = b.build();
  const ElemId c[] = {id(0)};
  const ElemId x[] = {id(1)};
  const ElemId y[] = {id(2)};
  EXPECT_TRUE(equal_type_over(c, x, y, t));
  const ElemId base_pt[] = {id(0)};
  EXPECT_FALSE(equal_type_over(c, base_pt, x, t));
  EXPECT_THROW(equal_type_over(c, x, std::span<const ElemId>{}, t), DomainError);
}

TEST(EqualTypeOver, TransitivityStructureSeparatesFAndG) {
  const TransitivityModel t = transitivity_model();
  IdSet over = t.m;
  over.push_back(t.g);
  over.push_back(t.c);
  const ElemId f[] = {t.f};
  const ElemId g[] = {t.g};
  EXPECT_FALSE(equal_type_over(make_id_set(over), f, g, t.s));
  EXPECT_TRUE(equal_type_over(t.m, f, f, t.s));
}

TEST(EqualTypeOver, IsAnEquivalenceRelation) {
  Rng rng(18);
  for (int i = 0; i < 60; ++i) {
    const FinStructure s = random_structure(RandomShape{1, 5, 2, 1 + uniform_below(rng, 4)}, rng);
    const ElemId c0 = s.objects()[uniform_below(rng, s.objects().size())];
    const IdSet c = closure(s, std::vector<ElemId>{c0});
    const auto& os = s.objects();
    for (ElemId x : os) {
      const ElemId xs[] = {x};
      EXPECT_TRUE(equal_type_over(c, xs, xs, s));
      for (ElemId y : os) {
        const ElemId ys[] = {y};
        const bool xy = equal_type_over(c, xs, ys, s);
        EXPECT_EQ(xy, equal_type_over(c, ys, xs, s));
        for (ElemId z : os) {
          const ElemId zs[] = {z};
          if (xy && equal_type_over(c, ys, zs, s)) {
            EXPECT_TRUE(equal_type_over(c, xs, zs, s));
          }
        }
      }
    }
  }
}

TEST(Relabel, IsAnIsomorphism) {
  const FinStructure s = small();
  const FinStructure t = relabel(s, [](ElemId e) { return ElemId{e.value + 100}; });
  EXPECT_TRUE(validate(t).pass());
  BaseMap m;
  for (ElemId e : s.elements()) m.insert(e, ElemId{e.value + 100});
  EXPECT_TRUE(is_embedding(s, t, m));
}

}  // namespace
}  // namespace kimlab
