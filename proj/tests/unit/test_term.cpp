#include <gtest/gtest.h>

#include "kimlab/errors.hpp"
#include "kimlab/generate.hpp"
#include "kimlab/term.hpp"

namespace kimlab {
namespace {

Term ov(const std::string& n) { return Term::variable(n, Sort::O); }
Term fv(const std::string& n) { return Term::variable(n, Sort::F); }
Term ev(Term f, Term o) { return Term::eval({std::move(f)}, std::move(o)); }

TEST(NormalizeTerm, Examples) {
  EXPECT_EQ(normalize_term(ev(fv("x"), ev(fv("y"), ov("z")))), ev(fv("x"), ov("z")));
  EXPECT_EQ(normalize_term(ov("o")), ov("o"));
  EXPECT_EQ(normalize_term(ev(fv("x"), ev(fv("y"), ev(fv("w"), ov("z"))))),
            ev(fv("x"), ov("z")));
}

TEST(NormalizeTerm, IllSorted) {
  EXPECT_THROW(normalize_term(ev(ov("x"), ov("z"))), DomainError);
  EXPECT_THROW(normalize_term(ev(fv("x"), fv("z"))), DomainError);
  EXPECT_THROW(normalize_term(Term::eval({ev(fv("x"), ov("z"))}, ov("z"))), DomainError);
}

TEST(NormalizeLiteral, Examples) {
  const Literal l = Literal::equiv(ov("x"), ev(fv("y"), ov("z")));
  EXPECT_EQ(normalize_literal(l), Literal::equiv(ov("x"), ov("z")));
  const Literal k = Literal::equiv(Term::constant(ElemId{0}), Term::constant(ElemId{1}), false);
  EXPECT_EQ(normalize_literal(k), k);
  EXPECT_EQ(normalize_literal(Literal::equiv(ev(fv("f"), ov("u")), ev(fv("g"), ov("v")))),
            Literal::equiv(ov("u"), ov("v")));
  EXPECT_THROW(normalize_literal(Literal::eq(ov("x"), fv("f"))), DomainError);
  EXPECT_THROW(normalize_literal(Literal::equiv(fv("f"), ov("x"))), DomainError);
}

TEST(Holds, Examples) {
  StructureBuilder b(1);
  b.add(ElemId{0}, Sort::O).add(ElemId{1}, Sort::O).add(ElemId{2}, Sort::O);
  b.unite(ElemId{0}, ElemId{1});
  const FinStructure s = b.build();
  const Assignment none;
  EXPECT_TRUE(holds(s, none, Literal::equiv(Term::constant(ElemId{0}), Term::constant(ElemId{1}))));
  EXPECT_FALSE(holds(s, none, Literal::equiv(Term::constant(ElemId{0}), Term::constant(ElemId{2}))));
  EXPECT_THROW(holds(s, none, Literal::eq(ov("x"), ov("x"))), DomainError);
  EXPECT_THROW(holds(s, none, Literal::eq(Term::constant(ElemId{7}), ov("x"))), DomainError);
}

// Random terms over variables o0, o1 (O) and f0, f1 (F) up to the given depth.
Term random_term(Rng& rng, int n, int depth) {
  if (depth == 0 || uniform_below(rng, 3) == 0) return ov("o" + std::to_string(uniform_below(rng, 2)));
  std::vector<Term> fs;
  for (int i = 0; i < n; ++i) fs.push_back(fv("f" + std::to_string(uniform_below(rng, 2))));
  return Term::eval(std::move(fs), random_term(rng, n, depth - 1));
}

TEST(Normalization, PreservesSemanticsAndIsIdempotent) {
  Rng rng(31);
  for (int i = 0; i < 10'000; ++i) {
    const int n = 1 + i % 2;
    RandomShape shape{n, 1 + uniform_below(rng, 5), 1 + uniform_below(rng, 3), 0};
    shape.classes = 1 + uniform_below(rng, shape.objects);
    const FinStructure s = random_structure(shape, rng);
    Assignment asg;
    for (const char* o : {"o0", "o1"}) asg[o] = s.objects()[uniform_below(rng, s.objects().size())];
    for (const char* f : {"f0", "f1"}) asg[f] = s.functions()[uniform_below(rng, s.functions().size())];

    const Term a = random_term(rng, n, 4);
    const Term b = random_term(rng, n, 4);
    const bool pos = uniform_below(rng, 2) == 0;
    const Literal l = uniform_below(rng, 2) ? Literal::eq(a, b, pos) : Literal::equiv(a, b, pos);
    const Literal m = normalize_literal(l);
    ASSERT_EQ(holds(s, asg, l), holds(s, asg, m)) << i;
    EXPECT_EQ(normalize_literal(m), m);
    EXPECT_LE(depth(normalize_term(a)), 1u);
    EXPECT_LE(depth(normalize_term(a)), depth(a));
    EXPECT_EQ(evaluate(s, asg, a), evaluate(s, asg, normalize_term(a)));
  }
}

TEST(CheckSorts, ArityIsEnforced) {
  const Term t = Term::eval({fv("f")}, ov("x"));
  EXPECT_NO_THROW(check_sorts(t, Sort::O, nullptr, 1));
  EXPECT_THROW(check_sorts(t, Sort::O, nullptr, 2), DomainError);
  EXPECT_THROW(check_sorts(t, Sort::F, nullptr, 1), DomainError);
}

TEST(Conjoin, MergesDeclarations) {
  Diagram a{{{"x", Sort::O}}, {Literal::eq(ov("x"), ov("x"))}};
  Diagram b{{{"x", Sort::O}, {"y", Sort::F}}, {}};
  EXPECT_EQ(conjoin(a, b).vars.size(), 2u);
  Diagram c{{{"x", Sort::F}}, {}};
  EXPECT_THROW(conjoin(a, c), DomainError);
}

}  // namespace
}  // namespace kimlab
