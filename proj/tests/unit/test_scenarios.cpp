#include <gtest/gtest.h>

#include <algorithm>

#include "kimlab/diagram_io.hpp"
#include "kimlab/errors.hpp"
#include "kimlab/generate.hpp"
#include "kimlab/independence.hpp"
#include "kimlab/scenarios.hpp"
#include "kimlab/structure_io.hpp"

namespace kimlab {
namespace {

std::string failures(const Report& r) {
  std::string out;
  for (const auto& c : r.checks) {
    if (!c.pass) out += c.name + " [" + c.witness + "]; ";
  }
  return out;
}

TEST(Scenarios, EveryScenarioPasses) {
  ScenarioOptions opt;
  for (const auto& id : scenario_ids()) {
    const Report r = run_scenario(id, opt);
    EXPECT_TRUE(r.pass()) << id << ": " << failures(r);
    EXPECT_FALSE(r.checks.empty()) << id;
  }
  EXPECT_EQ(scenario_ids().size(), 7u);
  EXPECT_THROW(run_scenario("no-such-scenario", opt), DomainError);
}

TEST(Scenarios, OtherSeedsAndLengths) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    ScenarioOptions opt;
    opt.seed = seed;
    opt.length = 2 + seed;
    opt.instances = 50;
    for (const auto& id : scenario_ids()) {
      EXPECT_TRUE(run_scenario(id, opt).pass()) << id << " seed " << seed;
    }
  }
}

TEST(NotCosimple, ArraySizes) {
  for (std::size_t m = 2; m <= 5; ++m) {
    EXPECT_TRUE(verify_not_cosimple(m).pass()) << m;
    EXPECT_FALSE(verify_not_cosimple(m, {}, true).pass()) << m;
  }
  EXPECT_THROW(verify_not_cosimple(1), DomainError);
  EXPECT_THROW(verify_not_cosimple(6), DomainError);
}

class Sop1Test : public ::testing::Test {
 protected:
  void SetUp() override {
    // K = {k}, L = {l0, l1, l2}.
    base_ = parse_structure("tn 1\nO: k l0 l1 l2\nE: l0~l1\nE: l0~l2\n", sym_);
    phi_ = {make_template("x:F y:O", "eval(x;y) = y", {"y"}, sym_)};
  }
  std::vector<ElemId> at(const char* name) { return {*sym_.find(name)}; }

  SymbolTable sym_;
  FinStructure base_;
  Formula phi_;
};

TEST_F(Sop1Test, TwoRowArray) {
  const std::vector<ArrayRow> good = {{at("k"), at("l0")}, {at("l1"), at("l2")}};
  EXPECT_TRUE(sop1_config_check(base_, phi_, good, 2).pass());
  // Column 1 is a single repeated point, so it stays consistent.
  const std::vector<ArrayRow> same = {{at("k"), at("k")}, {at("l1"), at("l1")}};
  EXPECT_FALSE(sop1_config_check(base_, phi_, same, 2).pass());
  // The second row's entries differ over the first row.
  const std::vector<ArrayRow> split = {{at("k"), at("l0")}, {at("k"), at("l2")}};
  EXPECT_FALSE(sop1_config_check(base_, phi_, split, 2).pass());
}

TEST_F(Sop1Test, InvalidBaseIsRejected) {
  StructureBuilder sb(base_);
  const ElemId f = base_.next_free_id();
  sb.add(f, Sort::F).set_eval({f}, at("l0")[0], at("k")[0]);
  const Report r = sop1_config_check(sb.build(), phi_, {{at("k"), at("l0")}, {at("l1"), at("l2")}}, 2);
  EXPECT_FALSE(r.pass());
}

TEST(ForkingNotDividing, DefaultBase) {
  EXPECT_TRUE(verify_forking_not_dividing(default_forking_base()).pass());
  EXPECT_TRUE(verify_no_universal_morley(default_forking_base(), 4).pass());
}

TEST(Transitivity, NeedsTheFirstClause) {
  EXPECT_TRUE(verify_transitivity_failure(true).pass());
  const Report without = verify_transitivity_failure(false);
  EXPECT_FALSE(without.pass());
  const TransitivityModel t = transitivity_model(true);
  EXPECT_TRUE(validate(t.s).pass());
  EXPECT_EQ(t.s.arity(), 2);
}

TEST(LocalCharacter, ChainCertifiesIndependence) {
  Rng rng(19);
  for (int i = 0; i < 300; ++i) {
    RandomShape shape{1, 2 + uniform_below(rng, 5), 1 + uniform_below(rng, 3), 0};
    shape.classes = 1 + uniform_below(rng, shape.objects);
    const FinStructure s = random_structure(shape, rng);
    std::vector<ElemId> n_gen, a, m_gen;
    for (ElemId e : s.elements()) {
      switch (uniform_below(rng, 4)) {
        case 0: n_gen.push_back(e); break;
        case 1: a.push_back(e); break;
        case 2: n_gen.push_back(e); m_gen.push_back(e); break;
        default: break;
      }
    }
    const IdSet n = closure(s, n_gen);
    const IdSet m0 = closure(s, m_gen);
    const LocalCharacter lc = local_character_chain(s, n, a, m0);
    ASSERT_FALSE(lc.chain.empty());
    EXPECT_TRUE(lc.report.pass()) << i << ": " << failures(lc.report);
    EXPECT_TRUE(std::includes(lc.chain.front().begin(), lc.chain.front().end(), m0.begin(),
                              m0.end()));
    for (std::size_t k = 1; k < lc.chain.size(); ++k) {
      EXPECT_TRUE(std::includes(lc.chain[k].begin(), lc.chain[k].end(),
                                lc.chain[k - 1].begin(), lc.chain[k - 1].end()));
    }
    const IdSet& m = lc.chain.back();
    EXPECT_TRUE(std::includes(n.begin(), n.end(), m.begin(), m.end()));
    EXPECT_TRUE(is_indep_star(s, a, n, m)) << i;
  }
}

TEST(IndependenceAmalgam, RejectsDifferentTypes) {
  SymbolTable sym;
  const FinStructure s = parse_structure("tn 1\nO: m a b\nF: f\nE: m~a\n", sym);
  const ElemId m[] = {*sym.find("m")};
  const ElemId a[] = {*sym.find("a")};
  const ElemId a1[] = {*sym.find("b")};
  const ElemId none[] = {*sym.find("m")};
  EXPECT_THROW(independence_amalgam(s, m, a, a1, none, none), PreconditionError);
}

}  // namespace
}  // namespace kimlab
