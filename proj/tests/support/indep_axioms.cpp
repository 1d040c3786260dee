#include "support/indep_axioms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "kimlab/generate.hpp"
#include "kimlab/independence.hpp"
#include "kimlab/structure.hpp"

namespace kimlab::testing {
namespace {

std::vector<ElemId> sample(const FinStructure& s, std::size_t k, Rng& rng) {
  std::vector<ElemId> pool(s.elements().begin(), s.elements().end());
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(k, pool.size()));
  return pool;
}

std::vector<ElemId> concat(std::vector<ElemId> a, const std::vector<ElemId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string show(const std::vector<ElemId>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + std::to_string(v[i].value);
  }
  return out + ")";
}

struct Tally {
  std::size_t violations = 0;
  std::string first;
  void record(bool ok, const std::string& what) {
    if (ok) return;
    if (violations++ == 0) first = what;
  }
};

}  // namespace

Report indep_axiom_suite(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  Tally invariance, monotonicity, symmetry, existence;
  std::size_t independent = 0;

  for (std::size_t i = 0; i < instances; ++i) {
    RandomShape shape;
    shape.n = 1 + static_cast<int>(i % 2);
    shape.objects = 1 + uniform_below(rng, 6);
    shape.functions = uniform_below(rng, 4);
    shape.classes = 1 + uniform_below(rng, shape.objects);
    const FinStructure s = random_structure(shape, rng);

    const IdSet c = closure(s, sample(s, uniform_below(rng, 3), rng));
    const auto a = sample(s, 1 + uniform_below(rng, 2), rng);
    const auto a_more = sample(s, uniform_below(rng, 3), rng);
    const auto b = sample(s, 1 + uniform_below(rng, 2), rng);
    const auto b_more = sample(s, uniform_below(rng, 3), rng);
    const std::string where = "instance " + std::to_string(i) + ": a=" + show(a) +
                              " b=" + show(b) + " C=" + show(c);

    const bool ab = is_indep_star(s, a, b, c);
    independent += ab ? 1 : 0;

    symmetry.record(ab == is_indep_star(s, b, a, c), where);

    const bool big = is_indep_star(s, concat(a, a_more), concat(b, b_more), c);
    monotonicity.record(!big || ab, where);

    existence.record(is_indep_star(s, a, c, c), where);

    // Rename every id through a random injection into a disjoint range.
    std::vector<std::uint32_t> targets(s.size());
    std::iota(targets.begin(), targets.end(), 1000u);
    std::shuffle(targets.begin(), targets.end(), rng);
    std::map<ElemId, ElemId> pi;
    for (std::size_t k = 0; k < s.size(); ++k) pi[s.elements()[k]] = ElemId{targets[k]};
    const FinStructure t = relabel(s, [&](ElemId e) { return pi.at(e); });
    auto image = [&](const std::vector<ElemId>& v) {
      std::vector<ElemId> out;
      for (ElemId e : v) out.push_back(pi.at(e));
      return out;
    };
    invariance.record(ab == is_indep_star(t, image(a), image(b), image(c)), where);
  }

  Report r;
  r.subject = "⫝* axioms on " + std::to_string(instances) + " random instances";
  auto add = [&](const std::string& name, const Tally& t, const std::string& claim) {
    r.add(name, t.violations == 0,
          t.violations == 0 ? "0 violations"
                            : std::to_string(t.violations) + " violations, first at " + t.first,
          claim);
  };
  add("invariance under renaming the ambient", invariance, "a ⫝*_C b ⇔ σa ⫝*_{σC} σb");
  add("monotonicity", monotonicity, "aa′ ⫝*_C bb′ ⇒ a ⫝*_C b");
  add("symmetry", symmetry, "a ⫝*_C b ⇔ b ⫝*_C a");
  add("existence over eval-closed C", existence, "a ⫝*_C C");
  const bool both = independent > 0 && independent < instances;
  r.add("both outcomes occur in the corpus", both,
        std::to_string(independent) + " independent of " + std::to_string(instances));
  return r;
}

}  // namespace kimlab::testing
