// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails. An optional argument names the kimlab executable; the
// determinism criterion then compares two separate processes.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kimlab/amalgamation.hpp"
#include "kimlab/scenarios.hpp"
#include "kimlab_cli/cli.hpp"
#include "support/indep_axioms.hpp"
#include "support/naive_extensions.hpp"
#include "support/tree_oracle.hpp"

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string failures(const kimlab::Report& r) {
  std::string out;
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    out += (out.empty() ? "" : "; ") + c.name;
    if (!c.witness.empty()) out += " [" + c.witness + "]";
  }
  return out;
}

Outcome fraisse() {
  kimlab::FraisseOptions ex;
  ex.n = 1;
  ex.cap = 3;
  ex.mode = kimlab::FraisseMode::Exhaustive;
  const kimlab::Report a = kimlab::check_fraisse(ex);

  kimlab::FraisseOptions rnd;
  rnd.n = 2;
  rnd.cap = 5;
  rnd.mode = kimlab::FraisseMode::Random;
  rnd.samples = 10'000;
  const kimlab::Report b = kimlab::check_fraisse(rnd);

  const bool pass = a.pass() && b.pass();
  return {pass, pass ? "n=1 exhaustive cap 3 and n=2 random 10^4 samples cap 5"
                     : failures(a) + failures(b)};
}

Outcome oracle() {
  const auto s = kimlab::testing::oracle_agreement(3);
  const bool pass = s.disagreements == 0 && s.bad_witnesses == 0 && s.queries > 0;
  std::ostringstream d;
  d << s.queries << " queries over " << s.bases << " bases, " << s.sat << " SAT, "
    << s.disagreements << " disagreements, " << s.bad_witnesses << " bad witnesses";
  if (!s.first_problem.empty()) d << "; first: " << s.first_problem;
  return {pass, d.str()};
}

Outcome scenarios() {
  kimlab::ScenarioOptions opt;
  std::string bad;
  std::size_t checks = 0;
  for (const auto& id : kimlab::scenario_ids()) {
    const kimlab::Report r = kimlab::run_scenario(id, opt);
    checks += r.checks.size();
    if (!r.pass()) bad += (bad.empty() ? "" : "; ") + id + ": " + failures(r);
  }
  return {bad.empty(), bad.empty() ? std::to_string(kimlab::scenario_ids().size()) +
                                         " scenarios, " + std::to_string(checks) + " checks"
                                   : bad};
}

Outcome axioms() {
  const kimlab::Report r = kimlab::testing::indep_axiom_suite(1000, 2024);
  return {r.pass(), r.pass() ? "1000 instances, 0 violations" : failures(r)};
}

Outcome trees() {
  const kimlab::Report r = kimlab::testing::tree_suite(4, 3);
  return {r.pass(), r.pass() ? "alpha ≤ 4, branching ≤ 3" : failures(r)};
}

std::string run_process(const std::string& exe) {
  std::string out;
  FILE* pipe = popen((exe + " verify all --seed 7 --json").c_str(), "r");
  if (pipe == nullptr) return out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  pclose(pipe);
  return out;
}

std::string run_in_process() {
  std::ostringstream out;
  std::ostringstream err;
  kimlab::cli::run({"verify", "all", "--seed", "7", "--json"}, out, err);
  return out.str();
}

Outcome determinism(const std::string& exe) {
  const std::string first = exe.empty() ? run_in_process() : run_process(exe);
  const std::string second = exe.empty() ? run_in_process() : run_process(exe);
  const bool pass = !first.empty() && first == second;
  return {pass, std::to_string(first.size()) + " bytes, " +
                    (pass ? "identical" : "outputs differ") +
                    (exe.empty() ? " (in process)" : " (two processes)")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Fraïssé suite", 60, fraisse},
      {2, "oracle agrees with naive enumeration", 120, oracle},
      {3, "scenario suite", 120, scenarios},
      {4, "⫝* axiom suite", 0, axioms},
      {5, "tree suite", 10, trees},
      {6, "determinism of verify all --seed 7 --json", 0, [&] { return determinism(exe); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s == 0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs << "s";
    if (c.budget_s > 0) t << " of " << static_cast<int>(c.budget_s) << "s";
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.name
              << "  (" << t.str() << ")  " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
