#include "kimlab_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>

#include "kimlab/amalgamation.hpp"
#include "kimlab/diagram_io.hpp"
#include "kimlab/errors.hpp"
#include "kimlab/generate.hpp"
#include "kimlab/independence.hpp"
#include "kimlab/oracle.hpp"
#include "kimlab/scenarios.hpp"
#include "kimlab/structure_io.hpp"
#include "kimlab/tree.hpp"

namespace kimlab::cli {
namespace {

using Json = nlohmann::ordered_json;

Json check_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  // Checks whose name already states the claim leave `claim` empty.
  j["paper_quote"] = c.claim.empty() ? c.name : c.claim;
  j["pass"] = c.pass;
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

Json report_json(const Report& r) {
  Json j;
  j["scenario"] = r.subject;
  j["pass"] = r.pass();
  j["checks"] = Json::array();
  for (const auto& c : r.checks) j["checks"].push_back(check_json(c));
  return j;
}

void print_report(std::ostream& out, const Report& r) {
  out << (r.pass() ? "PASS " : "FAIL ") << r.subject << '\n';
  for (const auto& c : r.checks) {
    out << (c.pass ? "  ok   " : "  FAIL ") << c.name;
    if (!c.witness.empty()) out << "  [" << c.witness << ']';
    out << '\n';
  }
}

// Library reports spell elements as e<id>; show the file's names instead.
Report with_names(Report r, const SymbolTable& symbols) {
  static const std::regex id_token(R"(\be(\d+)\b)");
  for (auto& c : r.checks) {
    std::string out;
    auto last = c.witness.cbegin();
    for (std::sregex_iterator it(c.witness.begin(), c.witness.end(), id_token), end;
         it != end; ++it) {
      out.append(last, (*it)[0].first);
      out += symbols.name(ElemId{static_cast<std::uint32_t>(std::stoul((*it)[1].str()))});
      last = (*it)[0].second;
    }
    out.append(last, c.witness.cend());
    c.witness = std::move(out);
  }
  return r;
}

void emit(std::ostream& out, const Report& r, bool json) {
  if (json) {
    Json j{{"v", 1}};
    const Json body = report_json(r);
    for (const auto& [k, v] : body.items()) j[k] = v;
    out << j.dump(2) << '\n';
  } else {
    print_report(out, r);
  }
}

int verdict(const Report& r) { return r.pass() ? kPass : kFail; }

std::vector<tree::Level> parse_levels(const std::string& text) {
  std::vector<tree::Level> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream words(token);
    std::string w;
    while (words >> w) out.push_back(static_cast<tree::Level>(std::stoul(w)));
  }
  return out;
}

// Line-based description of a Morley-sequence query:
//   ambient <file.tn>      (relative to the spec file)
//   base <names>
//   tuple <names>
//   vars <decls>           optional template for the Kim-dividing check
//   params <names>
//   phi <literal>          one or more, conjoined
struct MorleySpec {
  std::string ambient;
  std::string base;
  std::string tuple;
  std::string vars;
  std::vector<std::string> params;
  std::string literals;
};

MorleySpec parse_morley_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  MorleySpec spec;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    std::string rest;
    std::getline(words, rest);
    if (key == "ambient") {
      std::istringstream(rest) >> spec.ambient;
    } else if (key == "base") {
      spec.base = rest;
    } else if (key == "tuple") {
      spec.tuple = rest;
    } else if (key == "vars") {
      spec.vars = rest;
    } else if (key == "params") {
      std::istringstream ps(rest);
      std::string p;
      while (ps >> p) spec.params.push_back(p);
    } else if (key == "phi") {
      spec.literals += rest + "\n";
    } else {
      throw ParseError("unknown key '" + key + "'", number, 1);
    }
  }
  if (spec.ambient.empty() || spec.tuple.empty()) {
    throw ParseError("a Morley spec needs 'ambient' and 'tuple' lines", number, 1);
  }
  const auto dir = std::filesystem::path(path).parent_path();
  if (std::filesystem::path(spec.ambient).is_relative()) {
    spec.ambient = (dir / spec.ambient).string();
  }
  return spec;
}

std::string names(const std::vector<ElemId>& ids, const SymbolTable& symbols) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out += (i ? " " : "") + symbols.name(ids[i]);
  }
  return out;
}

struct Options {
  // tree enum
  unsigned alpha = 2;
  unsigned branch = 2;
  std::string levels;
  // shared
  bool json = false;
  std::string output;
  std::uint64_t seed = 7;
  // validate
  std::string file;
  // gen
  int n = 1;
  std::size_t objects = 3;
  std::size_t functions = 1;
  std::size_t classes = 2;
  // amalgamate
  std::string base;
  std::string left;
  std::string right;
  // fraisse-check
  std::size_t cap = 3;
  std::string mode = "exhaustive";
  std::uint64_t samples = 10000;
  // oracle
  std::string diagram;
  // indep
  std::string ambient;
  std::string a;
  std::string b;
  // morley
  std::string spec;
  std::size_t len = 4;
  // verify
  std::string scenario;
  std::size_t m = 0;
  std::size_t instances = 200;
};

int cmd_tree(const Options& o, std::ostream& out) {
  const tree::LevelSet w = o.levels.empty()
                               ? tree::LevelSet::all(o.alpha)
                               : tree::LevelSet(o.alpha, parse_levels(o.levels));
  for (const auto& node : tree::restrict(o.alpha, w, o.branch)) {
    out << tree::to_string(node) << '\n';
  }
  return kPass;
}

int cmd_validate(const Options& o, std::ostream& out) {
  SymbolTable symbols;
  const FinStructure s = load_structure(o.file, symbols);
  const Report r = with_names(validate(s), symbols);
  emit(out, r, o.json);
  return verdict(r);
}

int cmd_gen(const Options& o, std::ostream& out) {
  RandomShape shape{o.n, o.objects, o.functions, o.classes};
  const FinStructure s = random_structure(shape, o.seed);
  SymbolTable symbols;
  std::size_t oi = 0;
  std::size_t fi = 0;
  for (ElemId id : s.elements()) {
    symbols.intern(s.sort_of(id) == Sort::O ? "o" + std::to_string(oi++)
                                            : "f" + std::to_string(fi++));
  }
  if (o.output.empty()) {
    out << print_structure(s, symbols);
  } else {
    save_structure(o.output, s, symbols);
  }
  return kPass;
}

int cmd_amalgamate(const Options& o, std::ostream& out) {
  SymbolTable symbols;
  const FinStructure a = load_structure(o.base, symbols);
  const FinStructure b = load_structure(o.left, symbols);
  const FinStructure c = load_structure(o.right, symbols);
  const FinStructure d = strong_amalgam(a, b, c);
  const Report r = with_names(check_amalgam(a, b, c, d), symbols);
  if (o.output.empty()) {
    out << print_structure(d, symbols);
  } else {
    save_structure(o.output, d, symbols);
    emit(out, r, o.json);
  }
  return verdict(r);
}

int cmd_fraisse(const Options& o, std::ostream& out) {
  FraisseOptions f;
  f.n = o.n;
  f.cap = o.cap;
  f.samples = o.samples;
  f.seed = o.seed;
  f.mode = o.mode == "random" ? FraisseMode::Random : FraisseMode::Exhaustive;
  const Report r = check_fraisse(f);
  emit(out, r, o.json);
  return verdict(r);
}

int cmd_oracle(const Options& o, std::ostream& out) {
  SymbolTable symbols;
  const FinStructure base = load_structure(o.base, symbols);
  const Diagram d = load_diagram(o.diagram, symbols);
  OracleOptions opt;
  opt.first_fresh = ElemId{std::max<std::uint32_t>(
      base.next_free_id().value, static_cast<std::uint32_t>(symbols.size()))};
  const auto w = satisfiable(base, d, opt);
  if (!w) {
    if (o.json) {
      out << Json{{"v", 1}, {"result", "UNSAT"}}.dump(2) << '\n';
    } else {
      out << "UNSAT\n";
    }
    return kFail;
  }
  for (ElemId id : w->extension.elements()) symbols.name_fresh(id);
  if (o.json) {
    Json j{{"v", 1}, {"result", "SAT"}};
    Json asg = Json::object();
    for (const auto& [var, id] : w->assignment) asg[var] = symbols.name(id);
    j["assignment"] = asg;
    j["witness"] = print_structure(w->extension, symbols);
    out << j.dump(2) << '\n';
  } else {
    out << "SAT\n";
    for (const auto& [var, id] : w->assignment) {
      out << "# " << var << " = " << symbols.name(id) << '\n';
    }
    if (o.output.empty()) out << print_structure(w->extension, symbols);
  }
  if (!o.output.empty()) save_structure(o.output, w->extension, symbols);
  return kPass;
}

int cmd_indep(const Options& o, std::ostream& out) {
  SymbolTable symbols;
  const FinStructure s = load_structure(o.ambient, symbols);
  const auto a = resolve_names(o.a, symbols);
  const auto b = resolve_names(o.b, symbols);
  const auto c = resolve_names(o.base, symbols);
  const Report r = with_names(indep_star(s, a, b, c), symbols);
  emit(out, r, o.json);
  return verdict(r);
}

int cmd_morley(const Options& o, std::ostream& out) {
  const MorleySpec spec = parse_morley_spec(o.spec);
  SymbolTable symbols;
  const FinStructure s = load_structure(spec.ambient, symbols);
  const auto base = resolve_names(spec.base, symbols);
  const auto tuple = resolve_names(spec.tuple, symbols);
  const GenericSpec gs{make_id_set(base), tuple};
  const MorleySequence seq = morley_sequence(s, gs, o.len);
  for (ElemId id : seq.ambient.elements()) symbols.name_fresh(id);

  Report r = check_indiscernible(seq.ambient, base, seq.tuples, std::min<std::size_t>(o.len, 4));
  r.subject = "Morley sequence of length " + std::to_string(o.len);
  for (std::size_t i = 0; i < seq.tuples.size(); ++i) {
    r.add("tuple " + std::to_string(i), true, names(seq.tuples[i], symbols));
  }
  if (!spec.literals.empty()) {
    const Template t = make_template(spec.vars, spec.literals, spec.params, symbols);
    const KimDividing kd = kim_divides(s, {t}, tuple, base, o.len);
    r.checks.push_back(kd.report.checks.back());
  }
  emit(out, with_names(r, symbols), o.json);
  return verdict(r);
}

int cmd_verify(const Options& o, std::ostream& out) {
  ScenarioOptions opt;
  opt.seed = o.seed;
  opt.length = o.len;
  opt.m = o.m;
  opt.instances = o.instances;
  std::vector<std::string> ids;
  if (o.scenario == "all") {
    ids = scenario_ids();
  } else {
    ids = {o.scenario};
  }
  bool all_pass = true;
  Json scenarios = Json::array();
  for (const auto& id : ids) {
    Report r = run_scenario(id, opt);
    r.subject = id;
    all_pass = all_pass && r.pass();
    if (o.json) {
      scenarios.push_back(report_json(r));
    } else {
      print_report(out, r);
    }
  }
  if (o.json) {
    Json j{{"v", 1}};
    if (ids.size() == 1) {
      for (auto& [k, v] : scenarios[0].items()) j[k] = v;
    } else {
      j["pass"] = all_pass;
      j["scenarios"] = scenarios;
    }
    out << j.dump(2) << '\n';
  } else if (ids.size() > 1) {
    out << (all_pass ? "PASS" : "FAIL") << " all (" << ids.size() << " scenarios)\n";
  }
  return all_pass ? kPass : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite models of T_n: amalgamation, oracle, independence and scenarios",
               "kimlab"};
  app.require_subcommand(1);
  Options o;

  auto* tree_cmd = app.add_subcommand("tree", "Tree index family");
  tree_cmd->require_subcommand(1);
  auto* tree_enum = tree_cmd->add_subcommand("enum", "Enumerate a truncated tree");
  tree_enum->add_option("--alpha", o.alpha, "Number of levels")->required();
  tree_enum->add_option("--branch", o.branch, "Values per level")->check(CLI::PositiveNumber);
  tree_enum->add_option("--levels", o.levels, "Level set w, e.g. \"0 2\"");

  auto* validate_cmd = app.add_subcommand("validate", "Check the T_n axioms");
  validate_cmd->add_option("file", o.file, "Structure file (.tn)")->required();
  validate_cmd->add_flag("--json", o.json);

  auto* gen_cmd = app.add_subcommand("gen", "Random structure");
  gen_cmd->add_option("--n", o.n)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--objects", o.objects);
  gen_cmd->add_option("--functions", o.functions);
  gen_cmd->add_option("--classes", o.classes);
  gen_cmd->add_option("--seed", o.seed);
  gen_cmd->add_option("-o,--output", o.output);

  auto* amal_cmd = app.add_subcommand("amalgamate", "Strong amalgam of B and C over A");
  amal_cmd->add_option("--base", o.base)->required();
  amal_cmd->add_option("--left", o.left)->required();
  amal_cmd->add_option("--right", o.right)->required();
  amal_cmd->add_option("-o,--output", o.output);
  amal_cmd->add_flag("--json", o.json);

  auto* fraisse_cmd = app.add_subcommand("fraisse-check", "HP, JEP, SAP and the size bound");
  fraisse_cmd->add_option("--n", o.n)->check(CLI::PositiveNumber);
  fraisse_cmd->add_option("--cap", o.cap);
  fraisse_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"exhaustive", "random"}));
  fraisse_cmd->add_option("--samples", o.samples);
  fraisse_cmd->add_option("--seed", o.seed);
  fraisse_cmd->add_flag("--json", o.json);

  auto* oracle_cmd = app.add_subcommand("oracle", "Satisfiability of a diagram over a base");
  oracle_cmd->add_option("--base", o.base)->required();
  oracle_cmd->add_option("--diagram", o.diagram)->required();
  oracle_cmd->add_option("-o,--output", o.output, "Write the witness structure here");
  oracle_cmd->add_flag("--json", o.json);

  auto* indep_cmd = app.add_subcommand("indep", "Decide a ⫝*_C b");
  indep_cmd->add_option("--ambient", o.ambient)->required();
  indep_cmd->add_option("--a", o.a)->required();
  indep_cmd->add_option("--b", o.b)->required();
  indep_cmd->add_option("--base", o.base);
  indep_cmd->add_flag("--json", o.json);

  auto* morley_cmd = app.add_subcommand("morley", "Generic Morley sequence");
  morley_cmd->add_option("--spec", o.spec)->required();
  morley_cmd->add_option("--len", o.len)->check(CLI::Range(1, 16));
  morley_cmd->add_flag("--json", o.json);

  auto* verify_cmd = app.add_subcommand("verify", "Run a scenario or all of them");
  std::vector<std::string> choices = scenario_ids();
  choices.push_back("all");
  verify_cmd->add_option("scenario", o.scenario)->required()->check(CLI::IsMember(choices));
  verify_cmd->add_option("--seed", o.seed);
  verify_cmd->add_option("--len", o.len);
  verify_cmd->add_option("--m", o.m);
  verify_cmd->add_option("--instances", o.instances);
  verify_cmd->add_flag("--json", o.json);
  o.len = 0;  // per-command defaults are applied below

  std::vector<std::string> argv_store{"kimlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (tree_cmd->parsed()) return cmd_tree(o, out);
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (gen_cmd->parsed()) return cmd_gen(o, out);
    if (amal_cmd->parsed()) return cmd_amalgamate(o, out);
    if (fraisse_cmd->parsed()) return cmd_fraisse(o, out);
    if (oracle_cmd->parsed()) return cmd_oracle(o, out);
    if (indep_cmd->parsed()) return cmd_indep(o, out);
    if (morley_cmd->parsed()) {
      if (o.len == 0) o.len = 4;
      return cmd_morley(o, out);
    }
    if (verify_cmd->parsed()) {
      if (o.len == 0) o.len = 3;
      return cmd_verify(o, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kFail;
  } catch (const SearchLimitError& e) {
    err << "search limit: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace kimlab::cli
