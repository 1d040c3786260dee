#include "kimlab/structure_io.hpp"

#include <fstream>
#include <sstream>

#include "kimlab/errors.hpp"

namespace kimlab {

ElemId SymbolTable::intern(std::string_view name) {
  if (auto id = find(name)) return *id;
  const ElemId id{static_cast<std::uint32_t>(names_.size())};
  names_.emplace_back(name);
  ids_.emplace(std::string(name), id);
  return id;
}

std::optional<ElemId> SymbolTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::string SymbolTable::name(ElemId id) const {
  if (id.value < names_.size()) return names_[id.value];
  if (auto it = extra_.find(id.value); it != extra_.end()) return it->second;
  return "_" + std::to_string(id.value);
}

void SymbolTable::name_fresh(ElemId id) {
  if (id.value < names_.size() || extra_.count(id.value) != 0) return;
  std::string candidate = "_" + std::to_string(id.value);
  while (ids_.count(candidate) != 0) candidate += "_";
  extra_.emplace(id.value, candidate);
  ids_.emplace(candidate, id);
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text[0])) return false;
  for (char c : text) {
    if (!alpha(c) && !digit(c)) return false;
  }
  return true;
}

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

class StructureParser {
 public:
  StructureParser(std::string_view text, SymbolTable& symbols)
      : text_(text), symbols_(symbols) {}

  FinStructure parse() {
    std::size_t number = 0;
    std::size_t pos = 0;
    std::optional<StructureBuilder> builder;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      ++number;
      std::string_view raw = text_.substr(pos, end - pos);
      pos = end + 1;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) {
        raw = raw.substr(0, hash);
      }
      const std::string_view line = trim(raw);
      if (line.empty()) continue;
      line_ = number;
      if (!builder) {
        builder.emplace(parse_header(line));
        continue;
      }
      try {
        parse_line(line, *builder);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), line_, 1);
      }
    }
    if (!builder) throw ParseError("missing 'tn <n>' header", number, 1);
    try {
      return builder->build();
    } catch (const Error& e) {
      throw ParseError(e.what(), number, 1);
    }
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, 1);
  }

  int parse_header(std::string_view line) {
    const auto words = split_ws(line);
    if (words.size() != 2 || words[0] != "tn") fail("expected 'tn <n>'");
    int n = 0;
    for (char c : words[1]) {
      if (c < '0' || c > '9') fail("arity must be a positive integer");
      n = n * 10 + (c - '0');
      if (n > 64) fail("arity too large");
    }
    if (n < 1) fail("arity must be a positive integer");
    return n;
  }

  ElemId name(std::string_view token) {
    if (!is_identifier(token)) {
      fail("invalid identifier '" + std::string(token) + "'");
    }
    return symbols_.intern(token);
  }

  ElemId known(std::string_view token, const StructureBuilder& b) {
    const ElemId id = name(token);
    if (!b.contains(id)) fail("undeclared element '" + std::string(token) + "'");
    return id;
  }

  void parse_line(std::string_view line, StructureBuilder& b) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) fail("expected 'O:', 'F:', 'E:' or 'eval:'");
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view rest = trim(line.substr(colon + 1));
    if (key == "O" || key == "F") {
      const Sort sort = key == "O" ? Sort::O : Sort::F;
      for (auto token : split_ws(rest)) {
        const ElemId id = name(token);
        if (auto existing = b.sort_of(id); existing && *existing != sort) {
          fail("element '" + std::string(token) + "' declared in both sorts");
        }
        b.add(id, sort);
      }
    } else if (key == "E") {
      const auto tilde = rest.find('~');
      if (tilde == std::string_view::npos) fail("expected 'E: a~b'");
      const ElemId a = known(trim(rest.substr(0, tilde)), b);
      const ElemId c = known(trim(rest.substr(tilde + 1)), b);
      if (b.sort_of(a) != Sort::O || b.sort_of(c) != Sort::O) {
        fail("E relates only O-elements");
      }
      b.unite(a, c);
    } else if (key == "eval") {
      const auto bar = rest.find('|');
      const auto arrow = rest.find("->");
      if (bar == std::string_view::npos || arrow == std::string_view::npos ||
          arrow < bar) {
        fail("expected 'eval: f1 ... fn | o -> v'");
      }
      std::vector<ElemId> fs;
      for (auto token : split_ws(rest.substr(0, bar))) {
        const ElemId f = known(token, b);
        if (b.sort_of(f) != Sort::F) fail("'" + std::string(token) + "' is not in F");
        fs.push_back(f);
      }
      if (fs.size() != static_cast<std::size_t>(b.arity())) {
        fail("eval takes " + std::to_string(b.arity()) + " function arguments");
      }
      const auto args = split_ws(rest.substr(bar + 1, arrow - bar - 1));
      const auto vals = split_ws(rest.substr(arrow + 2));
      if (args.size() != 1 || vals.size() != 1) fail("expected '| o -> v'");
      const ElemId o = known(args[0], b);
      const ElemId v = known(vals[0], b);
      if (b.sort_of(o) != Sort::O || b.sort_of(v) != Sort::O) {
        fail("eval maps O-elements to O-elements");
      }
      b.set_eval(std::move(fs), o, v);
    } else {
      fail("unknown section '" + std::string(key) + "'");
    }
  }

  std::string_view text_;
  SymbolTable& symbols_;
  std::size_t line_ = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FinStructure parse_structure(std::string_view text, SymbolTable& symbols) {
  return StructureParser(text, symbols).parse();
}

FinStructure load_structure(const std::string& path, SymbolTable& symbols) {
  return parse_structure(read_file(path), symbols);
}

std::string print_structure(const FinStructure& s, const SymbolTable& symbols) {
  std::ostringstream out;
  out << "tn " << s.arity() << '\n';
  auto list = [&](const char* key, const IdSet& ids) {
    out << key << ':';
    for (ElemId id : ids) out << ' ' << symbols.name(id);
    out << '\n';
  };
  list("O", s.objects());
  list("F", s.functions());
  for (std::size_t c = 0; c < s.num_classes(); ++c) {
    const auto& members = s.class_members_of(c);
    for (std::size_t i = 1; i < members.size(); ++i) {
      out << "E: " << symbols.name(members.front()) << '~'
          << symbols.name(members[i]) << '\n';
    }
  }
  s.for_each_tuple([&](std::span<const ElemId> fs) {
    for (ElemId o : s.objects()) {
      const ElemId v = s.eval(fs, o);
      if (v == s.class_rep(o)) continue;
      out << "eval:";
      for (ElemId f : fs) out << ' ' << symbols.name(f);
      out << " | " << symbols.name(o) << " -> " << symbols.name(v) << '\n';
    }
  });
  return out.str();
}

void save_structure(const std::string& path, const FinStructure& s,
                    const SymbolTable& symbols) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << print_structure(s, symbols);
}

std::vector<ElemId> resolve_names(std::string_view names,
                                  const SymbolTable& symbols) {
  std::vector<ElemId> out;
  for (auto token : split_ws(names)) {
    auto id = symbols.find(token);
    if (!id) throw DomainError("unknown element '" + std::string(token) + "'");
    out.push_back(*id);
  }
  return out;
}

}  // namespace kimlab
