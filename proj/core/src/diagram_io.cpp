#include "kimlab/diagram_io.hpp"

#include <fstream>
#include <sstream>

#include "kimlab/errors.hpp"
#include "kimlab/structure_io.hpp"

namespace kimlab {
namespace {

class LiteralParser {
 public:
  LiteralParser(std::string_view text, const std::vector<VarDecl>& vars,
                SymbolTable& symbols, std::size_t line)
      : text_(text), vars_(vars), symbols_(symbols), line_(line) {}

  Literal parse() {
    skip_ws();
    bool positive = true;
    if (peek() == '!') {
      ++pos_;
      positive = false;
      skip_ws();
    }
    Literal lit = parse_atom();
    if (!positive) lit.positive = !lit.positive;
    skip_ws();
    if (pos_ < text_.size()) {
      if (peek() == '|') {
        fail("disjunction is not supported: a diagram is a conjunction of literals");
      }
      fail("unexpected '" + std::string(1, peek()) + "'");
    }
    return lit;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, pos_ + 1);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                      c == '_' || (pos_ > start && c >= '0' && c <= '9');
      if (!ok) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected an identifier");
    return text_.substr(start, pos_ - start);
  }

  // Identifier immediately followed (after spaces) by '('.
  bool keyword_call(std::string_view word) {
    const std::size_t saved = pos_;
    skip_ws();
    const std::size_t start = pos_;
    if (text_.substr(start, word.size()) != word) {
      pos_ = saved;
      return false;
    }
    pos_ = start + word.size();
    const char next = peek();
    const bool ident_continues = (next >= 'A' && next <= 'Z') ||
                                 (next >= 'a' && next <= 'z') || next == '_' ||
                                 (next >= '0' && next <= '9');
    skip_ws();
    if (ident_continues || peek() != '(') {
      pos_ = saved;
      return false;
    }
    ++pos_;
    return true;
  }

  Term parse_term() {
    if (keyword_call("eval")) {
      std::vector<Term> args;
      args.push_back(parse_term());
      bool saw_semicolon = false;
      while (true) {
        skip_ws();
        if (peek() == ',') {
          if (saw_semicolon) fail("only one object argument follows ';'");
          ++pos_;
          args.push_back(parse_term());
        } else if (peek() == ';') {
          if (saw_semicolon) fail("duplicate ';'");
          ++pos_;
          saw_semicolon = true;
          args.push_back(parse_term());
        } else {
          break;
        }
      }
      expect(')');
      if (args.size() < 2) fail("eval needs function and object arguments");
      Term o = std::move(args.back());
      args.pop_back();
      return Term::eval(std::move(args), std::move(o));
    }
    const std::string name(identifier());
    for (const auto& v : vars_) {
      if (v.name == name) return Term::variable(name, v.sort);
    }
    return Term::constant(symbols_.intern(name));
  }

  Literal parse_atom() {
    if (keyword_call("E")) {
      Term a = parse_term();
      expect(',');
      Term b = parse_term();
      expect(')');
      return Literal::equiv(std::move(a), std::move(b));
    }
    for (Sort s : {Sort::O, Sort::F}) {
      if (keyword_call(std::string_view(s == Sort::O ? "O" : "F"))) {
        Term t = parse_term();
        expect(')');
        return Literal::sort_is(std::move(t), s);
      }
    }
    Term a = parse_term();
    skip_ws();
    bool positive = true;
    if (peek() == '!') {
      ++pos_;
      positive = false;
    }
    if (peek() != '=') fail("expected '='");
    ++pos_;
    Term b = parse_term();
    return Literal::eq(std::move(a), std::move(b), positive);
  }

  std::string_view text_;
  const std::vector<VarDecl>& vars_;
  SymbolTable& symbols_;
  std::size_t line_;
  std::size_t pos_ = 0;
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

std::vector<VarDecl> parse_decls_at(std::string_view text, std::size_t line) {
  std::vector<VarDecl> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i == start) break;
    const std::string_view word = text.substr(start, i - start);
    const auto colon = word.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'name:O' or 'name:F'", line, start + 1);
    }
    const std::string_view name = word.substr(0, colon);
    const std::string_view sort = word.substr(colon + 1);
    if (!is_identifier(name)) {
      throw ParseError("invalid variable name '" + std::string(name) + "'", line,
                       start + 1);
    }
    if (sort != "O" && sort != "F") {
      throw ParseError("variable sort must be O or F", line, start + colon + 2);
    }
    for (const auto& v : out) {
      if (v.name == name) {
        throw ParseError("variable '" + std::string(name) + "' declared twice",
                         line, start + 1);
      }
    }
    out.push_back(VarDecl{std::string(name), sort == "O" ? Sort::O : Sort::F});
  }
  return out;
}

}  // namespace

std::vector<VarDecl> parse_var_decls(std::string_view text) {
  return parse_decls_at(text, 1);
}

Literal parse_literal(std::string_view text, const std::vector<VarDecl>& vars,
                      SymbolTable& symbols) {
  return LiteralParser(text, vars, symbols, 1).parse();
}

Diagram parse_diagram(std::string_view text, SymbolTable& symbols) {
  Diagram d;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.substr(0, 4) == "vars" &&
        (line.size() == 4 || line[4] == ' ' || line[4] == '\t')) {
      if (!d.literals.empty()) {
        throw ParseError("variable declarations must precede literals", number, 1);
      }
      for (auto& v : parse_decls_at(line.substr(4), number)) {
        if (d.var_sort(v.name)) {
          throw ParseError("variable '" + v.name + "' declared twice", number, 1);
        }
        d.vars.push_back(std::move(v));
      }
      continue;
    }
    d.literals.push_back(LiteralParser(line, d.vars, symbols, number).parse());
  }
  return d;
}

Diagram load_diagram(const std::string& path, SymbolTable& symbols) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_diagram(ss.str(), symbols);
}

Template make_template(std::string_view vars, std::string_view literals,
                       std::vector<std::string> params, SymbolTable& symbols) {
  Template t;
  t.body = parse_diagram("vars " + std::string(vars) + "\n" + std::string(literals),
                         symbols);
  for (const auto& p : params) {
    if (!t.body.var_sort(p)) {
      throw DomainError("template parameter '" + p + "' is not a declared variable");
    }
  }
  t.params = std::move(params);
  return t;
}

std::string print_diagram(const Diagram& d, const SymbolTable& symbols) {
  std::string out;
  if (!d.vars.empty()) {
    out += "vars";
    for (const auto& v : d.vars) {
      out += ' ' + v.name + ':' + sort_char(v.sort);
    }
    out += '\n';
  }
  for (const auto& l : d.literals) out += to_string(l, symbols) + '\n';
  return out;
}

}  // namespace kimlab
