#pragma once

// Line-based text format for structures:
//
//   # comment
//   tn <n>
//   O: id id ...
//   F: id id ...
//   E: id~id                  (one generating pair per line)
//   eval: f1 ... fn | o -> o'  (one entry per line)
//
// Omitted eval entries default to the least member of the argument's class.
// Names are interned in a SymbolTable so several files can share ids.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kimlab/structure.hpp"

namespace kimlab {

class SymbolTable {
 public:
  /// Id for `name`, allocating the next id on first use.
  ElemId intern(std::string_view name);
  std::optional<ElemId> find(std::string_view name) const;
  /// The interned name, or "_<id>" for ids never interned.
  std::string name(ElemId id) const;
  std::size_t size() const { return names_.size(); }
  /// Gives `id` a generated "_<id>" name unless it already has one.
  void name_fresh(ElemId id);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ElemId> ids_;
  std::unordered_map<std::uint32_t, std::string> extra_;
};

/// Parses the text format. Throws ParseError with a line number on syntax
/// errors and on structural errors (unknown ids, sort clashes). The result
/// is not validated against the selector axioms.
FinStructure parse_structure(std::string_view text, SymbolTable& symbols);
FinStructure load_structure(const std::string& path, SymbolTable& symbols);

/// Canonical text. Eval entries equal to the class's least member are
/// omitted, so parse(print(s)) == s for every structure.
std::string print_structure(const FinStructure& s, const SymbolTable& symbols);
void save_structure(const std::string& path, const FinStructure& s,
                    const SymbolTable& symbols);

/// Whitespace-separated names resolved against `symbols`. Throws DomainError
/// for unknown names.
std::vector<ElemId> resolve_names(std::string_view names,
                                  const SymbolTable& symbols);

/// Is `text` an identifier: [A-Za-z_][A-Za-z0-9_]*.
bool is_identifier(std::string_view text);

}  // namespace kimlab
