#pragma once

// Text form of diagrams (.qf files). One literal per line, '#' comments,
// optional leading declaration lines "vars x:F y:O".
//
//   literal := ['!'] atom
//   atom    := term '=' term | 'E(' term ',' term ')'
//   term    := ident | 'eval(' term {',' term} ';' term ')'
//
// Also accepted: "s != t", the atoms "O(t)" / "F(t)", and eval without ';'
// (the last argument is then the object argument). Identifiers that are not
// declared variables are constants, interned in the symbol table.

#include <string>
#include <string_view>
#include <vector>

#include "kimlab/term.hpp"

namespace kimlab {

class SymbolTable;

Diagram parse_diagram(std::string_view text, SymbolTable& symbols);
Diagram load_diagram(const std::string& path, SymbolTable& symbols);

/// Parses a single literal against the given variable declarations.
Literal parse_literal(std::string_view text, const std::vector<VarDecl>& vars,
                      SymbolTable& symbols);

/// Shorthand for building templates in code: `vars` uses the declaration
/// syntax ("x:F y:O z:O"), `literals` holds one literal per line, and
/// `params` names the parameter variables.
Template make_template(std::string_view vars, std::string_view literals,
                      std::vector<std::string> params, SymbolTable& symbols);

std::string print_diagram(const Diagram& d, const SymbolTable& symbols);

/// Parses "x:F y:O" declarations.
std::vector<VarDecl> parse_var_decls(std::string_view text);

}  // namespace kimlab
