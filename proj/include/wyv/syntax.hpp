#pragma once

// Front door for the language layer: lexing, parsing, printing, checking,
// hashing.

#include "wyv/ast.hpp"
#include "wyv/hash.hpp"
#include "wyv/lexer.hpp"
#include "wyv/parser.hpp"
#include "wyv/printer.hpp"
#include "wyv/typecheck.hpp"

namespace wyv {

/// Parses and type-checks a source containing exactly one method.
/// Throws ParseError / TypeError / ContractError.
inline MethodDecl parse_method(const std::string& src, const MethodEnv& env = {}) {
  MethodDecl m = parse_method_source(src);
  typecheck_method(m, env);
  return m;
}

/// Parses and type-checks a whole file.
inline Program load_program(const std::string& src) {
  Program p = parse_program(src);
  typecheck_program(p);
  return p;
}

}  // namespace wyv
