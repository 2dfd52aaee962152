#pragma once

#include <cctype>
#include <string>
#include <unordered_set>
#include <vector>

#include "wyv/diag.hpp"

namespace wyv {

struct Token {
  enum class Kind { Ident, Keyword, IntLit, Op, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;

  bool is(Kind k, const std::string& t) const { return kind == k && text == t; }
  bool isKw(const std::string& t) const { return is(Kind::Keyword, t); }
  bool isOp(const std::string& t) const { return is(Kind::Op, t); }
};

inline const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> kws = {
      "method", "returns", "requires", "ensures", "do", "end",
      "let", "mut", "ghost", "while", "invariant", "decreasing",
      "if", "then", "else", "skip", "return", "assert", "call",
      "true", "false", "forall", "exists", "and", "or", "not",
      "div", "mod", "Int", "Bool", "Array", "store",
  };
  return kws;
}

/// Tokenizes the whole input. Comments run from `--` to end of line.
/// Identifiers are ASCII [A-Za-z_][A-Za-z0-9_']*.
inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto pos = [&] { return SourcePos{line, col}; };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') { ++line; col = 1; } else { ++col; }
      ++i;
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.pos = pos();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::IntLit;
      t.text = src.substr(i, j - i);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
              src[j] == '\''))
        ++j;
      t.text = src.substr(i, j - i);
      t.kind = keywords().count(t.text) ? Token::Kind::Keyword : Token::Kind::Ident;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    // Multi-char operators first; longest match.
    static const char* ops3[] = {"<->"};
    static const char* ops2[] = {":=", "<=", ">=", "!=", "->"};
    static const char* ops1[] = {"+", "-", "*", "=", "<", ">", "(", ")",
                                 "[", "]", ",", ":", ".", ";"};
    bool matched = false;
    for (const char* o : ops3) {
      if (src.compare(i, 3, o) == 0) {
        t.kind = Token::Kind::Op; t.text = o; advance(3);
        out.push_back(std::move(t)); matched = true; break;
      }
    }
    if (matched) continue;
    for (const char* o : ops2) {
      if (src.compare(i, 2, o) == 0) {
        t.kind = Token::Kind::Op; t.text = o; advance(2);
        out.push_back(std::move(t)); matched = true; break;
      }
    }
    if (matched) continue;
    for (const char* o : ops1) {
      if (src.compare(i, 1, o) == 0) {
        t.kind = Token::Kind::Op; t.text = o; advance(1);
        out.push_back(std::move(t)); matched = true; break;
      }
    }
    if (matched) continue;
    throw ParseError(t.pos, std::string("unexpected character '") + c + "'");
  }
  Token eof;
  eof.kind = Token::Kind::End;
  eof.pos = pos();
  out.push_back(eof);
  return out;
}

}  // namespace wyv
