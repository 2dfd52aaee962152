#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wyv/ast.hpp"
#include "wyv/lexer.hpp"

namespace wyv {

/// Recursive-descent parser for the surface language (LL(2)).
/// Grammar reference: docs/grammar.md.
class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(tokenize(src)) {}

  Program parseProgram() {
    Program p;
    while (!at(Token::Kind::End)) p.methods.push_back(parseMethod());
    return p;
  }

  MethodDecl parseMethod() {
    MethodDecl m;
    m.pos = cur().pos;
    expectKw("method");
    m.name = expectIdent("method name");
    expectOp("(");
    if (!curIsOp(")")) {
      m.params.push_back(parseParam());
      while (acceptOp(",")) m.params.push_back(parseParam());
    }
    expectOp(")");
    expectKw("returns");
    expectOp("(");
    m.ret = parseParam();
    expectOp(")");
    while (true) {
      if (acceptKw("requires")) m.requires_.push_back(parseExpr());
      else if (acceptKw("ensures")) m.ensures_.push_back(parseExpr());
      else break;
    }
    expectKw("do");
    m.body = parseStmts();
    acceptBlockEnd();
    return m;
  }

  /// Entry point for parsing a standalone formula (proof store reload,
  /// agent protocol payloads, tests).
  ExprPtr parseFormulaOnly() {
    ExprPtr e = parseExpr();
    if (!at(Token::Kind::End))
      fail("trailing input after formula", {"end of input"});
    return e;
  }

  bool atEnd() const { return at(Token::Kind::End); }

 private:
  std::vector<Token> toks_;
  size_t i_ = 0;

  const Token& cur() const { return toks_[i_]; }
  const Token& peek() const { return toks_[i_ + 1 < toks_.size() ? i_ + 1 : toks_.size() - 1]; }
  bool at(Token::Kind k) const { return cur().kind == k; }
  bool curIsOp(const std::string& t) const { return cur().isOp(t); }
  bool curIsKw(const std::string& t) const { return cur().isKw(t); }
  void bump() { if (i_ + 1 < toks_.size()) ++i_; }

  [[noreturn]] void fail(const std::string& msg,
                         std::vector<std::string> expected = {}) const {
    throw ParseError(cur().pos, msg + " (found '" +
                         (cur().kind == Token::Kind::End ? "end of input" : cur().text) + "')",
                     std::move(expected));
  }

  bool acceptOp(const std::string& t) {
    if (curIsOp(t)) { bump(); return true; }
    return false;
  }
  bool acceptKw(const std::string& t) {
    if (curIsKw(t)) { bump(); return true; }
    return false;
  }
  void expectOp(const std::string& t) {
    if (!acceptOp(t)) fail("expected '" + t + "'", {t});
  }
  void expectKw(const std::string& t) {
    if (!acceptKw(t)) fail("expected '" + t + "'", {t});
  }
  std::string expectIdent(const std::string& what) {
    if (!at(Token::Kind::Ident)) fail("expected " + what, {"identifier"});
    std::string s = cur().text;
    bump();
    return s;
  }

  /// Block terminators: a closing `end` may be omitted at end of input, so
  /// one-line sources like `method id (x: Int) returns (r: Int) ... do return x`
  /// parse without trailing `end`s.
  void acceptBlockEnd() {
    if (!acceptKw("end") && !at(Token::Kind::End))
      fail("expected 'end'", {"end"});
  }

  Param parseParam() {
    Param p;
    p.pos = cur().pos;
    p.name = expectIdent("parameter name");
    expectOp(":");
    p.type = parseType();
    return p;
  }

  Type parseType() {
    if (acceptKw("Int")) return Type::Int;
    if (acceptKw("Bool")) return Type::Bool;
    if (acceptKw("Array")) {
      expectKw("Int");
      return Type::ArrayInt;
    }
    fail("expected a type", {"Int", "Bool", "Array Int"});
  }

  bool stmtStarts() const {
    if (cur().kind == Token::Kind::Ident) return true;
    return curIsKw("skip") || curIsKw("let") || curIsKw("ghost") ||
           curIsKw("if") || curIsKw("while") || curIsKw("return") ||
           curIsKw("assert") || curIsOp(";");
  }

  StmtPtr parseStmts() {
    SourcePos p = cur().pos;
    std::vector<StmtPtr> ss;
    while (stmtStarts()) {
      if (acceptOp(";")) continue;  // optional separator
      ss.push_back(parseStmt());
    }
    if (ss.size() == 1) return ss[0];
    return mk::seq(std::move(ss), p);
  }

  StmtPtr parseStmt() {
    SourcePos p = cur().pos;
    if (acceptKw("skip")) return mk::skip(p);
    if (acceptKw("let")) {
      bool mut = acceptKw("mut");
      std::string n = expectIdent("variable name");
      expectOp(":=");
      return mk::var_decl(n, mut, parseExpr(), p);
    }
    if (acceptKw("ghost")) {
      std::string n = expectIdent("ghost variable name");
      expectOp(":=");
      return mk::ghost_assign(n, parseExpr(), p);
    }
    if (acceptKw("return")) return mk::ret(parseExpr(), p);
    if (acceptKw("assert")) return mk::assert_stmt(parseExpr(), p);
    if (acceptKw("if")) {
      ExprPtr c = parseExpr();
      expectKw("then");
      StmtPtr t = parseStmts();
      StmtPtr e = acceptKw("else") ? parseStmts() : mk::skip(p);
      acceptBlockEnd();
      return mk::if_stmt(std::move(c), std::move(t), std::move(e), p);
    }
    if (acceptKw("while")) return parseWhile(p);
    if (at(Token::Kind::Ident)) {
      std::string n = cur().text;
      if (peek().isOp(":=")) {
        bump();
        bump();
        if (acceptKw("call")) {
          std::string callee = expectIdent("callee name");
          expectOp("(");
          std::vector<ExprPtr> args;
          if (!curIsOp(")")) {
            args.push_back(parseExpr());
            while (acceptOp(",")) args.push_back(parseExpr());
          }
          expectOp(")");
          return mk::call(n, callee, std::move(args), p);
        }
        return mk::assign(n, parseExpr(), p);
      }
      if (peek().isOp("[")) {
        bump();
        bump();
        ExprPtr idx = parseExpr();
        expectOp("]");
        expectOp(":=");
        return mk::array_store(n, std::move(idx), parseExpr(), p);
      }
      fail("expected ':=' or '[' after identifier", {":=", "["});
    }
    fail("expected a statement");
  }

  StmtPtr parseWhile(SourcePos p) {
    ExprPtr cond = parseExpr();
    std::vector<NamedInvariant> invs;
    ExprPtr dec;
    std::set<std::string> seen;
    while (true) {
      if (acceptKw("invariant")) {
        SourcePos ip = cur().pos;
        if (!(at(Token::Kind::Ident) && peek().isOp(":")))
          throw ContractError(ip, "loop invariant requires a name: "
                                  "'invariant <name> : <formula>'");
        std::string n = cur().text;
        bump();
        bump();
        if (!seen.insert(n).second)
          throw ContractError(ip, "duplicate invariant name '" + n + "' in loop");
        invs.push_back({n, parseExpr(), ip});
      } else if (curIsKw("decreasing")) {
        SourcePos dp = cur().pos;
        bump();
        if (dec) throw ContractError(dp, "loop has more than one decreasing clause");
        dec = parseExpr();
      } else {
        break;
      }
    }
    if (!dec)
      throw ContractError(p, "while loop is missing a decreasing clause");
    expectKw("do");
    StmtPtr body = parseStmts();
    acceptBlockEnd();
    return mk::while_stmt(std::move(cond), std::move(invs), std::move(dec),
                          std::move(body), p);
  }

  // --- expressions / formulas ----------------------------------------------

  ExprPtr parseExpr() { return parseQuant(); }

  ExprPtr parseQuant() {
    SourcePos p = cur().pos;
    if (curIsKw("forall") || curIsKw("exists")) {
      Quantifier q = curIsKw("forall") ? Quantifier::Forall : Quantifier::Exists;
      bump();
      std::string v = expectIdent("quantified variable");
      Type t = Type::Int;
      if (acceptOp(":")) t = parseType();
      expectOp(",");
      return mk::quant(q, v, t, parseQuant(), p);
    }
    return parseIff();
  }

  ExprPtr parseIff() {
    ExprPtr a = parseImplies();
    while (curIsOp("<->")) {
      SourcePos p = cur().pos;
      bump();
      a = mk::binary(BinOp::Iff, a, parseImplies(), p);
    }
    return a;
  }

  ExprPtr parseImplies() {
    ExprPtr a = parseOr();
    if (curIsOp("->")) {
      SourcePos p = cur().pos;
      bump();
      return mk::binary(BinOp::Implies, a, parseImplies(), p);  // right assoc
    }
    return a;
  }

  ExprPtr parseOr() {
    ExprPtr a = parseAnd();
    while (curIsKw("or")) {
      SourcePos p = cur().pos;
      bump();
      a = mk::binary(BinOp::Or, a, parseAnd(), p);
    }
    return a;
  }

  ExprPtr parseAnd() {
    ExprPtr a = parseNot();
    while (curIsKw("and")) {
      SourcePos p = cur().pos;
      bump();
      a = mk::binary(BinOp::And, a, parseNot(), p);
    }
    return a;
  }

  ExprPtr parseNot() {
    if (curIsKw("not")) {
      SourcePos p = cur().pos;
      bump();
      return mk::unary(UnOp::Not, parseNot(), p);
    }
    return parseCmp();
  }

  ExprPtr parseCmp() {
    ExprPtr a = parseAdd();
    struct { const char* t; BinOp op; } table[] = {
        {"=", BinOp::Eq}, {"!=", BinOp::Ne}, {"<=", BinOp::Le},
        {"<", BinOp::Lt}, {">=", BinOp::Ge}, {">", BinOp::Gt},
    };
    for (auto& e : table) {
      if (curIsOp(e.t)) {
        SourcePos p = cur().pos;
        bump();
        return mk::binary(e.op, a, parseAdd(), p);  // comparisons don't chain
      }
    }
    return a;
  }

  ExprPtr parseAdd() {
    ExprPtr a = parseMul();
    while (curIsOp("+") || curIsOp("-")) {
      BinOp op = curIsOp("+") ? BinOp::Add : BinOp::Sub;
      SourcePos p = cur().pos;
      bump();
      a = mk::binary(op, a, parseMul(), p);
    }
    return a;
  }

  ExprPtr parseMul() {
    ExprPtr a = parseUnary();
    while (curIsOp("*") || curIsKw("div") || curIsKw("mod")) {
      BinOp op = curIsOp("*") ? BinOp::Mul
                 : curIsKw("div") ? BinOp::Div : BinOp::Mod;
      SourcePos p = cur().pos;
      bump();
      a = mk::binary(op, a, parseUnary(), p);
    }
    return a;
  }

  ExprPtr parseUnary() {
    if (curIsOp("-")) {
      SourcePos p = cur().pos;
      bump();
      return mk::unary(UnOp::Neg, parseUnary(), p);
    }
    return parsePostfix();
  }

  ExprPtr parsePostfix() {
    ExprPtr a = parseAtom();
    while (true) {
      if (curIsOp("[")) {
        SourcePos p = cur().pos;
        bump();
        ExprPtr idx = parseExpr();
        expectOp("]");
        a = mk::array_read(a, idx, p);
        continue;
      }
      if (curIsOp(".")) {
        SourcePos p = cur().pos;
        bump();
        std::string field = expectIdent("'size'");
        if (field != "size") fail("unknown postfix '." + field + "'", {"size"});
        a = mk::array_len(a, p);
        continue;
      }
      break;
    }
    return a;
  }

  ExprPtr parseAtom() {
    SourcePos p = cur().pos;
    if (at(Token::Kind::IntLit)) {
      Int v(cur().text);
      bump();
      return mk::int_lit(v, p);
    }
    if (acceptKw("true")) return mk::bool_lit(true, p);
    if (acceptKw("false")) return mk::bool_lit(false, p);
    if (acceptKw("store")) {
      expectOp("(");
      ExprPtr a = parseExpr();
      expectOp(",");
      ExprPtr i = parseExpr();
      expectOp(",");
      ExprPtr v = parseExpr();
      expectOp(")");
      return mk::store(a, i, v, p);
    }
    if (acceptOp("(")) {
      ExprPtr e = parseExpr();
      expectOp(")");
      return e;
    }
    if (at(Token::Kind::Ident)) {
      std::string n = cur().text;
      if (peek().isOp("(")) {
        bump();
        bump();
        std::vector<ExprPtr> args;
        if (!curIsOp(")")) {
          args.push_back(parseExpr());
          while (acceptOp(",")) args.push_back(parseExpr());
        }
        expectOp(")");
        return mk::spec_call(n, std::move(args), p);
      }
      bump();
      return mk::var(n, p);
    }
    fail("expected an expression");
  }
};

inline Program parse_program(const std::string& src) {
  return Parser(src).parseProgram();
}

/// Parses a source containing exactly one method.
inline MethodDecl parse_method_source(const std::string& src) {
  Parser ps(src);
  MethodDecl m = ps.parseMethod();
  if (!ps.atEnd())
    throw ParseError(SourcePos{}, "trailing input after method '" + m.name + "'");
  return m;
}

inline ExprPtr parse_formula(const std::string& src) {
  return Parser(src).parseFormulaOnly();
}

}  // namespace wyv
