#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "wyv/ast.hpp"
#include "wyv/speclib.hpp"

namespace wyv {

/// Callable methods in scope, by name. Callees must be defined earlier in
/// the file than their callers, so call chains are acyclic.
using MethodEnv = std::map<std::string, const MethodDecl*>;

namespace tc_detail {

struct VarInfo {
  Type type{};
  bool mutable_ = false;
  bool ghost = false;
};

class Checker {
 public:
  Checker(const MethodDecl& m, const MethodEnv& env) : m_(m), env_(env) {}

  void run() {
    reserveName(m_.name, m_.pos);
    std::set<std::string> names;
    for (const auto& p : m_.params) {
      reserveName(p.name, p.pos);
      if (!names.insert(p.name).second)
        throw TypeError(p.pos, "duplicate parameter '" + p.name + "'");
    }
    reserveName(m_.ret.name, m_.ret.pos);
    if (names.count(m_.ret.name))
      throw TypeError(m_.ret.pos, "return identifier '" + m_.ret.name +
                                      "' collides with a parameter");

    scopes_.emplace_back();
    for (const auto& p : m_.params) scopes_.back()[p.name] = {p.type, false, false};

    // requires sees the parameters; ensures additionally sees the return name.
    for (const auto& r : m_.requires_) expectType(r, Type::Bool, /*spec=*/true);
    scopes_.emplace_back();
    scopes_.back()[m_.ret.name] = {m_.ret.type, false, false};
    for (const auto& e : m_.ensures_) expectType(e, Type::Bool, /*spec=*/true);
    scopes_.pop_back();

    collectInvariantNames(m_.body);
    bool terminates = checkStmt(m_.body, /*insideLoop=*/false);
    if (!terminates)
      throw ContractError(m_.pos, "method '" + m_.name +
                                      "' must end in a return on every path");
  }

 private:
  const MethodDecl& m_;
  const MethodEnv& env_;
  std::vector<std::map<std::string, VarInfo>> scopes_;
  std::set<std::string> invariantNames_;

  static void reserveName(const std::string& n, SourcePos p) {
    if (spec_lookup(n))
      throw TypeError(p, "identifier '" + n +
                             "' shadows a spec-library function");
  }

  const VarInfo* lookup(const std::string& n) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(n);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  void declare(const std::string& n, VarInfo info, SourcePos p) {
    reserveName(n, p);
    if (scopes_.back().count(n))
      throw TypeError(p, "redeclaration of '" + n + "'");
    for (const auto& prm : m_.params)
      if (prm.name == n)
        throw TypeError(p, "'" + n + "' shadows a parameter");
    if (const VarInfo* prev = lookup(n)) {
      if (prev->ghost != info.ghost)
        throw TypeError(p, "'" + n + "' already declared in the other "
                           "(ghost/program) namespace");
      throw TypeError(p, "'" + n + "' shadows an enclosing declaration");
    }
    scopes_.back()[n] = info;
  }

  void collectInvariantNames(const StmtPtr& s) {
    if (s->kind == Stmt::Kind::While) {
      for (const auto& inv : s->invariants) {
        if (!invariantNames_.insert(inv.name).second)
          throw ContractError(inv.pos,
                              "invariant name '" + inv.name +
                                  "' is reused by another loop; obligation "
                                  "names must be unique per method");
      }
    }
    for (const auto& sub : s->stmts) collectInvariantNames(sub);
  }

  // --- expressions ---

  Type typeOf(const ExprPtr& e, bool spec) {
    switch (e->kind) {
      case Expr::Kind::IntLit: return Type::Int;
      case Expr::Kind::BoolLit: return Type::Bool;
      case Expr::Kind::Var: {
        const VarInfo* v = lookup(e->name);
        if (!v) throw TypeError(e->pos, "undeclared identifier '" + e->name + "'");
        if (v->ghost && !spec)
          throw TypeError(e->pos, "ghost variable '" + e->name +
                                      "' read by executable code");
        return v->type;
      }
      case Expr::Kind::Unary: {
        Type t = typeOf(e->kids[0], spec);
        if (e->un == UnOp::Neg) {
          if (t != Type::Int) throw TypeError(e->pos, "'-' needs an Int operand");
          return Type::Int;
        }
        if (t != Type::Bool) throw TypeError(e->pos, "'not' needs a Bool operand");
        return Type::Bool;
      }
      case Expr::Kind::Binary: {
        Type a = typeOf(e->kids[0], spec);
        Type b = typeOf(e->kids[1], spec);
        switch (e->bin) {
          case BinOp::Add: case BinOp::Sub: case BinOp::Mul:
          case BinOp::Div: case BinOp::Mod:
            if (a != Type::Int || b != Type::Int)
              throw TypeError(e->pos, "arithmetic needs Int operands");
            return Type::Int;
          case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge:
            if (a != Type::Int || b != Type::Int)
              throw TypeError(e->pos, "comparison needs Int operands");
            return Type::Bool;
          case BinOp::Eq: case BinOp::Ne:
            if (a != b)
              throw TypeError(e->pos, "equality needs operands of one type");
            return Type::Bool;
          case BinOp::And: case BinOp::Or: case BinOp::Implies: case BinOp::Iff:
            if (a != Type::Bool || b != Type::Bool)
              throw TypeError(e->pos, "connective needs Bool operands");
            return Type::Bool;
        }
        throw TypeError(e->pos, "bad operator");
      }
      case Expr::Kind::ArrayRead: {
        if (typeOf(e->kids[0], spec) != Type::ArrayInt)
          throw TypeError(e->pos, "indexing needs an Array Int");
        if (typeOf(e->kids[1], spec) != Type::Int)
          throw TypeError(e->pos, "index must be Int");
        return Type::Int;
      }
      case Expr::Kind::ArrayLen:
        if (typeOf(e->kids[0], spec) != Type::ArrayInt)
          throw TypeError(e->pos, "'.size' needs an Array Int");
        return Type::Int;
      case Expr::Kind::Store:
        if (typeOf(e->kids[0], spec) != Type::ArrayInt ||
            typeOf(e->kids[1], spec) != Type::Int ||
            typeOf(e->kids[2], spec) != Type::Int)
          throw TypeError(e->pos, "store needs (Array Int, Int, Int)");
        return Type::ArrayInt;
      case Expr::Kind::SpecCall: {
        const SpecSig* sig = spec_lookup(e->name);
        if (!sig)
          throw TypeError(e->pos, "unknown spec function '" + e->name + "'");
        if (sig->params.size() != e->kids.size())
          throw TypeError(e->pos, "'" + e->name + "' expects " +
                                      std::to_string(sig->params.size()) +
                                      " arguments");
        for (size_t i = 0; i < sig->params.size(); ++i)
          if (typeOf(e->kids[i], spec) != sig->params[i])
            throw TypeError(e->kids[i]->pos,
                            "argument " + std::to_string(i + 1) + " of '" +
                                e->name + "' has the wrong type");
        return sig->ret;
      }
      case Expr::Kind::Quant: {
        reserveName(e->name, e->pos);
        scopes_.emplace_back();
        scopes_.back()[e->name] = {e->varType, false, false};
        Type t = typeOf(e->kids[0], spec);
        scopes_.pop_back();
        if (t != Type::Bool)
          throw TypeError(e->pos, "quantifier body must be Bool");
        return Type::Bool;
      }
    }
    throw TypeError(e->pos, "bad expression");
  }

  void expectType(const ExprPtr& e, Type t, bool spec) {
    Type got = typeOf(e, spec);
    if (got != t)
      throw TypeError(e->pos, std::string("expected ") + type_name(t) +
                                  ", got " + type_name(got));
  }

  // --- statements ---

  static bool containsReturn(const StmtPtr& s) {
    if (s->kind == Stmt::Kind::Return) return true;
    for (const auto& sub : s->stmts)
      if (containsReturn(sub)) return true;
    return false;
  }

  /// Checks one statement; returns true iff every control path through it
  /// ends in a return.
  bool checkStmt(const StmtPtr& s, bool insideLoop) {
    switch (s->kind) {
      case Stmt::Kind::Skip: return false;
      case Stmt::Kind::VarDecl: {
        Type t = typeOf(s->expr(), /*spec=*/false);
        declare(s->name, {t, s->mutable_, false}, s->pos);
        return false;
      }
      case Stmt::Kind::Assign: {
        const VarInfo* v = lookup(s->name);
        if (!v) throw TypeError(s->pos, "undeclared identifier '" + s->name + "'");
        if (v->ghost)
          throw TypeError(s->pos, "use 'ghost " + s->name + " := ...' to "
                                  "assign a ghost variable");
        if (!v->mutable_)
          throw TypeError(s->pos, "'" + s->name + "' is not mutable");
        expectType(s->expr(), v->type, /*spec=*/false);
        return false;
      }
      case Stmt::Kind::ArrayStore: {
        const VarInfo* v = lookup(s->name);
        if (!v) throw TypeError(s->pos, "undeclared identifier '" + s->name + "'");
        if (v->ghost || v->type != Type::ArrayInt || !v->mutable_)
          throw TypeError(s->pos, "'" + s->name +
                                      "' is not a mutable Array Int");
        expectType(s->index(), Type::Int, false);
        expectType(s->storeValue(), Type::Int, false);
        return false;
      }
      case Stmt::Kind::If: {
        expectType(s->cond(), Type::Bool, /*spec=*/false);
        scopes_.emplace_back();
        bool t = checkStmt(s->thenBranch(), insideLoop);
        scopes_.pop_back();
        scopes_.emplace_back();
        bool e = checkStmt(s->elseBranch(), insideLoop);
        scopes_.pop_back();
        return t && e;
      }
      case Stmt::Kind::While: {
        expectType(s->cond(), Type::Bool, /*spec=*/false);
        for (const auto& inv : s->invariants)
          expectType(inv.formula, Type::Bool, /*spec=*/true);
        expectType(s->decreasing, Type::Int, /*spec=*/true);
        if (containsReturn(s->body()))
          throw ContractError(s->pos,
                              "return is not allowed inside a while body");
        scopes_.emplace_back();
        checkStmt(s->body(), /*insideLoop=*/true);
        scopes_.pop_back();
        return false;
      }
      case Stmt::Kind::Seq: {
        for (size_t i = 0; i < s->stmts.size(); ++i) {
          bool term = checkStmt(s->stmts[i], insideLoop);
          if (term && i + 1 < s->stmts.size())
            throw ContractError(s->stmts[i + 1]->pos,
                                "unreachable statement after return");
          if (i + 1 == s->stmts.size()) return term;
        }
        return false;
      }
      case Stmt::Kind::Return:
        expectType(s->expr(), m_.ret.type, /*spec=*/false);
        return true;
      case Stmt::Kind::GhostAssign: {
        Type t = typeOf(s->expr(), /*spec=*/true);
        if (const VarInfo* v = lookup(s->name)) {
          if (!v->ghost)
            throw TypeError(s->pos, "'" + s->name +
                                        "' is a program variable, not ghost");
          if (v->type != t)
            throw TypeError(s->pos, "ghost assignment changes the type of '" +
                                        s->name + "'");
        } else {
          declare(s->name, {t, true, true}, s->pos);
        }
        return false;
      }
      case Stmt::Kind::Call: {
        auto it = env_.find(s->callee);
        if (it == env_.end())
          throw TypeError(s->pos, "unknown method '" + s->callee +
                                      "' (callees must be defined earlier "
                                      "in the file)");
        const MethodDecl* callee = it->second;
        const VarInfo* v = lookup(s->name);
        if (!v) throw TypeError(s->pos, "undeclared identifier '" + s->name + "'");
        if (v->ghost || !v->mutable_)
          throw TypeError(s->pos, "call target '" + s->name +
                                      "' must be a mutable program variable");
        if (v->type != callee->ret.type)
          throw TypeError(s->pos, "call target type does not match '" +
                                      s->callee + "' return type");
        if (s->exprs.size() != callee->params.size())
          throw TypeError(s->pos, "'" + s->callee + "' expects " +
                                      std::to_string(callee->params.size()) +
                                      " arguments");
        for (size_t i = 0; i < s->exprs.size(); ++i)
          expectType(s->exprs[i], callee->params[i].type, /*spec=*/false);
        return false;
      }
      case Stmt::Kind::Assert:
        expectType(s->expr(), Type::Bool, /*spec=*/true);
        return false;
    }
    throw TypeError(s->pos, "bad statement");
  }
};

}  // namespace tc_detail

/// Type- and contract-checks one method against the callable environment.
/// Throws TypeError / ContractError.
inline void typecheck_method(const MethodDecl& m, const MethodEnv& env = {}) {
  tc_detail::Checker(m, env).run();
}

/// Checks a whole file; methods may call previously defined methods.
inline MethodEnv typecheck_program(const Program& p) {
  MethodEnv env;
  for (const auto& m : p.methods) {
    if (env.count(m.name))
      throw TypeError(m.pos, "duplicate method '" + m.name + "'");
    typecheck_method(m, env);
    env[m.name] = &m;
  }
  return env;
}

}  // namespace wyv
