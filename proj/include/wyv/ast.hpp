#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wyv/bigint.hpp"
#include "wyv/diag.hpp"

namespace wyv {

enum class Type { Int, Bool, ArrayInt };

inline const char* type_name(Type t) {
  switch (t) {
    case Type::Int: return "Int";
    case Type::Bool: return "Bool";
    case Type::ArrayInt: return "Array Int";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Expressions.
//
// One node type serves both executable expressions and assertion formulas.
// Quantifiers, spec-function applications and array-store terms only make
// sense in specification positions; the typechecker accepts them anywhere
// well-typed and the imperativeness judge flags them in executable code, so
// leaky programs can be represented, verified, and rejected by the judge.
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class UnOp { Neg, Not };

enum class BinOp {
  Add, Sub, Mul, Div, Mod,
  Eq, Ne, Lt, Le, Gt, Ge,
  And, Or, Implies, Iff,
};

enum class Quantifier { Forall, Exists };

struct Expr {
  enum class Kind {
    IntLit,     // value
    BoolLit,    // flag
    Var,        // name
    Unary,      // un, kids[0]
    Binary,     // bin, kids[0], kids[1]
    ArrayRead,  // kids[0][kids[1]]
    ArrayLen,   // kids[0].size
    Store,      // store(kids[0], kids[1], kids[2])  (formula-level term)
    SpecCall,   // name(kids...)
    Quant,      // quant name : varType, kids[0]
  };

  Kind kind;
  SourcePos pos;

  Int value;           // IntLit
  bool flag = false;   // BoolLit
  std::string name;    // Var, SpecCall, Quant bound variable
  UnOp un{};           // Unary
  BinOp bin{};         // Binary
  Quantifier quant{};  // Quant
  Type varType{};      // Quant bound variable type
  std::vector<ExprPtr> kids;

  explicit Expr(Kind k) : kind(k) {}
};

namespace mk {

inline ExprPtr int_lit(Int v, SourcePos p = {}) {
  auto e = std::make_shared<Expr>(Expr::Kind::IntLit);
  e->value = std::move(v);
  e->pos = p;
  return e;
}
inline ExprPtr bool_lit(bool b, SourcePos p = {}) {
  auto e = std::make_shared<Expr>(Expr::Kind::BoolLit);
  e->flag = b;
  e->pos = p;
  return e;
}
inline ExprPtr var(std::string n, SourcePos p = {}) {
  auto e = std::make_shared<Expr>(Expr::Kind::Var);
  e->name = std::move(n);
  e->pos = p;
  return e;
}
inline ExprPtr unary(UnOp op, ExprPtr a, SourcePos p = {}) {
  // Canonical form: a negated integer literal is a negative literal.
  if (op == UnOp::Neg && a->kind == Expr::Kind::IntLit)
    return int_lit(-a->value, p);
  auto e = std::make_shared<Expr>(Expr::Kind::Unary);
  e->un = op;
  e->kids = {std::move(a)};
  e->pos = p;
  return e;
}
inline ExprPtr binary(BinOp op, ExprPtr a, ExprPtr b, SourcePos p = {}) {
  auto e = std::make_shared<Expr>(Expr::Kind::Binary);
  e->bin = op;
  e->kids = {std::move(a), std::move(b)};
  e->pos = p;
  return e;
}
inline ExprPtr array_read(ExprPtr a, ExprPtr i, SourcePos p = {}) {
  auto e = std::make_shared<Expr>(Expr::Kind::ArrayRead);
  e->kids = {std::move(a), std::move(i)};
  e->pos = p;
  return e;
}
inline ExprPtr array_len(ExprPtr a, SourcePos p = {}) {
  auto e = std::make_shared<Expr>(Expr::Kind::ArrayLen);
  e->kids = {std::move(a)};
  e->pos = p;
  return e;
}
inline ExprPtr store(ExprPtr a, ExprPtr i, ExprPtr v, SourcePos p = {}) {
  auto e = std::make_shared<Expr>(Expr::Kind::Store);
  e->kids = {std::move(a), std::move(i), std::move(v)};
  e->pos = p;
  return e;
}
inline ExprPtr spec_call(std::string fn, std::vector<ExprPtr> args,
                         SourcePos p = {}) {
  auto e = std::make_shared<Expr>(Expr::Kind::SpecCall);
  e->name = std::move(fn);
  e->kids = std::move(args);
  e->pos = p;
  return e;
}
inline ExprPtr quant(Quantifier q, std::string v, Type t, ExprPtr body,
                     SourcePos p = {}) {
  auto e = std::make_shared<Expr>(Expr::Kind::Quant);
  e->quant = q;
  e->name = std::move(v);
  e->varType = t;
  e->kids = {std::move(body)};
  e->pos = p;
  return e;
}

inline ExprPtr land(ExprPtr a, ExprPtr b) { return binary(BinOp::And, std::move(a), std::move(b)); }
inline ExprPtr lor(ExprPtr a, ExprPtr b) { return binary(BinOp::Or, std::move(a), std::move(b)); }
inline ExprPtr implies(ExprPtr a, ExprPtr b) { return binary(BinOp::Implies, std::move(a), std::move(b)); }
inline ExprPtr lnot(ExprPtr a) { return unary(UnOp::Not, std::move(a)); }
inline ExprPtr eq(ExprPtr a, ExprPtr b) { return binary(BinOp::Eq, std::move(a), std::move(b)); }
inline ExprPtr le(ExprPtr a, ExprPtr b) { return binary(BinOp::Le, std::move(a), std::move(b)); }
inline ExprPtr lt(ExprPtr a, ExprPtr b) { return binary(BinOp::Lt, std::move(a), std::move(b)); }
inline ExprPtr ge(ExprPtr a, ExprPtr b) { return binary(BinOp::Ge, std::move(a), std::move(b)); }
inline ExprPtr gt(ExprPtr a, ExprPtr b) { return binary(BinOp::Gt, std::move(a), std::move(b)); }
inline ExprPtr add(ExprPtr a, ExprPtr b) { return binary(BinOp::Add, std::move(a), std::move(b)); }
inline ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(BinOp::Sub, std::move(a), std::move(b)); }

/// Conjunction of a clause list; empty list is `true`.
inline ExprPtr conj(const std::vector<ExprPtr>& fs) {
  if (fs.empty()) return bool_lit(true);
  ExprPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = land(acc, fs[i]);
  return acc;
}

}  // namespace mk

/// A formula is an Expr used in an assertion position.
using Formula = ExprPtr;

inline bool is_true_lit(const ExprPtr& e) {
  return e->kind == Expr::Kind::BoolLit && e->flag;
}

/// Structural equality, position-insensitive.
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::IntLit:
      if (a->value != b->value) return false;
      break;
    case Expr::Kind::BoolLit:
      if (a->flag != b->flag) return false;
      break;
    case Expr::Kind::Var:
    case Expr::Kind::SpecCall:
      if (a->name != b->name) return false;
      break;
    case Expr::Kind::Unary:
      if (a->un != b->un) return false;
      break;
    case Expr::Kind::Binary:
      if (a->bin != b->bin) return false;
      break;
    case Expr::Kind::Quant:
      if (a->quant != b->quant || a->name != b->name || a->varType != b->varType)
        return false;
      break;
    default:
      break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!expr_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Statements.
// ---------------------------------------------------------------------------

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct NamedInvariant {
  std::string name;
  Formula formula;
  SourcePos pos;
};

struct Stmt {
  enum class Kind {
    Skip,
    VarDecl,     // name, mutable_, expr()
    Assign,      // name, expr()
    ArrayStore,  // name, index(), expr()
    If,          // cond(), thenBranch, elseBranch
    While,       // cond(), invariants, decreasing, body
    Seq,         // stmts
    Return,      // expr()
    GhostAssign, // name, expr()
    Call,        // name (target), callee, args
    Assert,      // formula()
  };

  Kind kind;
  SourcePos pos;

  std::string name;     // VarDecl/Assign/ArrayStore/GhostAssign target, Call target
  std::string callee;   // Call
  bool mutable_ = false;  // VarDecl
  std::vector<ExprPtr> exprs;  // per-kind payload, see accessors
  std::vector<StmtPtr> stmts;  // Seq / If branches / While body
  std::vector<NamedInvariant> invariants;  // While
  ExprPtr decreasing;                      // While

  explicit Stmt(Kind k) : kind(k) {}

  const ExprPtr& expr() const { return exprs.at(0); }
  const ExprPtr& cond() const { return exprs.at(0); }
  const ExprPtr& index() const { return exprs.at(1); }       // ArrayStore
  const ExprPtr& storeValue() const { return exprs.at(0); }  // ArrayStore
  const StmtPtr& thenBranch() const { return stmts.at(0); }
  const StmtPtr& elseBranch() const { return stmts.at(1); }
  const StmtPtr& body() const { return stmts.at(0); }
};

namespace mk {

inline StmtPtr skip(SourcePos p = {}) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::Skip);
  s->pos = p;
  return s;
}
inline StmtPtr var_decl(std::string n, bool mut, ExprPtr e, SourcePos p = {}) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::VarDecl);
  s->name = std::move(n);
  s->mutable_ = mut;
  s->exprs = {std::move(e)};
  s->pos = p;
  return s;
}
inline StmtPtr assign(std::string n, ExprPtr e, SourcePos p = {}) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::Assign);
  s->name = std::move(n);
  s->exprs = {std::move(e)};
  s->pos = p;
  return s;
}
inline StmtPtr array_store(std::string n, ExprPtr idx, ExprPtr val,
                           SourcePos p = {}) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::ArrayStore);
  s->name = std::move(n);
  s->exprs = {std::move(val), std::move(idx)};
  s->pos = p;
  return s;
}
inline StmtPtr if_stmt(ExprPtr c, StmtPtr t, StmtPtr e, SourcePos p = {}) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::If);
  s->exprs = {std::move(c)};
  s->stmts = {std::move(t), std::move(e)};
  s->pos = p;
  return s;
}
inline StmtPtr while_stmt(ExprPtr c, std::vector<NamedInvariant> invs,
                          ExprPtr dec, StmtPtr body, SourcePos p = {}) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::While);
  s->exprs = {std::move(c)};
  s->invariants = std::move(invs);
  s->decreasing = std::move(dec);
  s->stmts = {std::move(body)};
  s->pos = p;
  return s;
}
inline StmtPtr seq(std::vector<StmtPtr> ss, SourcePos p = {}) {
  // Canonical form: sequences are flat and never wrap a single statement,
  // matching what the parser produces.
  std::vector<StmtPtr> flat;
  for (auto& s : ss) {
    if (s->kind == Stmt::Kind::Seq)
      flat.insert(flat.end(), s->stmts.begin(), s->stmts.end());
    else
      flat.push_back(std::move(s));
  }
  if (flat.size() == 1) return flat[0];
  auto s = std::make_shared<Stmt>(Stmt::Kind::Seq);
  s->stmts = std::move(flat);
  s->pos = p;
  return s;
}
inline StmtPtr ret(ExprPtr e, SourcePos p = {}) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::Return);
  s->exprs = {std::move(e)};
  s->pos = p;
  return s;
}
inline StmtPtr ghost_assign(std::string n, ExprPtr e, SourcePos p = {}) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::GhostAssign);
  s->name = std::move(n);
  s->exprs = {std::move(e)};
  s->pos = p;
  return s;
}
inline StmtPtr call(std::string target, std::string callee,
                    std::vector<ExprPtr> args, SourcePos p = {}) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::Call);
  s->name = std::move(target);
  s->callee = std::move(callee);
  s->exprs = std::move(args);
  s->pos = p;
  return s;
}
inline StmtPtr assert_stmt(Formula f, SourcePos p = {}) {
  auto s = std::make_shared<Stmt>(Stmt::Kind::Assert);
  s->exprs = {std::move(f)};
  s->pos = p;
  return s;
}

}  // namespace mk

inline bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->name != b->name || a->callee != b->callee ||
      a->mutable_ != b->mutable_)
    return false;
  if (a->exprs.size() != b->exprs.size() || a->stmts.size() != b->stmts.size() ||
      a->invariants.size() != b->invariants.size())
    return false;
  for (size_t i = 0; i < a->exprs.size(); ++i)
    if (!expr_equal(a->exprs[i], b->exprs[i])) return false;
  for (size_t i = 0; i < a->invariants.size(); ++i) {
    if (a->invariants[i].name != b->invariants[i].name) return false;
    if (!expr_equal(a->invariants[i].formula, b->invariants[i].formula))
      return false;
  }
  if ((a->decreasing == nullptr) != (b->decreasing == nullptr)) return false;
  if (a->decreasing && !expr_equal(a->decreasing, b->decreasing)) return false;
  for (size_t i = 0; i < a->stmts.size(); ++i)
    if (!stmt_equal(a->stmts[i], b->stmts[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Methods and programs.
// ---------------------------------------------------------------------------

struct Param {
  std::string name;
  Type type{};
  SourcePos pos;
};

struct MethodDecl {
  std::string name;
  std::vector<Param> params;
  Param ret;
  std::vector<Formula> requires_;
  std::vector<Formula> ensures_;
  StmtPtr body;
  SourcePos pos;
};

inline bool method_equal(const MethodDecl& a, const MethodDecl& b) {
  if (a.name != b.name || a.params.size() != b.params.size()) return false;
  for (size_t i = 0; i < a.params.size(); ++i)
    if (a.params[i].name != b.params[i].name || a.params[i].type != b.params[i].type)
      return false;
  if (a.ret.name != b.ret.name || a.ret.type != b.ret.type) return false;
  if (a.requires_.size() != b.requires_.size() ||
      a.ensures_.size() != b.ensures_.size())
    return false;
  for (size_t i = 0; i < a.requires_.size(); ++i)
    if (!expr_equal(a.requires_[i], b.requires_[i])) return false;
  for (size_t i = 0; i < a.ensures_.size(); ++i)
    if (!expr_equal(a.ensures_[i], b.ensures_[i])) return false;
  return stmt_equal(a.body, b.body);
}

/// A source file: one or more methods; later methods may call earlier ones.
struct Program {
  std::vector<MethodDecl> methods;

  const MethodDecl* find(const std::string& name) const {
    for (const auto& m : methods)
      if (m.name == name) return &m;
    return nullptr;
  }
};

}  // namespace wyv
