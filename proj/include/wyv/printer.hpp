#pragma once

#include <sstream>
#include <string>

#include "wyv/ast.hpp"

namespace wyv {

namespace detail {

inline int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Quant: return 0;
    case Expr::Kind::Binary:
      switch (e.bin) {
        case BinOp::Iff: return 1;
        case BinOp::Implies: return 2;
        case BinOp::Or: return 3;
        case BinOp::And: return 4;
        case BinOp::Eq: case BinOp::Ne: case BinOp::Lt:
        case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 6;
        case BinOp::Add: case BinOp::Sub: return 7;
        case BinOp::Mul: case BinOp::Div: case BinOp::Mod: return 8;
      }
      return 9;
    case Expr::Kind::Unary: return e.un == UnOp::Not ? 5 : 9;
    default: return 10;
  }
}

inline const char* binop_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "div";
    case BinOp::Mod: return "mod";
    case BinOp::Eq: return "=";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
    case BinOp::Implies: return "->";
    case BinOp::Iff: return "<->";
  }
  return "?";
}

inline void print_expr(std::ostream& os, const ExprPtr& e, int parentPrec) {
  int p = prec(*e);
  bool parens = p < parentPrec;
  if (parens) os << "(";
  switch (e->kind) {
    case Expr::Kind::IntLit: os << e->value; break;
    case Expr::Kind::BoolLit: os << (e->flag ? "true" : "false"); break;
    case Expr::Kind::Var: os << e->name; break;
    case Expr::Kind::Unary:
      if (e->un == UnOp::Neg) {
        // Parenthesize operands that render with a leading '-': `--` would
        // lex as a comment.
        std::ostringstream inner;
        print_expr(inner, e->kids[0], 9);
        std::string s = inner.str();
        os << "-";
        if (!s.empty() && s[0] == '-') os << "(" << s << ")";
        else os << s;
      } else {
        os << "not ";
        print_expr(os, e->kids[0], 5);
      }
      break;
    case Expr::Kind::Binary: {
      // Comparisons are non-associative; implication is right-associative.
      bool rightAssoc = e->bin == BinOp::Implies;
      int lp = rightAssoc ? p + 1 : p;
      int rp = rightAssoc ? p : p + 1;
      if (e->bin == BinOp::Iff) { lp = p; rp = p + 1; }
      print_expr(os, e->kids[0], lp);
      os << " " << binop_text(e->bin) << " ";
      print_expr(os, e->kids[1], rp);
      break;
    }
    case Expr::Kind::ArrayRead:
      print_expr(os, e->kids[0], 10);
      os << "[";
      print_expr(os, e->kids[1], 0);
      os << "]";
      break;
    case Expr::Kind::ArrayLen:
      print_expr(os, e->kids[0], 10);
      os << ".size";
      break;
    case Expr::Kind::Store:
      os << "store(";
      print_expr(os, e->kids[0], 0);
      os << ", ";
      print_expr(os, e->kids[1], 0);
      os << ", ";
      print_expr(os, e->kids[2], 0);
      os << ")";
      break;
    case Expr::Kind::SpecCall:
      os << e->name << "(";
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << ", ";
        print_expr(os, e->kids[i], 0);
      }
      os << ")";
      break;
    case Expr::Kind::Quant:
      os << (e->quant == Quantifier::Forall ? "forall " : "exists ") << e->name
         << ": " << type_name(e->varType) << ", ";
      print_expr(os, e->kids[0], 0);
      break;
  }
  if (parens) os << ")";
}

inline void indent(std::ostream& os, int n) {
  for (int i = 0; i < n; ++i) os << "  ";
}

inline void print_stmt(std::ostream& os, const StmtPtr& s, int depth) {
  switch (s->kind) {
    case Stmt::Kind::Skip:
      indent(os, depth);
      os << "skip\n";
      break;
    case Stmt::Kind::VarDecl:
      indent(os, depth);
      os << "let " << (s->mutable_ ? "mut " : "") << s->name << " := ";
      print_expr(os, s->expr(), 0);
      os << "\n";
      break;
    case Stmt::Kind::Assign:
      indent(os, depth);
      os << s->name << " := ";
      print_expr(os, s->expr(), 0);
      os << "\n";
      break;
    case Stmt::Kind::ArrayStore:
      indent(os, depth);
      os << s->name << "[";
      print_expr(os, s->index(), 0);
      os << "] := ";
      print_expr(os, s->storeValue(), 0);
      os << "\n";
      break;
    case Stmt::Kind::If:
      indent(os, depth);
      os << "if ";
      print_expr(os, s->cond(), 0);
      os << " then\n";
      print_stmt(os, s->thenBranch(), depth + 1);
      if (!(s->elseBranch()->kind == Stmt::Kind::Skip)) {
        indent(os, depth);
        os << "else\n";
        print_stmt(os, s->elseBranch(), depth + 1);
      }
      indent(os, depth);
      os << "end\n";
      break;
    case Stmt::Kind::While:
      indent(os, depth);
      os << "while ";
      print_expr(os, s->cond(), 0);
      os << "\n";
      for (const auto& inv : s->invariants) {
        indent(os, depth + 1);
        os << "invariant " << inv.name << " : ";
        print_expr(os, inv.formula, 0);
        os << "\n";
      }
      indent(os, depth + 1);
      os << "decreasing ";
      print_expr(os, s->decreasing, 0);
      os << "\n";
      indent(os, depth);
      os << "do\n";
      print_stmt(os, s->body(), depth + 1);
      indent(os, depth);
      os << "end\n";
      break;
    case Stmt::Kind::Seq:
      for (const auto& sub : s->stmts) print_stmt(os, sub, depth);
      break;
    case Stmt::Kind::Return:
      indent(os, depth);
      os << "return ";
      print_expr(os, s->expr(), 0);
      os << "\n";
      break;
    case Stmt::Kind::GhostAssign:
      indent(os, depth);
      os << "ghost " << s->name << " := ";
      print_expr(os, s->expr(), 0);
      os << "\n";
      break;
    case Stmt::Kind::Call:
      indent(os, depth);
      os << s->name << " := call " << s->callee << "(";
      for (size_t i = 0; i < s->exprs.size(); ++i) {
        if (i) os << ", ";
        print_expr(os, s->exprs[i], 0);
      }
      os << ")\n";
      break;
    case Stmt::Kind::Assert:
      indent(os, depth);
      os << "assert ";
      print_expr(os, s->expr(), 0);
      os << "\n";
      break;
  }
}

}  // namespace detail

inline std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  detail::print_expr(os, e, 0);
  return os.str();
}

/// Surface-syntax pretty printer. parse(pretty_print(m)) is structurally
/// equal to m for every well-formed method.
inline std::string pretty_print(const MethodDecl& m) {
  std::ostringstream os;
  os << "method " << m.name << " (";
  for (size_t i = 0; i < m.params.size(); ++i) {
    if (i) os << ", ";
    os << m.params[i].name << ": " << type_name(m.params[i].type);
  }
  os << ") returns (" << m.ret.name << ": " << type_name(m.ret.type) << ")\n";
  for (const auto& r : m.requires_) {
    os << "  requires ";
    detail::print_expr(os, r, 0);
    os << "\n";
  }
  for (const auto& e : m.ensures_) {
    os << "  ensures ";
    detail::print_expr(os, e, 0);
    os << "\n";
  }
  os << "do\n";
  detail::print_stmt(os, m.body, 1);
  os << "end\n";
  return os.str();
}

inline std::string pretty_print(const Program& prog) {
  std::string out;
  for (size_t i = 0; i < prog.methods.size(); ++i) {
    if (i) out += "\n";
    out += pretty_print(prog.methods[i]);
  }
  return out;
}

/// S-expression rendering of formulas, used by the JSON report surfaces.
inline void to_sexpr(std::ostream& os, const ExprPtr& e) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::IntLit:
      if (e->value < 0) os << "(- " << -e->value << ")";
      else os << e->value;
      return;
    case K::BoolLit: os << (e->flag ? "true" : "false"); return;
    case K::Var: os << e->name; return;
    case K::Unary:
      os << "(" << (e->un == UnOp::Neg ? "-" : "not") << " ";
      to_sexpr(os, e->kids[0]);
      os << ")";
      return;
    case K::Binary: {
      const char* op = nullptr;
      switch (e->bin) {
        case BinOp::Add: op = "+"; break;
        case BinOp::Sub: op = "-"; break;
        case BinOp::Mul: op = "*"; break;
        case BinOp::Div: op = "div"; break;
        case BinOp::Mod: op = "mod"; break;
        case BinOp::Eq: op = "="; break;
        case BinOp::Ne: op = "distinct"; break;
        case BinOp::Lt: op = "<"; break;
        case BinOp::Le: op = "<="; break;
        case BinOp::Gt: op = ">"; break;
        case BinOp::Ge: op = ">="; break;
        case BinOp::And: op = "and"; break;
        case BinOp::Or: op = "or"; break;
        case BinOp::Implies: op = "=>"; break;
        case BinOp::Iff: op = "="; break;
      }
      os << "(" << op << " ";
      to_sexpr(os, e->kids[0]);
      os << " ";
      to_sexpr(os, e->kids[1]);
      os << ")";
      return;
    }
    case K::ArrayRead:
      os << "(read ";
      to_sexpr(os, e->kids[0]);
      os << " ";
      to_sexpr(os, e->kids[1]);
      os << ")";
      return;
    case K::ArrayLen:
      os << "(size ";
      to_sexpr(os, e->kids[0]);
      os << ")";
      return;
    case K::Store:
      os << "(store ";
      to_sexpr(os, e->kids[0]);
      os << " ";
      to_sexpr(os, e->kids[1]);
      os << " ";
      to_sexpr(os, e->kids[2]);
      os << ")";
      return;
    case K::SpecCall:
      os << "(" << e->name;
      for (const auto& k : e->kids) {
        os << " ";
        to_sexpr(os, k);
      }
      os << ")";
      return;
    case K::Quant:
      os << "(" << (e->quant == Quantifier::Forall ? "forall" : "exists")
         << " ((" << e->name << " ";
      os << (e->varType == Type::Int ? "Int"
             : e->varType == Type::Bool ? "Bool" : "IntArr");
      os << ")) ";
      to_sexpr(os, e->kids[0]);
      os << ")";
      return;
  }
}

inline std::string to_sexpr(const ExprPtr& e) {
  std::ostringstream os;
  to_sexpr(os, e);
  return os.str();
}

}  // namespace wyv
