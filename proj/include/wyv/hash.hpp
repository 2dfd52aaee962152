#pragma once

#include <openssl/evp.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wyv/ast.hpp"
#include "wyv/printer.hpp"

namespace wyv {

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

namespace alpha_detail {

/// Renames program variables to canonical names (p0.., l0.., g0.., q0..)
/// in declaration order. Method and invariant names are kept: they are
/// semantic (invariant names key the obligation namespace).
class Normalizer {
 public:
  ExprPtr expr(const ExprPtr& e) {
    auto c = std::make_shared<Expr>(*e);
    c->pos = {};
    switch (e->kind) {
      case Expr::Kind::Var: {
        auto it = names_.find(e->name);
        if (it != names_.end()) c->name = it->second;
        break;
      }
      case Expr::Kind::Quant: {
        std::string fresh = "q" + std::to_string(quantCount_++);
        auto saved = names_;
        names_[e->name] = fresh;
        c->name = fresh;
        c->kids = {expr(e->kids[0])};
        names_ = std::move(saved);
        return c;
      }
      default:
        break;
    }
    if (e->kind != Expr::Kind::Quant) {
      c->kids.clear();
      for (const auto& k : e->kids) c->kids.push_back(expr(k));
    }
    return c;
  }

  StmtPtr stmt(const StmtPtr& s) {
    auto c = std::make_shared<Stmt>(*s);
    c->pos = {};
    switch (s->kind) {
      case Stmt::Kind::VarDecl:
        c->exprs = {expr(s->expr())};
        bind(s->name, "l", c->name);
        return c;
      case Stmt::Kind::GhostAssign:
        c->exprs = {expr(s->expr())};
        if (!names_.count(s->name)) bind(s->name, "g", c->name);
        else c->name = names_[s->name];
        return c;
      case Stmt::Kind::Assign:
      case Stmt::Kind::ArrayStore:
      case Stmt::Kind::Call:
        c->name = names_.count(s->name) ? names_[s->name] : s->name;
        break;
      default:
        break;
    }
    c->exprs.clear();
    for (const auto& e : s->exprs) c->exprs.push_back(expr(e));
    c->stmts.clear();
    for (const auto& sub : s->stmts) c->stmts.push_back(stmt(sub));
    c->invariants.clear();
    for (const auto& inv : s->invariants)
      c->invariants.push_back({inv.name, expr(inv.formula), {}});
    if (s->decreasing) c->decreasing = expr(s->decreasing);
    return c;
  }

  void bind(const std::string& orig, const char* prefix, std::string& out) {
    std::string fresh = prefix + std::to_string(localCount_++);
    names_[orig] = fresh;
    out = fresh;
  }

  std::map<std::string, std::string> names_;
  int localCount_ = 0;
  int quantCount_ = 0;
};

}  // namespace alpha_detail

/// Canonical alpha-renamed copy of a method: parameters become p0..pn,
/// the return name r, locals/ghosts l*/g* in declaration order, quantifier
/// binders q*. Positions are dropped.
inline MethodDecl alpha_normalize(const MethodDecl& m) {
  alpha_detail::Normalizer n;
  MethodDecl out;
  out.name = m.name;
  for (size_t i = 0; i < m.params.size(); ++i) {
    std::string fresh = "p" + std::to_string(i);
    n.names_[m.params[i].name] = fresh;
    out.params.push_back({fresh, m.params[i].type, {}});
  }
  n.names_[m.ret.name] = "r";
  out.ret = {"r", m.ret.type, {}};
  for (const auto& r : m.requires_) out.requires_.push_back(n.expr(r));
  for (const auto& e : m.ensures_) out.ensures_.push_back(n.expr(e));
  out.body = n.stmt(m.body);
  return out;
}

/// Deterministic digest of the alpha-normalized AST. Whitespace- and
/// comment-insensitive by construction (hashes the canonical printing of
/// the normalized tree).
inline std::string hash_method(const MethodDecl& m) {
  return sha256_hex(pretty_print(alpha_normalize(m)));
}

/// Digest of a formula, used to key proof reuse across edits.
inline std::string digest_formula(const ExprPtr& f) {
  return sha256_hex(to_sexpr(f));
}

}  // namespace wyv
