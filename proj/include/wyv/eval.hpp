#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wyv/ast.hpp"
#include "wyv/speclib.hpp"
#include "wyv/typecheck.hpp"
#include "wyv/value.hpp"

namespace wyv {

/// Explicit finite ranges (inclusive) for quantified variables whose bounds
/// cannot be derived from guards. Silent truncation is never performed.
using QuantBounds = std::map<std::string, std::pair<Int, Int>>;

inline constexpr long kQuantRangeCap = 1000000;

namespace eval_detail {

/// Tries to derive a finite range [lo, hi) for `var` from the conjuncts of a
/// guard formula. Bound expressions must not mention `var` and are evaluated
/// eagerly in the current state.
struct BoundMiner {
  const std::string& var;
  std::optional<Int> lo;   // inclusive
  std::optional<Int> hi;   // exclusive

  explicit BoundMiner(const std::string& v) : var(v) {}

  static bool mentions(const ExprPtr& e, const std::string& v) {
    if (e->kind == Expr::Kind::Var) return e->name == v;
    if (e->kind == Expr::Kind::Quant && e->name == v) return false;
    for (const auto& k : e->kids)
      if (mentions(k, v)) return true;
    return false;
  }

  void tightenLo(const Int& v) { if (!lo || v > *lo) lo = v; }
  void tightenHi(const Int& v) { if (!hi || v < *hi) hi = v; }
};

}  // namespace eval_detail

/// Formula/expression evaluator over concrete states.
///
/// Two modes share this machinery:
///  - specification mode (contracts, invariants, ghost code): array reads
///    are total (phantom positions read the backing default), quantifiers
///    are enumerated over derived or supplied finite ranges;
///  - executable mode (program expressions): array reads are bounds-checked
///    and division by zero is a runtime violation; both are reported
///    through the RuntimeViolation exception so the interpreter can turn
///    them into RunReport outcomes.
class Evaluator {
 public:
  struct RuntimeViolation {
    std::string kind;  // "bounds" | "div-by-zero"
    SourcePos pos;
  };

  Evaluator(const State& s, const QuantBounds& bounds, bool specMode)
      : state_(s), bounds_(bounds), spec_(specMode) {}

  Value eval(const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Kind::IntLit: return Value::ofInt(e->value);
      case Expr::Kind::BoolLit: return Value::ofBool(e->flag);
      case Expr::Kind::Var: {
        auto it = locals_.find(e->name);
        if (it != locals_.end()) return it->second;
        const Value* v = state_.lookup(e->name);
        if (!v)
          throw EvalError("unbound-variable",
                          "variable '" + e->name + "' is not bound in the state");
        return *v;
      }
      case Expr::Kind::Unary: {
        Value a = eval(e->kids[0]);
        if (e->un == UnOp::Neg) return Value::ofInt(-a.i);
        return Value::ofBool(!a.b);
      }
      case Expr::Kind::Binary: return evalBinary(e);
      case Expr::Kind::ArrayRead: {
        Value a = eval(e->kids[0]);
        Value i = eval(e->kids[1]);
        if (!spec_ && !a.arr.inBounds(i.i))
          throw RuntimeViolation{"bounds", e->pos};
        return Value::ofInt(a.arr.read(i.i));
      }
      case Expr::Kind::ArrayLen:
        return Value::ofInt(eval(e->kids[0]).arr.len);
      case Expr::Kind::Store: {
        Value a = eval(e->kids[0]);
        Value i = eval(e->kids[1]);
        Value v = eval(e->kids[2]);
        ArrayVal r = a.arr;
        if (i.i >= 0 && i.i < Int(r.dense.size())) {
          r.dense[static_cast<size_t>(i.i)] = v.i;
        } else {
          r.sparse[i.i] = v.i;
        }
        return Value::ofArray(std::move(r));
      }
      case Expr::Kind::SpecCall: {
        std::vector<Value> args;
        args.reserve(e->kids.size());
        for (const auto& k : e->kids) args.push_back(eval(k));
        return spec_eval(e->name, args);
      }
      case Expr::Kind::Quant: return evalQuant(e);
    }
    throw EvalError("bad-expression", "unhandled expression kind");
  }

  bool evalBool(const ExprPtr& e) { return eval(e).b; }

 private:
  const State& state_;
  const QuantBounds& bounds_;
  bool spec_;
  std::map<std::string, Value> locals_;  // quantifier bindings

  Value evalBinary(const ExprPtr& e) {
    // Connectives short-circuit so that guards protect their bodies, the
    // same reading the solver encoding gives guarded formulas.
    switch (e->bin) {
      case BinOp::And:
        return Value::ofBool(evalBool(e->kids[0]) && evalBool(e->kids[1]));
      case BinOp::Or:
        return Value::ofBool(evalBool(e->kids[0]) || evalBool(e->kids[1]));
      case BinOp::Implies:
        return Value::ofBool(!evalBool(e->kids[0]) || evalBool(e->kids[1]));
      case BinOp::Iff:
        return Value::ofBool(evalBool(e->kids[0]) == evalBool(e->kids[1]));
      default:
        break;
    }
    Value a = eval(e->kids[0]);
    Value b = eval(e->kids[1]);
    switch (e->bin) {
      case BinOp::Add: return Value::ofInt(a.i + b.i);
      case BinOp::Sub: return Value::ofInt(a.i - b.i);
      case BinOp::Mul: return Value::ofInt(a.i * b.i);
      case BinOp::Div:
        if (b.i == 0) {
          if (!spec_) throw RuntimeViolation{"div-by-zero", e->pos};
          throw EvalError("div-by-zero", "division by zero in specification");
        }
        return Value::ofInt(euclid_div(a.i, b.i));
      case BinOp::Mod:
        if (b.i == 0) {
          if (!spec_) throw RuntimeViolation{"div-by-zero", e->pos};
          throw EvalError("div-by-zero", "modulo by zero in specification");
        }
        return Value::ofInt(euclid_mod(a.i, b.i));
      case BinOp::Eq: return Value::ofBool(a == b);
      case BinOp::Ne: return Value::ofBool(!(a == b));
      case BinOp::Lt: return Value::ofBool(a.i < b.i);
      case BinOp::Le: return Value::ofBool(a.i <= b.i);
      case BinOp::Gt: return Value::ofBool(a.i > b.i);
      case BinOp::Ge: return Value::ofBool(a.i >= b.i);
      default:
        throw EvalError("bad-operator", "unhandled operator");
    }
  }

  Value evalQuant(const ExprPtr& e) {
    if (e->varType != Type::Int)
      throw EvalError("unbounded-quantifier",
                      "cannot enumerate a non-Int quantifier");
    bool isForall = e->quant == Quantifier::Forall;
    const ExprPtr& body = e->kids[0];

    // Mine guards for a finite range.
    eval_detail::BoundMiner miner(e->name);
    const ExprPtr* guard = nullptr;
    if (isForall && body->kind == Expr::Kind::Binary &&
        body->bin == BinOp::Implies)
      guard = &body->kids[0];
    if (!isForall) guard = &body;  // exists: the body conjunction bounds it
    if (guard) mineConjuncts(*guard, miner);

    Int lo, hiExcl;
    if (miner.lo && miner.hi) {
      lo = *miner.lo;
      hiExcl = *miner.hi;
    } else {
      auto it = bounds_.find(e->name);
      if (it == bounds_.end())
        throw EvalError("unbounded-quantifier",
                        "no finite range derivable for '" + e->name + "'");
      lo = it->second.first;
      hiExcl = it->second.second + 1;  // supplied bounds are inclusive
    }
    if (hiExcl - lo > kQuantRangeCap)
      throw EvalError("unbounded-quantifier",
                      "quantifier range too large for '" + e->name + "'");
    for (Int k = lo; k < hiExcl; ++k) {
      auto saved = locals_.find(e->name) != locals_.end()
                       ? std::optional<Value>(locals_[e->name])
                       : std::nullopt;
      locals_[e->name] = Value::ofInt(k);
      bool v = evalBool(body);
      if (saved) locals_[e->name] = *saved;
      else locals_.erase(e->name);
      if (isForall && !v) return Value::ofBool(false);
      if (!isForall && v) return Value::ofBool(true);
    }
    return Value::ofBool(isForall);
  }

  void mineConjuncts(const ExprPtr& g, eval_detail::BoundMiner& m) {
    if (g->kind == Expr::Kind::Binary && g->bin == BinOp::And) {
      mineConjuncts(g->kids[0], m);
      mineConjuncts(g->kids[1], m);
      return;
    }
    if (g->kind != Expr::Kind::Binary) return;
    const ExprPtr& a = g->kids[0];
    const ExprPtr& b = g->kids[1];
    bool aIsVar = a->kind == Expr::Kind::Var && a->name == m.var;
    bool bIsVar = b->kind == Expr::Kind::Var && b->name == m.var;
    auto evalSide = [&](const ExprPtr& e) -> std::optional<Int> {
      if (eval_detail::BoundMiner::mentions(e, m.var)) return std::nullopt;
      try {
        return eval(e).i;
      } catch (const EvalError&) {
        return std::nullopt;
      }
    };
    if (aIsVar && !bIsVar) {
      auto v = evalSide(b);
      if (!v) return;
      switch (g->bin) {
        case BinOp::Lt: m.tightenHi(*v); break;
        case BinOp::Le: m.tightenHi(*v + 1); break;
        case BinOp::Gt: m.tightenLo(*v + 1); break;
        case BinOp::Ge: m.tightenLo(*v); break;
        case BinOp::Eq: m.tightenLo(*v); m.tightenHi(*v + 1); break;
        default: break;
      }
    } else if (bIsVar && !aIsVar) {
      auto v = evalSide(a);
      if (!v) return;
      switch (g->bin) {
        case BinOp::Lt: m.tightenLo(*v + 1); break;
        case BinOp::Le: m.tightenLo(*v); break;
        case BinOp::Gt: m.tightenHi(*v); break;
        case BinOp::Ge: m.tightenHi(*v + 1); break;
        case BinOp::Eq: m.tightenLo(*v); m.tightenHi(*v + 1); break;
        default: break;
      }
    }
  }
};

/// Evaluates a closed-over-state formula. Throws EvalError when no finite
/// quantifier range is derivable or supplied.
inline bool eval_formula(const Formula& f, const State& s,
                         const QuantBounds& bounds = {}) {
  Evaluator ev(s, bounds, /*specMode=*/true);
  return ev.evalBool(f);
}

// ---------------------------------------------------------------------------
// Reference interpreter with dynamic contract checking.
// ---------------------------------------------------------------------------

struct RunReport {
  enum class Outcome { Returned, ContractViolation, FuelExhausted };
  Outcome outcome = Outcome::Returned;
  Value returned;

  // ContractViolation payload.
  std::string violationKind;  // requires | ensures | invariant-entry |
                              // invariant-preservation | decreasing-nonneg |
                              // decreasing-strict | assert | bounds |
                              // div-by-zero
  std::string violationDetail;  // e.g. the invariant name
  SourcePos location;
  State snapshot;

  long steps = 0;
  long checkedAnnotations = 0;

  bool ok() const { return outcome == Outcome::Returned; }
};

namespace interp_detail {

struct Frames {
  long fuel;
  long steps = 0;
  long checked = 0;
};

class Interp {
 public:
  Interp(const MethodEnv& env, const QuantBounds& bounds, Frames& fr)
      : env_(env), bounds_(bounds), fr_(fr) {}

  struct Violation {
    std::string kind;
    std::string detail;
    SourcePos pos;
    State snapshot;
  };
  struct Fuel {};

  Value run(const MethodDecl& m, const std::vector<Value>& args) {
    State st;
    if (args.size() != m.params.size())
      throw EvalError("bad-arguments", "argument count mismatch for '" + m.name + "'");
    for (size_t i = 0; i < args.size(); ++i)
      st.env[m.params[i].name] = args[i];
    checkContracts(m.requires_, st, "requires", m.pos);
    std::optional<Value> ret = exec(m.body, st, m);
    if (!ret)
      throw EvalError("no-return", "method '" + m.name + "' did not return");
    State post = st;
    post.env[m.ret.name] = *ret;
    checkContracts(m.ensures_, post, "ensures", m.pos);
    return *ret;
  }

 private:
  const MethodEnv& env_;
  const QuantBounds& bounds_;
  Frames& fr_;

  void checkContracts(const std::vector<Formula>& fs, const State& st,
                      const char* kind, SourcePos pos) {
    for (const auto& f : fs) {
      ++fr_.checked;
      if (!eval_formula(f, st, bounds_))
        throw Violation{kind, "", f->pos.line ? f->pos : pos, st};
    }
  }

  Value evalExec(const ExprPtr& e, const State& st) {
    Evaluator ev(st, bounds_, /*specMode=*/false);
    try {
      return ev.eval(e);
    } catch (const Evaluator::RuntimeViolation& rv) {
      throw Violation{rv.kind, "", rv.pos, st};
    }
  }

  bool evalSpec(const ExprPtr& f, const State& st) {
    ++fr_.checked;
    return eval_formula(f, st, bounds_);
  }

  /// Executes a statement; returns the method result when a return runs.
  std::optional<Value> exec(const StmtPtr& s, State& st, const MethodDecl& m) {
    ++fr_.steps;
    switch (s->kind) {
      case Stmt::Kind::Skip: return std::nullopt;
      case Stmt::Kind::VarDecl:
      case Stmt::Kind::Assign:
        st.env[s->name] = evalExec(s->expr(), st);
        return std::nullopt;
      case Stmt::Kind::ArrayStore: {
        Value idx = evalExec(s->index(), st);
        Value val = evalExec(s->storeValue(), st);
        Value& a = st.env[s->name];
        if (!a.arr.inBounds(idx.i)) throw Violation{"bounds", "", s->pos, st};
        a.arr.dense[static_cast<size_t>(idx.i)] = val.i;
        return std::nullopt;
      }
      case Stmt::Kind::If:
        if (evalExec(s->cond(), st).b) return exec(s->thenBranch(), st, m);
        return exec(s->elseBranch(), st, m);
      case Stmt::Kind::While: return execWhile(s, st, m);
      case Stmt::Kind::Seq:
        for (const auto& sub : s->stmts) {
          auto r = exec(sub, st, m);
          if (r) return r;
        }
        return std::nullopt;
      case Stmt::Kind::Return: return evalExec(s->expr(), st);
      case Stmt::Kind::GhostAssign: {
        Evaluator ev(st, bounds_, /*specMode=*/true);
        st.ghostEnv[s->name] = ev.eval(s->expr());
        return std::nullopt;
      }
      case Stmt::Kind::Call: {
        auto it = env_.find(s->callee);
        if (it == env_.end())
          throw EvalError("unknown-method", "unknown method '" + s->callee + "'");
        std::vector<Value> args;
        for (const auto& a : s->exprs) args.push_back(evalExec(a, st));
        Interp sub(env_, bounds_, fr_);
        st.env[s->name] = sub.run(*it->second, args);
        return std::nullopt;
      }
      case Stmt::Kind::Assert:
        if (!evalSpec(s->expr(), st)) throw Violation{"assert", "", s->pos, st};
        return std::nullopt;
    }
    return std::nullopt;
  }

  std::optional<Value> execWhile(const StmtPtr& s, State& st,
                                 const MethodDecl& m) {
    // Invariants hold at every loop-head visit: checked once at entry and
    // after each body execution. The decreasing measure is checked
    // nonnegative whenever an iteration is about to run and strictly
    // smaller after the body, mirroring the dec.* proof obligations.
    for (const auto& inv : s->invariants)
      if (!evalSpec(inv.formula, st))
        throw Violation{"invariant-entry", inv.name, inv.pos, st};
    while (true) {
      if (!evalExec(s->cond(), st).b) return std::nullopt;
      ++fr_.checked;
      Evaluator ev(st, bounds_, /*specMode=*/true);
      Int d0 = ev.eval(s->decreasing).i;
      if (d0 < 0)
        throw Violation{"decreasing-nonneg", "", s->decreasing->pos, st};
      if (fr_.fuel-- <= 0) throw Fuel{};
      auto r = exec(s->body(), st, m);
      if (r) return r;  // unreachable: returns are rejected inside loops
      for (const auto& inv : s->invariants)
        if (!evalSpec(inv.formula, st))
          throw Violation{"invariant-preservation", inv.name, inv.pos, st};
      ++fr_.checked;
      Evaluator ev2(st, bounds_, /*specMode=*/true);
      Int d1 = ev2.eval(s->decreasing).i;
      if (!(d1 < d0))
        throw Violation{"decreasing-strict", "", s->decreasing->pos, st};
    }
  }
};

}  // namespace interp_detail

/// Runs a method on concrete arguments with dynamic contract checking.
/// `fuel` bounds the total number of loop iterations across the run
/// (including callees).
inline RunReport eval_method(const MethodDecl& m, const std::vector<Value>& args,
                             long fuel = 100000, const MethodEnv& env = {},
                             const QuantBounds& bounds = {}) {
  interp_detail::Frames fr{fuel};
  RunReport rep;
  try {
    interp_detail::Interp interp(env, bounds, fr);
    rep.returned = interp.run(m, args);
    rep.outcome = RunReport::Outcome::Returned;
  } catch (const interp_detail::Interp::Violation& v) {
    rep.outcome = RunReport::Outcome::ContractViolation;
    rep.violationKind = v.kind;
    rep.violationDetail = v.detail;
    rep.location = v.pos;
    rep.snapshot = v.snapshot;
  } catch (const interp_detail::Interp::Fuel&) {
    rep.outcome = RunReport::Outcome::FuelExhausted;
  }
  rep.steps = fr.steps;
  rep.checkedAnnotations = fr.checked;
  return rep;
}

}  // namespace wyv
