#pragma once

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wyv/syntax.hpp"

namespace testutil {

inline std::string corpus_dir() {
  const char* d = std::getenv("WYVC_CORPUS_DIR");
  return d ? d : "corpus";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> list_wyv(const std::string& dir);

/// Seeded generator of small well-typed methods, for property tests
/// (round-trip, hashing, naming determinism).
class MethodGen {
 public:
  explicit MethodGen(unsigned seed) : rng_(seed) {}

  wyv::MethodDecl method() {
    using namespace wyv;
    names_ = 0;
    intVars_ = {"x"};
    arrVars_ = {};
    MethodDecl m;
    m.name = "gen";
    m.params.push_back({"x", Type::Int, {}});
    if (flip()) {
      m.params.push_back({"xs", Type::ArrayInt, {}});
      arrVars_.push_back("xs");
    }
    m.ret = {"r", Type::Int, {}};
    if (flip()) m.requires_.push_back(boolExpr(2, true));
    m.ensures_.push_back(boolExpr(2, true, /*withRet=*/true));
    std::vector<StmtPtr> body;
    body.push_back(mk::var_decl("a0", true, intExpr(2), {}));
    intVars_.push_back("a0");
    int extra = pick(3);
    for (int i = 0; i < extra; ++i) body.push_back(stmt());
    body.push_back(mk::ret(intExpr(2), {}));
    m.body = mk::seq(std::move(body), {});
    typecheck_method(m);
    return m;
  }

 private:
  std::mt19937 rng_;
  int names_ = 0;
  std::vector<std::string> intVars_;
  std::vector<std::string> arrVars_;

  bool flip() { return rng_() % 2 == 0; }
  int pick(int n) { return static_cast<int>(rng_() % n); }

  std::string freshName() { return "a" + std::to_string(++names_); }

  wyv::ExprPtr intExpr(int depth) {
    using namespace wyv;
    if (depth == 0 || pick(3) == 0) {
      if (!intVars_.empty() && flip())
        return mk::var(intVars_[pick(static_cast<int>(intVars_.size()))]);
      return mk::int_lit(Int(pick(21) - 10));
    }
    switch (pick(5)) {
      case 0: return mk::add(intExpr(depth - 1), intExpr(depth - 1));
      case 1: return mk::sub(intExpr(depth - 1), intExpr(depth - 1));
      case 2: return mk::binary(BinOp::Mul, intExpr(depth - 1), intExpr(depth - 1));
      case 3: return mk::unary(UnOp::Neg, intExpr(depth - 1));
      default:
        if (!arrVars_.empty())
          return mk::array_len(mk::var(arrVars_[0]));
        return mk::int_lit(Int(pick(5)));
    }
  }

  wyv::ExprPtr boolExpr(int depth, bool spec, bool withRet = false) {
    using namespace wyv;
    if (depth == 0 || pick(3) == 0) {
      ExprPtr lhs = withRet && flip() ? mk::var("r") : intExpr(1);
      switch (pick(4)) {
        case 0: return mk::eq(lhs, intExpr(1));
        case 1: return mk::le(lhs, intExpr(1));
        case 2: return mk::lt(lhs, intExpr(1));
        default: return mk::ge(lhs, intExpr(1));
      }
    }
    switch (pick(4)) {
      case 0: return mk::land(boolExpr(depth - 1, spec, withRet),
                              boolExpr(depth - 1, spec, withRet));
      case 1: return mk::lor(boolExpr(depth - 1, spec, withRet),
                             boolExpr(depth - 1, spec, withRet));
      case 2: return mk::implies(boolExpr(depth - 1, spec, withRet),
                                 boolExpr(depth - 1, spec, withRet));
      default:
        if (spec)
          return mk::quant(Quantifier::Forall, "k" + std::to_string(pick(3)),
                           Type::Int, boolExpr(depth - 1, spec, false), {});
        return mk::lnot(boolExpr(depth - 1, spec, withRet));
    }
  }

  wyv::StmtPtr stmt() {
    using namespace wyv;
    switch (pick(4)) {
      case 0: {
        std::string n = freshName();
        auto s = mk::var_decl(n, true, intExpr(2), {});
        intVars_.push_back(n);
        return s;
      }
      case 1:
        return mk::assign("a0", intExpr(2), {});
      case 2:
        return mk::if_stmt(boolExpr(1, false), mk::assign("a0", intExpr(1), {}),
                           mk::skip({}), {});
      default: {
        // Small counted loop with one named invariant.
        std::string iv = freshName();
        std::string invName = "h" + iv;
        std::vector<StmtPtr> body;
        body.push_back(mk::assign(iv, mk::add(mk::var(iv), mk::int_lit(Int(1))), {}));
        auto w = mk::while_stmt(
            mk::lt(mk::var(iv), mk::int_lit(Int(pick(4)))),
            {{invName, mk::ge(mk::var(iv), mk::int_lit(Int(0))), {}}},
            mk::sub(mk::int_lit(Int(4)), mk::var(iv)),
            mk::seq(std::move(body), {}), {});
        std::vector<StmtPtr> both;
        both.push_back(mk::var_decl(iv, true, mk::int_lit(Int(0)), {}));
        both.push_back(w);
        return mk::seq(std::move(both), {});
      }
    }
  }
};

inline const char* kFig1Sum = R"(method sum_fig (xs: Array Int) returns (s: Int)
  ensures s = sum(xs)
do
  let mut s := 0
  let mut i := 0
  while i < xs.size
    invariant h : s = sum(take(xs, i)) and 0 <= i and i <= xs.size
    decreasing xs.size - i
  do
    s := s + xs[i]
    i := i + 1
  end
  return s
end
)";

}  // namespace testutil
