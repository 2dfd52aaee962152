#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wyv/ast.hpp"
#include "wyv/diag.hpp"
#include "wyv/value.hpp"

namespace wyv {

class EvalError : public std::runtime_error {
 public:
  EvalError(std::string reason, const std::string& msg)
      : std::runtime_error(msg), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

/// Iteration guard for specification evaluation: reference definitions
/// recurse on an integer argument that programs can make arbitrarily large
/// (e.g. sum(take(xs, n)) with a huge n). Beyond the cap evaluation refuses
/// rather than hanging.
inline constexpr long kSpecEvalCap = 200000;

inline long spec_range(const Int& n) {
  if (n > kSpecEvalCap)
    throw EvalError("range-too-large",
                    "specification evaluation range exceeds cap");
  return n <= 0 ? 0 : static_cast<long>(n);
}

struct SpecSig {
  std::string name;
  std::vector<Type> params;
  Type ret;
};

/// The fixed spec-function library: sum, take, count, min, max, sortedUpTo,
/// occurrences. Reference definitions recurse structurally on a
/// natural-number argument and agree with the solver-side encodings,
/// including reads past an array's physical extent (phantom positions).
inline const std::vector<SpecSig>& spec_signatures() {
  static const std::vector<SpecSig> sigs = {
      {"sum", {Type::ArrayInt}, Type::Int},
      {"take", {Type::ArrayInt, Type::Int}, Type::ArrayInt},
      {"count", {Type::ArrayInt, Type::Int}, Type::Int},
      {"min", {Type::ArrayInt, Type::Int}, Type::Int},
      {"max", {Type::ArrayInt, Type::Int}, Type::Int},
      {"sortedUpTo", {Type::ArrayInt, Type::Int}, Type::Bool},
      {"occurrences", {Type::ArrayInt, Type::Int, Type::Int}, Type::Int},
  };
  return sigs;
}

inline const SpecSig* spec_lookup(const std::string& name) {
  for (const auto& s : spec_signatures())
    if (s.name == name) return &s;
  return nullptr;
}

// --- reference evaluation ---------------------------------------------------

inline Int spec_sum_upto(const ArrayVal& a, const Int& n) {
  long m = spec_range(n);
  Int acc = 0;
  for (long i = 0; i < m; ++i) acc += a.read(i);
  return acc;
}

inline ArrayVal spec_take(const ArrayVal& a, const Int& n) {
  ArrayVal r = a;
  r.len = n < 0 ? Int(0) : n;
  return r;
}

inline Int spec_occurrences(const ArrayVal& a, const Int& v, const Int& n) {
  long m = spec_range(n);
  Int acc = 0;
  for (long i = 0; i < m; ++i)
    if (a.read(i) == v) ++acc;
  return acc;
}

inline Int spec_min_prefix(const ArrayVal& a, const Int& n) {
  long m = spec_range(n);
  Int best = a.read(0);
  for (long i = 1; i < m; ++i) {
    Int x = a.read(i);
    if (x < best) best = x;
  }
  return best;
}

inline Int spec_max_prefix(const ArrayVal& a, const Int& n) {
  long m = spec_range(n);
  Int best = a.read(0);
  for (long i = 1; i < m; ++i) {
    Int x = a.read(i);
    if (x > best) best = x;
  }
  return best;
}

inline bool spec_sorted_upto(const ArrayVal& a, const Int& n) {
  long m = spec_range(n);
  for (long i = 1; i < m; ++i)
    if (a.read(i - 1) > a.read(i)) return false;
  return true;
}

inline Value spec_eval(const std::string& name, const std::vector<Value>& args) {
  if (name == "sum") return Value::ofInt(spec_sum_upto(args[0].arr, args[0].arr.len));
  if (name == "take") return Value::ofArray(spec_take(args[0].arr, args[1].i));
  if (name == "count")
    return Value::ofInt(spec_occurrences(args[0].arr, args[1].i, args[0].arr.len));
  if (name == "min") return Value::ofInt(spec_min_prefix(args[0].arr, args[1].i));
  if (name == "max") return Value::ofInt(spec_max_prefix(args[0].arr, args[1].i));
  if (name == "sortedUpTo")
    return Value::ofBool(spec_sorted_upto(args[0].arr, args[1].i));
  if (name == "occurrences")
    return Value::ofInt(spec_occurrences(args[0].arr, args[1].i, args[2].i));
  throw EvalError("unknown-spec-function", "unknown spec function '" + name + "'");
}

// --- solver-side definitions ------------------------------------------------

/// SMT-LIB preamble shared by every emitted script: the array datatype and
/// the recursive definitions of the whole library. Deterministic text.
inline std::string spec_smt_definitions() {
  return
      "(declare-datatypes ((IntArr 0)) "
      "(((mk-arr (arrof (Array Int Int)) (lenof Int)))))\n"
      "(define-fun take ((a IntArr) (n Int)) IntArr "
      "(mk-arr (arrof a) (ite (< n 0) 0 n)))\n"
      "(define-fun-rec sum-upto ((a IntArr) (n Int)) Int "
      "(ite (<= n 0) 0 (+ (sum-upto a (- n 1)) (select (arrof a) (- n 1)))))\n"
      "(define-fun sum ((a IntArr)) Int (sum-upto a (lenof a)))\n"
      "(define-fun-rec occurrences ((a IntArr) (v Int) (n Int)) Int "
      "(ite (<= n 0) 0 (+ (occurrences a v (- n 1)) "
      "(ite (= (select (arrof a) (- n 1)) v) 1 0))))\n"
      "(define-fun count ((a IntArr) (v Int)) Int (occurrences a v (lenof a)))\n"
      "(define-fun-rec min ((a IntArr) (n Int)) Int "
      "(ite (<= n 1) (select (arrof a) 0) "
      "(let ((m (min a (- n 1))) (x (select (arrof a) (- n 1)))) "
      "(ite (<= m x) m x))))\n"
      "(define-fun-rec max ((a IntArr) (n Int)) Int "
      "(ite (<= n 1) (select (arrof a) 0) "
      "(let ((m (max a (- n 1))) (x (select (arrof a) (- n 1)))) "
      "(ite (>= m x) m x))))\n"
      "(define-fun-rec sortedUpTo ((a IntArr) (n Int)) Bool "
      "(ite (<= n 1) true (and (sortedUpTo a (- n 1)) "
      "(<= (select (arrof a) (- n 2)) (select (arrof a) (- n 1))))))\n";
}

// --- lemma library -----------------------------------------------------------

struct SpecLemma {
  std::string name;
  Formula formula;  // closed: every variable universally quantified
};

namespace lemma_detail {

using namespace mk;

inline ExprPtr v(const char* n) { return var(n); }

inline Formula forall_arr_int(const char* a, const char* i, ExprPtr body) {
  return quant(Quantifier::Forall, a, Type::ArrayInt,
               quant(Quantifier::Forall, i, Type::Int, std::move(body)));
}
inline Formula forall_arr_int_int(const char* a, const char* i, const char* j,
                                  ExprPtr body) {
  return quant(Quantifier::Forall, a, Type::ArrayInt,
               quant(Quantifier::Forall, i, Type::Int,
                     quant(Quantifier::Forall, j, Type::Int, std::move(body))));
}

inline ExprPtr sum_take(ExprPtr a, ExprPtr n) {
  return spec_call("sum", {spec_call("take", {std::move(a), std::move(n)})});
}

}  // namespace lemma_detail

/// The shipped lemma set. Each member is validated by exhaustive evaluation
/// (validate_library) before it may be asserted as a solver hypothesis.
inline const std::vector<SpecLemma>& spec_lemmas() {
  using namespace mk;
  using namespace lemma_detail;
  static const std::vector<SpecLemma> lemmas = [] {
    std::vector<SpecLemma> ls;
    auto xs = [] { return var("xs"); };
    auto i = [] { return var("i"); };
    auto vv = [] { return var("v"); };
    auto one = [] { return int_lit(1); };
    auto zero = [] { return int_lit(0); };

    // sum(take(xs, n)) = 0 for n <= 0.
    ls.push_back({"sum_take_zero",
                  forall_arr_int("xs", "i",
                                 implies(le(i(), zero()),
                                         eq(sum_take(xs(), i()), zero())))});
    // Prefix-sum extension: 0 <= i -> sum(take(xs, i+1)) = sum(take(xs, i)) + xs[i].
    ls.push_back({"sum_take_step",
                  forall_arr_int(
                      "xs", "i",
                      implies(le(zero(), i()),
                              eq(sum_take(xs(), add(i(), one())),
                                 add(sum_take(xs(), i()),
                                     array_read(xs(), i())))))});
    // i = xs.size -> sum(take(xs, i)) = sum(xs).
    ls.push_back({"sum_take_full",
                  forall_arr_int(
                      "xs", "i",
                      implies(eq(i(), array_len(xs())),
                              eq(sum_take(xs(), i()),
                                 spec_call("sum", {xs()}))))});
    // count(xs, v) = occurrences(xs, v, xs.size).
    ls.push_back({"count_is_occurrences",
                  forall_arr_int(
                      "xs", "v",
                      eq(spec_call("count", {xs(), vv()}),
                         spec_call("occurrences", {xs(), vv(), array_len(xs())})))});
    // occurrences(xs, v, n) = 0 for n <= 0.
    ls.push_back({"occurrences_zero",
                  forall_arr_int_int(
                      "xs", "v", "i",
                      implies(le(i(), zero()),
                              eq(spec_call("occurrences", {xs(), vv(), i()}),
                                 zero())))});
    // Occurrence counting extends one element at a time.
    ls.push_back(
        {"occurrences_step",
         forall_arr_int_int(
             "xs", "v", "i",
             implies(
                 le(zero(), i()),
                 land(implies(eq(array_read(xs(), i()), vv()),
                              eq(spec_call("occurrences",
                                           {xs(), vv(), add(i(), one())}),
                                 add(spec_call("occurrences", {xs(), vv(), i()}),
                                     one()))),
                      implies(binary(BinOp::Ne, array_read(xs(), i()), vv()),
                              eq(spec_call("occurrences",
                                           {xs(), vv(), add(i(), one())}),
                                 spec_call("occurrences",
                                           {xs(), vv(), i()}))))))});
    // max over a one-element prefix.
    ls.push_back({"max_one",
                  forall_arr_int("xs", "i",
                                 implies(le(i(), one()),
                                         eq(spec_call("max", {xs(), i()}),
                                            array_read(xs(), zero()))))});
    // Step rule for max.
    ls.push_back(
        {"max_step",
         forall_arr_int(
             "xs", "i",
             implies(
                 le(one(), i()),
                 land(implies(ge(spec_call("max", {xs(), i()}),
                                 array_read(xs(), i())),
                              eq(spec_call("max", {xs(), add(i(), one())}),
                                 spec_call("max", {xs(), i()}))),
                      implies(lt(spec_call("max", {xs(), i()}),
                                 array_read(xs(), i())),
                              eq(spec_call("max", {xs(), add(i(), one())}),
                                 array_read(xs(), i()))))))});
    // The last element of a prefix never exceeds the prefix max.
    ls.push_back({"max_last",
                  forall_arr_int(
                      "xs", "i",
                      implies(le(one(), i()),
                              le(array_read(xs(), sub(i(), one())),
                                 spec_call("max", {xs(), i()}))))});
    // Prefix max is monotone in the prefix length.
    ls.push_back({"max_mono",
                  forall_arr_int(
                      "xs", "i",
                      implies(le(one(), i()),
                              le(spec_call("max", {xs(), i()}),
                                 spec_call("max", {xs(), add(i(), one())}))))});
    // min mirrors.
    ls.push_back({"min_one",
                  forall_arr_int("xs", "i",
                                 implies(le(i(), one()),
                                         eq(spec_call("min", {xs(), i()}),
                                            array_read(xs(), zero()))))});
    ls.push_back(
        {"min_step",
         forall_arr_int(
             "xs", "i",
             implies(
                 le(one(), i()),
                 land(implies(le(spec_call("min", {xs(), i()}),
                                 array_read(xs(), i())),
                              eq(spec_call("min", {xs(), add(i(), one())}),
                                 spec_call("min", {xs(), i()}))),
                      implies(gt(spec_call("min", {xs(), i()}),
                                 array_read(xs(), i())),
                              eq(spec_call("min", {xs(), add(i(), one())}),
                                 array_read(xs(), i()))))))});
    // sortedUpTo base and step.
    ls.push_back({"sorted_trivial",
                  forall_arr_int("xs", "i",
                                 implies(le(i(), one()),
                                         spec_call("sortedUpTo", {xs(), i()})))});
    ls.push_back(
        {"sorted_step",
         forall_arr_int(
             "xs", "i",
             implies(le(one(), i()),
                     binary(BinOp::Iff,
                            spec_call("sortedUpTo", {xs(), add(i(), one())}),
                            land(spec_call("sortedUpTo", {xs(), i()}),
                                 le(array_read(xs(), sub(i(), one())),
                                    array_read(xs(), i()))))))});
    return ls;
  }();
  return lemmas;
}

/// Per-run lemma configuration. All shipped lemmas are on by default;
/// validate_library guards their soundness.
struct SpecLibraryConfig {
  std::set<std::string> enabledLemmas;

  static SpecLibraryConfig all() {
    SpecLibraryConfig c;
    for (const auto& l : spec_lemmas()) c.enabledLemmas.insert(l.name);
    return c;
  }
  static SpecLibraryConfig none() { return {}; }

  SpecLibraryConfig without(const std::string& name) const {
    SpecLibraryConfig c = *this;
    c.enabledLemmas.erase(name);
    return c;
  }
};

}  // namespace wyv
