#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"
#include "wyv/eval.hpp"
#include "wyv/fuzz.hpp"
#include "wyv/syntax.hpp"

using namespace wyv;

namespace {

Value arr(std::vector<long> xs) {
  std::vector<Int> v(xs.begin(), xs.end());
  return Value::ofArray(ArrayVal::of(v));
}

// Independent oracle for prefix sums: plain recursion, no library reuse.
long prefix_sum(const std::vector<long>& xs, long n) {
  if (n <= 0) return 0;
  long top = std::min<long>(n, static_cast<long>(xs.size()));
  return prefix_sum(xs, top - 1) + xs[static_cast<size_t>(top - 1)];
}

std::string mutate_sum_to_minus() {
  std::string s = testutil::kFig1Sum;
  auto at = s.find("s + xs[i]");
  REQUIRE(at != std::string::npos);
  s.replace(at, 9, "s - xs[i]");
  return s;
}

}  // namespace

TEST_CASE("sum on [1,2,3] returns 6 with zero violations") {
  MethodDecl m = parse_method(testutil::kFig1Sum);
  RunReport r = eval_method(m, {arr({1, 2, 3})});
  REQUIRE(r.outcome == RunReport::Outcome::Returned);
  CHECK(r.returned.i == 6);
  CHECK(r.checkedAnnotations > 0);
}

TEST_CASE("sum on [] returns 0") {
  MethodDecl m = parse_method(testutil::kFig1Sum);
  RunReport r = eval_method(m, {arr({})});
  REQUIRE(r.outcome == RunReport::Outcome::Returned);
  CHECK(r.returned.i == 0);
}

TEST_CASE("mutated sum violates a contract on [1]") {
  MethodDecl m = parse_method(mutate_sum_to_minus());
  RunReport r = eval_method(m, {arr({1})});
  REQUIRE(r.outcome == RunReport::Outcome::ContractViolation);
  // Hand execution: after the first iteration s = -1 but sum(take(xs,1)) = 1,
  // so invariant preservation of h fails (ensures would fail later anyway).
  CHECK(r.violationKind == "invariant-preservation");
  CHECK(r.violationDetail == "h");
}

TEST_CASE("eval_formula prefix-sum example") {
  State st;
  st.env["s"] = Value::ofInt(3);
  st.env["xs"] = arr({1, 2, 3});
  st.env["i"] = Value::ofInt(2);
  CHECK(prefix_sum({1, 2, 3}, 2) == 3);  // oracle agrees
  CHECK(eval_formula(parse_formula("s = sum(take(xs, i))"), st));
  st.env["s"] = Value::ofInt(4);
  CHECK_FALSE(eval_formula(parse_formula("s = sum(take(xs, i))"), st));
}

TEST_CASE("vacuous quantifier over an empty range is true") {
  State st;
  QuantBounds qb;
  qb["k"] = {Int(0), Int(-1)};  // empty inclusive range
  CHECK(eval_formula(parse_formula("forall k: Int, k < 0 -> false"), st, qb));
}

TEST_CASE("contradiction is false") {
  State st;
  st.env["result"] = Value::ofInt(0);
  CHECK_FALSE(eval_formula(parse_formula("result < 0 and result > 0"), st));
}

TEST_CASE("quantifier bounds derive from guards") {
  State st;
  st.env["xs"] = arr({5, 7, 9});
  CHECK(eval_formula(
      parse_formula("forall k: Int, 0 <= k and k < xs.size -> xs[k] > 4"), st));
  CHECK_FALSE(eval_formula(
      parse_formula("forall k: Int, 0 <= k and k < xs.size -> xs[k] > 5"), st));
  CHECK(eval_formula(
      parse_formula("exists k: Int, 0 <= k and k < xs.size and xs[k] = 7"), st));
  CHECK_THROWS_AS(eval_formula(parse_formula("forall k: Int, k > 0"), st),
                  EvalError);
}

TEST_CASE("euclidean div/mod on negative operands") {
  State st;
  // -7 div 2 = -4, -7 mod 2 = 1; 7 div -2 = -3, 7 mod -2 = 1.
  CHECK(eval_formula(parse_formula("(0 - 7) div 2 = 0 - 4"), st));
  CHECK(eval_formula(parse_formula("(0 - 7) mod 2 = 1"), st));
  CHECK(eval_formula(parse_formula("7 div (0 - 2) = 0 - 3"), st));
  CHECK(eval_formula(parse_formula("7 mod (0 - 2) = 1"), st));
}

TEST_CASE("runtime violations: bounds and div-by-zero") {
  MethodDecl m = parse_method(R"(method f (xs: Array Int) returns (r: Int)
    ensures true
  do
    return xs[3]
  end)");
  RunReport r = eval_method(m, {arr({1})});
  REQUIRE(r.outcome == RunReport::Outcome::ContractViolation);
  CHECK(r.violationKind == "bounds");

  MethodDecl d = parse_method(R"(method g (x: Int) returns (r: Int)
    ensures true
  do
    return 1 div x
  end)");
  RunReport rd = eval_method(d, {Value::ofInt(0)});
  REQUIRE(rd.outcome == RunReport::Outcome::ContractViolation);
  CHECK(rd.violationKind == "div-by-zero");
}

TEST_CASE("fuel exhaustion and fuel monotonicity") {
  MethodDecl m = parse_method(testutil::kFig1Sum);
  RunReport starved = eval_method(m, {arr({1, 2, 3})}, /*fuel=*/2);
  CHECK(starved.outcome == RunReport::Outcome::FuelExhausted);
  RunReport enough = eval_method(m, {arr({1, 2, 3})}, /*fuel=*/3);
  REQUIRE(enough.outcome == RunReport::Outcome::Returned);
  for (long extra : {4L, 10L, 1000L}) {
    RunReport more = eval_method(m, {arr({1, 2, 3})}, extra);
    REQUIRE(more.outcome == RunReport::Outcome::Returned);
    CHECK(more.returned == enough.returned);
    CHECK(more.steps == enough.steps);
  }
}

TEST_CASE("determinism of eval_method") {
  MethodDecl m = parse_method(testutil::kFig1Sum);
  RunReport a = eval_method(m, {arr({4, -2, 9})});
  RunReport b = eval_method(m, {arr({4, -2, 9})});
  CHECK(a.outcome == b.outcome);
  CHECK(a.returned == b.returned);
  CHECK(a.steps == b.steps);
  CHECK(a.checkedAnnotations == b.checkedAnnotations);
}

TEST_CASE("fuzzing the correct sum finds nothing") {
  MethodDecl m = parse_method(testutil::kFig1Sum);
  InputDomain dom;
  dom.maxArrayLen = 8;
  FuzzReport rep = fuzz_contracts(m, 1000, dom, 42);
  CHECK(rep.trials == 1000);
  CHECK(rep.violations == 0);
}

TEST_CASE("fuzzing the mutated sum finds a counterexample") {
  MethodDecl m = parse_method(mutate_sum_to_minus());
  InputDomain dom;
  FuzzReport rep = fuzz_contracts(m, 1000, dom, 42);
  CHECK(rep.violations >= 1);
  REQUIRE(rep.firstCounterexample.has_value());
  // Replay the counterexample: it must violate a contract.
  RunReport r = eval_method(m, *rep.firstCounterexample);
  CHECK(r.outcome == RunReport::Outcome::ContractViolation);
}

TEST_CASE("fuzz determinism under a fixed seed") {
  MethodDecl m = parse_method(mutate_sum_to_minus());
  InputDomain dom;
  FuzzReport a = fuzz_contracts(m, 200, dom, 7);
  FuzzReport b = fuzz_contracts(m, 200, dom, 7);
  CHECK(a.violations == b.violations);
  REQUIRE(a.firstCounterexample.has_value());
  REQUIRE(b.firstCounterexample.has_value());
  CHECK(a.firstCounterexample->size() == b.firstCounterexample->size());
  CHECK((*a.firstCounterexample)[0] == (*b.firstCounterexample)[0]);
}

TEST_CASE("requires false exhausts the domain") {
  MethodDecl m = parse_method(
      "method f (x: Int) returns (r: Int) requires false ensures true do return x");
  InputDomain dom;
  dom.rejectionRetries = 50;
  CHECK_THROWS_AS(fuzz_contracts(m, 1, dom, 1), DomainExhausted);
}

TEST_CASE("ghost state is tracked and asserts are checked") {
  MethodDecl ok = parse_method(R"(method f (xs: Array Int) returns (r: Int)
    ensures r = sum(xs)
  do
    ghost g := sum(take(xs, xs.size))
    assert g = sum(xs)
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
  end)");
  RunReport r = eval_method(ok, {arr({2, 5})});
  REQUIRE(r.outcome == RunReport::Outcome::Returned);
  CHECK(r.returned.i == 7);

  MethodDecl bad = parse_method(R"(method f (x: Int) returns (r: Int)
    ensures r = x
  do
    ghost g := x + 1
    assert g = x
    return x
  end)");
  RunReport rb = eval_method(bad, {Value::ofInt(3)});
  REQUIRE(rb.outcome == RunReport::Outcome::ContractViolation);
  CHECK(rb.violationKind == "assert");
}
