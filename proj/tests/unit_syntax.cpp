#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"
#include "wyv/syntax.hpp"

using namespace wyv;

TEST_CASE("sum method parses with one named invariant and a decreasing clause") {
  MethodDecl m = parse_method(testutil::kFig1Sum);
  REQUIRE(m.name == "sum_fig");
  REQUIRE(m.params.size() == 1);
  REQUIRE(m.params[0].type == Type::ArrayInt);
  REQUIRE(m.requires_.empty());
  REQUIRE(m.ensures_.size() == 1);

  // Find the single while loop.
  const Stmt* loop = nullptr;
  for (const auto& s : m.body->stmts)
    if (s->kind == Stmt::Kind::While) loop = s.get();
  REQUIRE(loop != nullptr);
  REQUIRE(loop->invariants.size() == 1);
  CHECK(loop->invariants[0].name == "h");
  CHECK(loop->decreasing != nullptr);
}

TEST_CASE("one-line identity method parses without trailing end") {
  MethodDecl m =
      parse_method("method id (x: Int) returns (r: Int) ensures r = x do return x");
  CHECK(m.requires_.empty());
  REQUIRE(m.ensures_.size() == 1);
  CHECK(m.body->kind == Stmt::Kind::Return);
}

TEST_CASE("unnamed invariant is a contract error") {
  const char* src = R"(method f (x: Int) returns (r: Int) ensures r >= 0 do
    let mut i := 0
    while i < x
      invariant i >= 0
      decreasing x - i
    do i := i + 1 end
    return i
  end)";
  CHECK_THROWS_AS(parse_method(src), ContractError);
}

TEST_CASE("missing decreasing clause is a contract error") {
  const char* src = R"(method f (x: Int) returns (r: Int) ensures r >= 0 do
    let mut i := 0
    while i < x
      invariant h : i >= 0
    do i := i + 1 end
    return i
  end)";
  CHECK_THROWS_AS(parse_method(src), ContractError);
}

TEST_CASE("duplicate invariant names are rejected method-wide") {
  const char* src = R"(method f (x: Int) returns (r: Int) ensures r >= 0 do
    let mut i := 0
    while i < x invariant h : i >= 0 decreasing x - i do i := i + 1 end
    let mut j := 0
    while j < x invariant h : j >= 0 decreasing x - j do j := j + 1 end
    return i
  end)";
  CHECK_THROWS_AS(parse_method(src), ContractError);
}

TEST_CASE("parse errors carry a position within the input") {
  const char* bad[] = {
      "method",
      "method f (x Int) returns (r: Int) do return x",
      "method f (x: Int) returns (r: Int) do return ((x)",
      "methd f",
      "method f (x: Int) returns (r: Int) do x ?= 1 return x",
  };
  for (const char* src : bad) {
    try {
      parse_method(src);
      FAIL("expected a parse error for: " << src);
    } catch (const ParseError& e) {
      std::string text(src);
      int lines = 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
      CHECK(e.pos().line >= 1);
      CHECK(e.pos().line <= lines);
      CHECK(e.pos().col >= 1);
    } catch (const VerifierError&) {
      // Type/contract errors are fine for inputs that parse structurally.
    }
  }
}

TEST_CASE("type errors") {
  CHECK_THROWS_AS(
      parse_method("method f (x: Int) returns (r: Int) ensures r = x do return x + true"),
      TypeError);
  CHECK_THROWS_AS(
      parse_method("method f (x: Int) returns (r: Int) ensures r = x do return y"),
      TypeError);
  // Ghost variables are invisible to executable code.
  CHECK_THROWS_AS(parse_method(R"(method f (x: Int) returns (r: Int)
     ensures r = x
   do
     ghost g := x
     return g
   end)"),
                  TypeError);
  // Return must be final on every path.
  CHECK_THROWS_AS(parse_method(R"(method f (x: Int) returns (r: Int)
     ensures r = x
   do
     return x
     let y := 1
     return y
   end)"),
                  ContractError);
  // Spec functions may appear in executable positions (the judge rejects
  // them later, the type checker does not).
  CHECK_NOTHROW(parse_method(
      "method f (xs: Array Int) returns (r: Int) ensures r = sum(xs) do return sum(xs)"));
}

TEST_CASE("pretty_print round-trips the sum and identity methods") {
  for (const char* src :
       {testutil::kFig1Sum,
        "method id (x: Int) returns (r: Int) ensures r = x do return x"}) {
    MethodDecl m = parse_method(src);
    MethodDecl again = parse_method(pretty_print(m));
    CHECK(method_equal(m, again));
  }
}

TEST_CASE("pretty_print round-trips generated methods", "[property]") {
  for (unsigned seed = 0; seed < 200; ++seed) {
    testutil::MethodGen gen(seed);
    MethodDecl m = gen.method();
    std::string text = pretty_print(m);
    INFO("seed " << seed << "\n" << text);
    MethodDecl again = parse_method(text);
    CHECK(method_equal(m, again));
    // And printing is a fixed point after one round.
    CHECK(pretty_print(again) == text);
  }
}

TEST_CASE("hashing ignores whitespace and comments, sees semantics") {
  std::string spaced = testutil::kFig1Sum;
  std::string commented =
      "-- a comment\n" + spaced + "\n   -- trailing comment\n";
  // Re-layout: collapse to one line where possible.
  std::string oneline = spaced;
  MethodDecl a = parse_method(spaced);
  MethodDecl b = parse_method(commented);
  CHECK(hash_method(a) == hash_method(b));

  std::string mutated = spaced;
  auto at = mutated.find("s + xs[i]");
  REQUIRE(at != std::string::npos);
  mutated.replace(at, 9, "s - xs[i]");
  MethodDecl c = parse_method(mutated);
  CHECK(hash_method(a) != hash_method(c));

  // Alpha-insensitivity: renaming a local does not change the digest.
  std::string renamed = spaced;
  for (std::string::size_type p = renamed.find(" i "); p != std::string::npos;)
    break;
  // (rename via parse + structural rebuild is covered by the generated test)
  CHECK(hash_method(a) == hash_method(parse_method(pretty_print(a))));
}

TEST_CASE("hashing is stable across repeated runs") {
  MethodDecl m = parse_method(testutil::kFig1Sum);
  std::string h1 = hash_method(m);
  std::string h2 = hash_method(parse_method(testutil::kFig1Sum));
  CHECK(h1 == h2);
  CHECK(h1.size() == 64);
}

TEST_CASE("alpha renaming of locals preserves the digest") {
  const char* a = R"(method f (x: Int) returns (r: Int) ensures r = x + 1 do
    let mut acc := x
    acc := acc + 1
    return acc
  end)";
  const char* b = R"(method f (x: Int) returns (r: Int) ensures r = x + 1 do
    let mut total := x
    total := total + 1
    return total
  end)";
  CHECK(hash_method(parse_method(a)) == hash_method(parse_method(b)));
}
