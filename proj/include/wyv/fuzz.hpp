#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wyv/eval.hpp"

namespace wyv {

/// Per-parameter finite generators: arrays up to maxArrayLen elements,
/// integer values uniform in [intLo, intHi].
struct InputDomain {
  long maxArrayLen = 8;
  long intLo = -100;
  long intHi = 100;
  long fuel = 100000;
  long rejectionRetries = 1000;  // per trial
};

class DomainExhausted : public std::runtime_error {
 public:
  explicit DomainExhausted(const std::string& m) : std::runtime_error(m) {}
};

struct FuzzReport {
  long trials = 0;
  long violations = 0;
  std::optional<std::vector<Value>> firstCounterexample;
  std::string firstViolationKind;
  std::string firstViolationDetail;
  unsigned long long seed = 0;
};

namespace fuzz_detail {

inline Value draw(Type t, const InputDomain& dom, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> ints(dom.intLo, dom.intHi);
  switch (t) {
    case Type::Int: return Value::ofInt(Int(ints(rng)));
    case Type::Bool: return Value::ofBool(rng() % 2 == 0);
    case Type::ArrayInt: {
      std::uniform_int_distribution<long> lens(0, dom.maxArrayLen);
      long n = lens(rng);
      std::vector<Int> elems;
      elems.reserve(static_cast<size_t>(n));
      for (long i = 0; i < n; ++i) elems.push_back(Int(ints(rng)));
      return Value::ofArray(ArrayVal::of(std::move(elems)));
    }
  }
  return Value::ofInt(0);
}

}  // namespace fuzz_detail

/// Runs the interpreter on pseudorandom requires-satisfying inputs.
/// Deterministic under a fixed seed. Throws DomainExhausted when rejection
/// sampling cannot find an admissible input within the retry budget.
inline FuzzReport fuzz_contracts(const MethodDecl& m, long trials,
                                 const InputDomain& dom, unsigned long long seed,
                                 const MethodEnv& env = {},
                                 const QuantBounds& bounds = {}) {
  std::mt19937_64 rng(seed);
  FuzzReport rep;
  rep.seed = seed;
  for (long t = 0; t < trials; ++t) {
    std::vector<Value> args;
    bool admitted = false;
    for (long attempt = 0; attempt < dom.rejectionRetries && !admitted; ++attempt) {
      args.clear();
      for (const auto& p : m.params)
        args.push_back(fuzz_detail::draw(p.type, dom, rng));
      State st;
      for (size_t i = 0; i < args.size(); ++i) st.env[m.params[i].name] = args[i];
      admitted = true;
      for (const auto& r : m.requires_) {
        if (!eval_formula(r, st, bounds)) {
          admitted = false;
          break;
        }
      }
    }
    if (!admitted)
      throw DomainExhausted("no requires-satisfying input found for '" +
                            m.name + "' within the retry budget");
    ++rep.trials;
    RunReport run = eval_method(m, args, dom.fuel, env, bounds);
    if (run.outcome == RunReport::Outcome::ContractViolation) {
      ++rep.violations;
      if (!rep.firstCounterexample) {
        rep.firstCounterexample = args;
        rep.firstViolationKind = run.violationKind;
        rep.firstViolationDetail = run.violationDetail;
      }
    }
  }
  return rep;
}

}  // namespace wyv
