#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wyv/bigint.hpp"

namespace wyv {

/// An integer array value. `len` is the logical length; `dense` holds the
/// materialized prefix. Runtime arrays always have len == dense.size().
///
/// Reads outside the dense prefix fall back to `sparse`/`dflt`. Two uses:
///  - specification-level reads past the end (e.g. through over-long `take`
///    prefixes) default to 0, matching the solver encoding where such
///    positions are unconstrained;
///  - arrays decoded from solver countermodels carry the model's backing
///    store in `sparse`/`dflt`, so replaying the model through the evaluator
///    sees exactly the solver's array.
struct ArrayVal {
  Int len = 0;
  std::vector<Int> dense;
  Int dflt = 0;
  std::map<Int, Int> sparse;

  static ArrayVal of(std::vector<Int> elems) {
    ArrayVal a;
    a.len = static_cast<long>(elems.size());
    a.dense = std::move(elems);
    return a;
  }

  /// Specification-level read: total, any index.
  Int read(const Int& i) const {
    if (i >= 0 && i < Int(dense.size())) {
      return dense[static_cast<size_t>(i)];
    }
    auto it = sparse.find(i);
    return it != sparse.end() ? it->second : dflt;
  }

  bool inBounds(const Int& i) const { return i >= 0 && i < len; }

  bool operator==(const ArrayVal& o) const {
    if (len != o.len) return false;
    for (Int i = 0; i < len; ++i)
      if (read(i) != o.read(i)) return false;
    return true;
  }
};

struct Value {
  enum class Kind { Int, Bool, Array };
  Kind kind = Kind::Int;
  Int i;
  bool b = false;
  ArrayVal arr;

  static Value ofInt(Int v) {
    Value x;
    x.kind = Kind::Int;
    x.i = std::move(v);
    return x;
  }
  static Value ofBool(bool v) {
    Value x;
    x.kind = Kind::Bool;
    x.b = v;
    return x;
  }
  static Value ofArray(ArrayVal v) {
    Value x;
    x.kind = Kind::Array;
    x.arr = std::move(v);
    return x;
  }

  bool operator==(const Value& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::Int: return i == o.i;
      case Kind::Bool: return b == o.b;
      case Kind::Array: return arr == o.arr;
    }
    return false;
  }
};

inline std::string value_to_string(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: return v.i.str();
    case Value::Kind::Bool: return v.b ? "true" : "false";
    case Value::Kind::Array: {
      std::string s = "[";
      for (Int k = 0; k < v.arr.len; ++k) {
        if (k > 0) s += ", ";
        if (k > 64) { s += "..."; break; }  // keep reports readable
        s += v.arr.read(k).str();
      }
      s += "]";
      return s;
    }
  }
  return "?";
}

/// Program state: executable environment and ghost environment, disjoint.
struct State {
  std::map<std::string, Value> env;
  std::map<std::string, Value> ghostEnv;

  const Value* lookup(const std::string& n) const {
    auto it = env.find(n);
    if (it != env.end()) return &it->second;
    auto g = ghostEnv.find(n);
    if (g != ghostEnv.end()) return &g->second;
    return nullptr;
  }
};

}  // namespace wyv
