#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace wyv {

using Int = boost::multiprecision::cpp_int;

/// Euclidean division: the remainder is always in [0, |d|).
/// This is the SMT-LIB Ints semantics for div/mod, fixed repo-wide so the
/// interpreter, the VC formulas, and the solver agree on negative operands.
inline Int euclid_div(const Int& n, const Int& d) {
  Int q = n / d;  // truncated toward zero
  Int r = n % d;
  if (r < 0) q += (d > 0) ? -1 : 1;
  return q;
}

inline Int euclid_mod(const Int& n, const Int& d) {
  Int r = n % d;
  if (r < 0) r += (d > 0) ? d : -d;
  return r;
}

}  // namespace wyv
