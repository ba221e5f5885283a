#pragma once

#include <gmpxx.h>

#include <string>

namespace limitalg {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Field operations used by the generic linear algebra in linalg.hpp.
/// Cyclotomic provides the same set as free functions.
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline Rational inverse(const Rational& q) { return Rational(1) / q; }
inline Rational conj(const Rational& q) { return q; }
inline Rational unit_like(const Rational&) { return 1; }

} // namespace limitalg
