#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tracediag {

/// Exact rational scalar. Every value produced by the engine is exact.
using Scalar = mpq_class;

/// Parses `p`, `-p`, `p/q` (canonicalized). Throws std::invalid_argument.
Scalar parse_scalar(std::string_view text);

/// Canonical text: `p` for integers, `p/q` otherwise.
std::string to_string(const Scalar& value);

Scalar factorial(unsigned k);

/// (-1)^k as a scalar.
inline Scalar sign_power(long k) { return (k % 2 == 0) ? Scalar(1) : Scalar(-1); }

}  // namespace tracediag
