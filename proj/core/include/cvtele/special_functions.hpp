#pragma once

#include <cstdint>

#include "cvtele/types.hpp"

namespace cvtele {

/// Subscript pair (m, n) of a two-variable Hermite polynomial.
struct HermiteIndex {
  int m = 0;
  int n = 0;
};

/// Largest argument accepted by the factorial-based helpers.
inline constexpr int kMaxFactorialArg = 170;

/// n! exactly for n <= 20, as a floating product beyond. Throws DomainError
/// for n < 0 or n > 170.
double factorial(int n);

/// r-permutation of n, n!/(n-r)!. Throws DomainError unless 0 <= r <= n.
std::uint64_t permutation(int n, int r);

/// Two-variable Hermite polynomial
///   H_{m,n}(x, y) = sum_{i=0}^{min(m,n)} (-1)^i m! n! x^{m-i} y^{n-i} / (i! (m-i)! (n-i)!)
/// evaluated from the defining sum. Its generating function is
/// exp(-s t + s x + t y), differentiated m times in s and n times in t at 0.
Complex hermite2(HermiteIndex idx, Complex x, Complex y);

}  // namespace cvtele
