#include "cvtele/special_functions.hpp"

#include <algorithm>
#include <string>

#include "cvtele/errors.hpp"

namespace cvtele {

namespace {

constexpr std::array<std::uint64_t, 21> kExactFactorials = [] {
  std::array<std::uint64_t, 21> table{};
  table[0] = 1;
  for (std::size_t k = 1; k < table.size(); ++k) table[k] = table[k - 1] * k;
  return table;
}();

void check_factorial_arg(int n, const char* what) {
  if (n < 0 || n > kMaxFactorialArg) {
    throw DomainError(std::string(what) + ": order " + std::to_string(n) +
                      " outside [0, 170]");
  }
}

Complex ipow(Complex base, int exponent) {
  Complex result{1.0, 0.0};
  for (int k = 0; k < exponent; ++k) result *= base;
  return result;
}

}  // namespace

double factorial(int n) {
  check_factorial_arg(n, "factorial");
  if (n <= 20) return static_cast<double>(kExactFactorials[n]);
  double value = static_cast<double>(kExactFactorials[20]);
  for (int k = 21; k <= n; ++k) value *= k;
  return value;
}

std::uint64_t permutation(int n, int r) {
  if (n < 0 || r < 0 || r > n) {
    throw DomainError("permutation: need 0 <= r <= n, got n=" + std::to_string(n) +
                      ", r=" + std::to_string(r));
  }
  std::uint64_t value = 1;
  for (int k = n - r + 1; k <= n; ++k) value *= static_cast<std::uint64_t>(k);
  return value;
}

Complex hermite2(HermiteIndex idx, Complex x, Complex y) {
  check_factorial_arg(idx.m, "hermite2");
  check_factorial_arg(idx.n, "hermite2");
  const int top = std::min(idx.m, idx.n);
  const double mn = factorial(idx.m) * factorial(idx.n);
  Complex sum{0.0, 0.0};
  for (int i = 0; i <= top; ++i) {
    const double weight =
        mn / (factorial(i) * factorial(idx.m - i) * factorial(idx.n - i));
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    sum += sign * weight * ipow(x, idx.m - i) * ipow(y, idx.n - i);
  }
  return sum;
}

}  // namespace cvtele
