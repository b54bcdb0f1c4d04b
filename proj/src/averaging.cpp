#include "ffdist/averaging.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "ffdist/error.hpp"

namespace ffdist {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

bool integer_valued(const WeightedFunction& phi) {
  return std::all_of(phi.values.begin(), phi.values.end(), [](const Complex& v) {
    return v.real() == std::floor(v.real()) && std::fabs(v.real()) < 9.0e15;
  });
}

cpp_rational rational_power(const cpp_rational& base, unsigned e) {
  cpp_rational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

AveragingBound averaging_bound_check(const WeightedFunction& phi, unsigned n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "averaging bound needs n >= 2");
  if (phi.values.empty()) throw Error(ErrorKind::InvalidArgument, "empty domain");
  for (const auto& v : phi.values)
    if (v.imag() != 0 || v.real() < 0 || std::isnan(v.real()))
      throw Error(ErrorKind::NegativeInput, "averaging bound needs a real nonnegative function");

  AveragingBound out;
  const auto domain = static_cast<long>(phi.values.size());
  const long double binom = static_cast<long double>(n) * (n - 1) / 2;

  if (integer_valued(phi)) {
    cpp_int l1 = 0, linf = 0, lhs = 0, l2 = 0;
    for (const auto& v : phi.values) {
      const cpp_int x = static_cast<long long>(v.real());
      l1 += x;
      linf = std::max(linf, x);
      l2 += x * x;
      lhs += boost::multiprecision::pow(x, n);
    }
    const cpp_rational mean(l1, domain);
    // sum (phi - mean)^2 = sum phi^2 - ||phi||_1^2 / |X|
    const cpp_rational variance = cpp_rational(l2) - cpp_rational(l1 * l1, domain);
    const cpp_rational rhs = rational_power(cpp_rational(l1), n) / rational_power(cpp_rational(domain), n - 1) +
                             cpp_rational(static_cast<long>(n) * (n - 1), 2) *
                                 cpp_rational(boost::multiprecision::pow(linf, n - 2)) * variance;
    out.exact = true;
    out.holds = cpp_rational(lhs) <= rhs;
    out.equal = cpp_rational(lhs) == rhs;
    out.lhs = static_cast<double>(lhs);
    out.rhs = static_cast<double>(rhs);
    (void)mean;
    return out;
  }

  long double l1 = 0, linf = 0, lhs = 0;
  for (const auto& v : phi.values) {
    const long double x = v.real();
    l1 += x;
    linf = std::max(linf, x);
    lhs += std::pow(x, static_cast<long double>(n));
  }
  const long double mean = l1 / domain;
  long double variance = 0;
  for (const auto& v : phi.values) variance += (v.real() - mean) * (v.real() - mean);
  const long double rhs = std::pow(l1, static_cast<long double>(n)) / std::pow(static_cast<long double>(domain), n - 1) +
                          binom * std::pow(linf, static_cast<long double>(n - 2)) * variance;
  const long double slack = 1e-12L * (1 + std::fabs(rhs));
  out.lhs = static_cast<double>(lhs);
  out.rhs = static_cast<double>(rhs);
  out.holds = lhs <= rhs + slack;
  out.equal = std::fabs(lhs - rhs) <= slack;
  return out;
}

}  // namespace ffdist
