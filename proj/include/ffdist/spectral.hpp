#pragma once

// Fourier analysis on GF(q)^2 with the canonical additive character
// chi(x) = exp(2 pi i Tr(x) / p):
//
//   f^(m) = q^-2 sum_x chi(-m.x) f(x),     f(x) = sum_m chi(m.x) f^(m).
//
// Transforms are evaluated directly (O(q^4)); every coefficient is summed in
// ascending point order so results do not depend on the worker count.

#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

#include "ffdist/point_set.hpp"

namespace ffdist {

using Complex = std::complex<double>;

struct WeightedFunction {
  std::vector<Complex> values;  // indexed by PointIndex, length q^2
  bool real_nonneg = false;

  static WeightedFunction zeros(const Plane& plane);
  static WeightedFunction indicator(const PointSet& set);
  static WeightedFunction from_real(std::vector<double> values);
};

struct SpectralTable {
  std::vector<Complex> coeffs;  // indexed by frequency m as a PointIndex

  SpectralTable conjugate() const;
};

SpectralTable fourier(const Plane& plane, const WeightedFunction& fn);
WeightedFunction inverse_fourier(const Plane& plane, const SpectralTable& table);

// (sum_m |f^(m)|^2, q^-2 sum_x |f(x)|^2).
std::pair<double, double> plancherel_check(const Plane& plane, const WeightedFunction& fn);

// sum over ||l|| = t of |f^(l)|^2.
double sphere_restricted_l2(const Plane& plane, const WeightedFunction& fn, Code t);
double sphere_restricted_l2(const Plane& plane, const SpectralTable& table, Code t);

// With g = conj(f^) restricted to S_t, returns
//   lhs = q^-8 sum_xi |sum_{m in S_t} chi(-m.xi) g(m)|^4
//   rhs = q^-6 sum_{m + l = m' + l' in S_t} g(m) g(l) conj(g(m')) conj(g(l')).
std::pair<double, double> sphere_restricted_l4_identity(const Plane& plane, const WeightedFunction& fn, Code t);

// "m1,m2,re,im" rows in linear-index order, with header.
void write_spectral_csv(std::ostream& out, const Plane& plane, const SpectralTable& table);

}  // namespace ffdist
