#include "ffdist/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "ffdist/error.hpp"
#include "ffdist/parallel.hpp"

namespace ffdist {

namespace {

void require_length(const Plane& plane, std::size_t length) {
  if (length != plane.size()) throw Error(ErrorKind::InvalidArgument, "table length must be q^2");
}

// out[m] = scale * sum_x root(sign * Tr(m.x)) in[x].
std::vector<Complex> transform(const Plane& plane, const std::vector<Complex>& in, bool negate, double scale) {
  require_length(plane, in.size());
  const std::uint32_t p = plane.field().p();
  std::vector<Complex> out(plane.size());
  std::vector<PointIndex> support;
  for (PointIndex x = 0; x < in.size(); ++x)
    if (in[x] != Complex{}) support.push_back(x);
  parallel_for(plane.size(), [&](std::size_t m) {
    Complex acc{};
    for (PointIndex x : support) {
      std::uint32_t k = plane.trace_dot(static_cast<PointIndex>(m), x);
      if (negate && k != 0) k = p - k;
      acc += plane.field().root_of_unity(k) * in[x];
    }
    out[m] = acc * scale;
  });
  return out;
}

}  // namespace

WeightedFunction WeightedFunction::zeros(const Plane& plane) {
  return {std::vector<Complex>(plane.size()), true};
}

WeightedFunction WeightedFunction::indicator(const PointSet& set) {
  WeightedFunction fn = zeros(set.plane());
  for (PointIndex i : set.members()) fn.values[i] = 1.0;
  return fn;
}

WeightedFunction WeightedFunction::from_real(std::vector<double> values) {
  WeightedFunction fn;
  fn.real_nonneg = true;
  fn.values.reserve(values.size());
  for (double v : values) {
    if (v < 0) fn.real_nonneg = false;
    fn.values.emplace_back(v, 0.0);
  }
  return fn;
}

SpectralTable SpectralTable::conjugate() const {
  SpectralTable out{coeffs};
  for (auto& c : out.coeffs) c = std::conj(c);
  return out;
}

SpectralTable fourier(const Plane& plane, const WeightedFunction& fn) {
  const double q2 = static_cast<double>(plane.size());
  return {transform(plane, fn.values, true, 1.0 / q2)};
}

WeightedFunction inverse_fourier(const Plane& plane, const SpectralTable& table) {
  return {transform(plane, table.coeffs, false, 1.0), false};
}

std::pair<double, double> plancherel_check(const Plane& plane, const WeightedFunction& fn) {
  const SpectralTable hat = fourier(plane, fn);
  double lhs = 0;
  for (const auto& c : hat.coeffs) lhs += std::norm(c);
  double rhs = 0;
  for (const auto& v : fn.values) rhs += std::norm(v);
  return {lhs, rhs / static_cast<double>(plane.size())};
}

double sphere_restricted_l2(const Plane& plane, const SpectralTable& table, Code t) {
  require_length(plane, table.coeffs.size());
  double acc = 0;
  for (PointIndex l : plane.sphere_indices(t)) acc += std::norm(table.coeffs[l]);
  return acc;
}

double sphere_restricted_l2(const Plane& plane, const WeightedFunction& fn, Code t) {
  return sphere_restricted_l2(plane, fourier(plane, fn), t);
}

std::pair<double, double> sphere_restricted_l4_identity(const Plane& plane, const WeightedFunction& fn, Code t) {
  const SpectralTable g = fourier(plane, fn).conjugate();
  const auto& sphere = plane.sphere_indices(t);
  const double q2 = static_cast<double>(plane.size());

  std::vector<Complex> restricted(plane.size());
  for (PointIndex m : sphere) restricted[m] = g.coeffs[m];
  // transform() already applies q^-2, so summing |.|^4 carries the q^-8.
  const std::vector<Complex> hat = transform(plane, restricted, true, 1.0 / q2);
  double lhs = 0;
  for (const auto& v : hat) lhs += std::norm(v) * std::norm(v);

  std::vector<std::vector<std::pair<PointIndex, PointIndex>>> by_sum(plane.size());
  for (PointIndex m : sphere)
    for (PointIndex l : sphere) by_sum[plane.add(m, l)].emplace_back(m, l);
  Complex rhs{};
  for (const auto& bucket : by_sum) {
    for (const auto& [m, l] : bucket) {
      const Complex front = g.coeffs[m] * g.coeffs[l];
      for (const auto& [mp, lp] : bucket) rhs += front * std::conj(g.coeffs[mp]) * std::conj(g.coeffs[lp]);
    }
  }
  return {lhs, rhs.real() / (q2 * q2 * q2)};
}

void write_spectral_csv(std::ostream& out, const Plane& plane, const SpectralTable& table) {
  require_length(plane, table.coeffs.size());
  out << "m1,m2,re,im\n";
  char buf[64];
  for (PointIndex m = 0; m < table.coeffs.size(); ++m) {
    out << plane.x1(m) << ',' << plane.x2(m) << ',';
    std::snprintf(buf, sizeof buf, "%.17g", table.coeffs[m].real());
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", table.coeffs[m].imag());
    out << buf << '\n';
  }
}

}  // namespace ffdist
