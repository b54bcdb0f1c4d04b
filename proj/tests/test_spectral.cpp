#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ffdist/error.hpp"
#include "ffdist/spectral.hpp"
#include "test_support.hpp"

using namespace ffdist;
using namespace testing_support;

namespace {

// Definition-level transform through Scalar arithmetic and Field::character.
Complex slow_coefficient(const Plane& plane, const WeightedFunction& fn, PointIndex m) {
  const auto& f = plane.field();
  Complex acc{};
  for (PointIndex x = 0; x < plane.size(); ++x) {
    const Code dot = f.add(f.mul(plane.x1(m), plane.x1(x)), f.mul(plane.x2(m), plane.x2(x)));
    acc += f.character(f.neg(dot)) * fn.values[x];
  }
  return acc / static_cast<double>(plane.size());
}

}  // namespace

TEST_CASE("transform matches the definition") {
  for (auto [p, n] : {std::pair{3u, 1u}, {7u, 1u}, {3u, 3u}}) {
    const auto pl = plane(p, n);
    TestRng rng(p * 100 + n);
    const PointSet set = random_set(pl, pl->size() / 2, rng);
    const auto fn = WeightedFunction::indicator(set);
    const auto hat = fourier(*pl, fn);
    for (PointIndex m = 0; m < pl->size(); m += 1 + pl->size() / 40)
      CHECK(std::abs(hat.coeffs[m] - slow_coefficient(*pl, fn, m)) < 1e-12);
    CHECK(hat.coeffs[0].real() == doctest::Approx(static_cast<double>(set.size()) / pl->size()));
  }
}

TEST_CASE("inverse transform round-trips") {
  const auto pl = plane(7);
  TestRng rng(5);
  std::vector<double> values(pl->size());
  for (auto& v : values) v = static_cast<double>(rng.below(10));
  const auto fn = WeightedFunction::from_real(values);
  const auto back = inverse_fourier(*pl, fourier(*pl, fn));
  for (std::size_t i = 0; i < values.size(); ++i) CHECK(std::abs(back.values[i] - fn.values[i]) < 1e-10);
}

TEST_CASE("Plancherel on random sets") {
  for (std::uint32_t p : {3u, 7u, 11u}) {
    const auto pl = plane(p);
    TestRng rng(p);
    for (int trial = 0; trial < 10; ++trial) {
      const PointSet set = random_set(pl, pl->size(), rng);
      const auto [lhs, rhs] = plancherel_check(*pl, WeightedFunction::indicator(set));
      CHECK(rhs == doctest::Approx(static_cast<double>(set.size()) / pl->size()));
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs));
    }
  }
}

TEST_CASE("sphere-restricted norms") {
  const auto pl = plane(7);
  const auto set = PointSet::full(pl);
  const auto fn = WeightedFunction::indicator(set);
  // The full-plane indicator has all of its mass at the zero frequency.
  CHECK(sphere_restricted_l2(*pl, fn, 0) == doctest::Approx(1.0));
  for (Code t = 1; t < 7; ++t) CHECK(sphere_restricted_l2(*pl, fn, t) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("L4 identity on spheres") {
  for (auto [p, n] : {std::pair{3u, 1u}, {7u, 1u}, {11u, 1u}}) {
    const auto pl = plane(p, n);
    TestRng rng(p + 17);
    const PointSet set = random_set(pl, pl->size() / 2, rng);
    for (Code t = 0; t < pl->q(); ++t) {
      const auto [lhs, rhs] = sphere_restricted_l4_identity(*pl, WeightedFunction::indicator(set), t);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1e-12, std::abs(rhs)) + 1e-18);
    }
  }
}

TEST_CASE("length mismatch is rejected") {
  const auto pl = plane(3);
  WeightedFunction fn{std::vector<Complex>(4), true};
  CHECK_THROWS_AS(fourier(*pl, fn), Error);
}

TEST_CASE("spectral CSV layout") {
  const auto pl = plane(3);
  std::ostringstream out;
  write_spectral_csv(out, *pl, fourier(*pl, WeightedFunction::indicator(abc(pl))));
  const std::string text = out.str();
  CHECK(text.rfind("m1,m2,re,im\n0,0,0.33333333333333331,0\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 10);
}

namespace {

WeightedFunction random_complex(const Plane& plane, TestRng& rng) {
  WeightedFunction fn = WeightedFunction::zeros(plane);
  fn.real_nonneg = false;
  for (auto& v : fn.values)
    v = Complex(static_cast<double>(rng.below(200)) / 100.0 - 1.0, static_cast<double>(rng.below(200)) / 100.0 - 1.0);
  return fn;
}

}  // namespace

TEST_CASE("Plancherel and linearity for complex functions") {
  const auto pl = plane(7);
  TestRng rng(31);
  const auto f = random_complex(*pl, rng), g = random_complex(*pl, rng);
  const auto [lhs, rhs] = plancherel_check(*pl, f);
  CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + rhs));
  const Complex a(0.5, 2.0), b(-1.0, 0.25);
  WeightedFunction combo = WeightedFunction::zeros(*pl);
  for (std::size_t i = 0; i < combo.values.size(); ++i) combo.values[i] = a * f.values[i] + b * g.values[i];
  const auto fh = fourier(*pl, f), gh = fourier(*pl, g), ch = fourier(*pl, combo);
  for (PointIndex m = 0; m < pl->size(); ++m) CHECK(std::abs(ch.coeffs[m] - (a * fh.coeffs[m] + b * gh.coeffs[m])) < 1e-12);
}

TEST_CASE("translation multiplies coefficients by a character") {
  for (std::uint32_t p : {3u, 7u}) {
    const auto pl = plane(p);
    const auto& f = pl->field();
    TestRng rng(p);
    const auto fn = random_complex(*pl, rng);
    const auto base = fourier(*pl, fn);
    const PointIndex shifts = p == 3 ? static_cast<PointIndex>(pl->size()) : 5;
    for (PointIndex k = 0; k < shifts; ++k) {
      const PointIndex s = p == 3 ? k : static_cast<PointIndex>(rng.below(pl->size()));
      WeightedFunction moved = WeightedFunction::zeros(*pl);
      for (PointIndex x = 0; x < pl->size(); ++x) moved.values[pl->add(x, s)] = fn.values[x];
      const auto hat = fourier(*pl, moved);
      for (PointIndex m = 0; m < pl->size(); ++m) {
        const Code dot = f.add(f.mul(pl->x1(m), pl->x1(s)), f.mul(pl->x2(m), pl->x2(s)));
        CHECK(std::abs(hat.coeffs[m] - f.character(f.neg(dot)) * base.coeffs[m]) < 1e-12);
      }
    }
  }
}
