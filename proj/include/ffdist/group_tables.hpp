#pragma once

// Counting tables indexed by (theta, w) for theta in O2 and w in GF(q)^2:
//
//   lambda_theta(w) = #{(u, v) in E^2 : u - theta v = w}
//   alpha_theta(w)  = sum_{x - theta x' = w} f(x) f(x'),  f(x) = E(x) (E * S_a)(x)
//
// and the interpolation functional
//
//   Psi(a, b) = sum_{x, x' in GF(q)^2} sum_{theta, phi}
//               lambda_theta(x - theta x')^a lambda_phi(x - phi x')^b.
//
// All integer sums are exact (checked 128-bit accumulation).

#include <cstdint>
#include <span>
#include <vector>

#include "ffdist/int128.hpp"
#include "ffdist/point_set.hpp"
#include "ffdist/spectral.hpp"

namespace ffdist {

// Per-group-element tables of 64-bit counts over the q^2 points, rows in
// the plane's group order.
class GroupTable {
 public:
  GroupTable(const Plane& plane, std::size_t group_order);

  std::size_t group_order() const noexcept { return group_order_; }
  std::size_t row_length() const noexcept { return row_length_; }
  std::uint64_t at(std::size_t g, PointIndex w) const noexcept { return values_[g * row_length_ + w]; }
  std::uint64_t& at(std::size_t g, PointIndex w) noexcept { return values_[g * row_length_ + w]; }
  std::span<const std::uint64_t> row(std::size_t g) const noexcept {
    return {values_.data() + g * row_length_, row_length_};
  }

 private:
  std::size_t group_order_;
  std::size_t row_length_;
  std::vector<std::uint64_t> values_;
};

class LambdaTable : public GroupTable {
 public:
  explicit LambdaTable(const PointSet& set);

  std::size_t set_size() const noexcept { return set_size_; }

 private:
  std::size_t set_size_;
};

// f(x) = |{y in E : ||x - y|| = a}| for x in E, else 0.
std::vector<std::uint64_t> weight_counts(const PointSet& set, Code a);
WeightedFunction weight_function(const PointSet& set, Code a);

class AlphaTable : public GroupTable {
 public:
  AlphaTable(const PointSet& set, Code a);

  Code radius() const noexcept { return radius_; }
  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }
  const WeightedFunction& weight() const noexcept { return weight_; }
  std::uint64_t weight_l1() const noexcept { return weight_l1_; }
  std::uint64_t weight_max() const noexcept { return weight_max_; }

 private:
  Code radius_;
  std::vector<std::uint64_t> weights_;
  WeightedFunction weight_;
  std::uint64_t weight_l1_ = 0;
  std::uint64_t weight_max_ = 0;
};

// max over theta, m of |T^_theta(m) - q^2 g^(m) conj(g^(theta^-1 m))| / (1 + |rhs|),
// where g is the function the table was built from (indicator of E for
// lambda, f for alpha).
double product_identity_error(const Plane& plane, const GroupTable& table, const WeightedFunction& base);

// sum_{theta, w} table^power.
u128 power_sum(const GroupTable& table, unsigned power);
u128 cubic_lambda_sum(const LambdaTable& lambda);

// Requires a + b <= 6; throws InvalidArgument otherwise.
u128 psi(const Plane& plane, const LambdaTable& lambda, unsigned a, unsigned b);
u128 psi(const PointSet& set, unsigned a, unsigned b);

struct InterpolationValues {
  u128 psi22 = 0;
  u128 psi31 = 0;
};
// Psi(2,2) and Psi(3,1) in one pass.
InterpolationValues interpolation_values(const Plane& plane, const LambdaTable& lambda);

struct TriangleChain {
  u128 lhs = 0;  // |E|^6
  u128 mid = 0;  // |Delta_T(E)| sum_t nu_T(t)^2
  u128 rhs = 0;  // |Delta_T(E)| sum_{theta,w} lambda^3
  bool holds() const noexcept { return lhs <= mid && mid <= rhs; }
};
TriangleChain triangle_chain_check(const PointSet& set);
TriangleChain triangle_chain_check(const PointSet& set, const LambdaTable& lambda);

// lambda^3 alpha expanded around mu = |E|^2/q^2 and nu = |E|^4/q^4:
//   I   = sum lambda^2 (lambda - mu)(alpha - nu)
//   II  = nu sum lambda^2 (lambda - mu)
//   III = mu sum lambda^2 alpha
// so I + II + III = sum lambda^3 alpha exactly.
struct KiteDecomposition {
  double first = 0;
  double second = 0;
  double third = 0;
  u128 total = 0;        // sum_{theta, w} lambda^3 alpha
  u128 total_pairs = 0;  // sum_theta sum_{x,x'} lambda^3(x - theta x') f(x) f(x')
  bool identity_holds(double tolerance = 1e-6) const;
};
KiteDecomposition kite_decomposition(const PointSet& set, Code a);
KiteDecomposition kite_decomposition(const PointSet& set, const LambdaTable& lambda, const AlphaTable& alpha);

}  // namespace ffdist
