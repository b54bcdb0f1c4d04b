#include <doctest.h>

#include "ffdist/counting.hpp"
#include "ffdist/error.hpp"
#include "ffdist/group_tables.hpp"
#include "test_support.hpp"

using namespace ffdist;
using namespace testing_support;

namespace {

// Psi(a, b) straight from its four-fold definition.
u128 psi_definition(const Plane& plane, const LambdaTable& lambda, unsigned a, unsigned b) {
  u128 total = 0;
  for (PointIndex x = 0; x < plane.size(); ++x)
    for (PointIndex xp = 0; xp < plane.size(); ++xp)
      for (std::size_t th = 0; th < plane.group_order(); ++th)
        for (std::size_t ph = 0; ph < plane.group_order(); ++ph)
          total += checked_pow(lambda.at(th, plane.sub(x, plane.act(th, xp))), a) *
                   checked_pow(lambda.at(ph, plane.sub(x, plane.act(ph, xp))), b);
  return total;
}

u128 kite_total_sum(const PointSet& set, const LambdaTable& lambda) {
  u128 sum = 0;
  for (Code a = 0; a < set.plane().q(); ++a) sum += kite_decomposition(set, lambda, AlphaTable(set, a)).total;
  return sum;
}

// sum over x, x' in E of A_3(x, x'), A_k(x, x') = sum_theta lambda_theta(x - theta x')^k.
u128 restricted_cubic_pairs(const PointSet& set, const LambdaTable& lambda, unsigned left, unsigned right) {
  const Plane& plane = set.plane();
  u128 total = 0;
  for (PointIndex x : set.members())
    for (PointIndex xp : set.members()) {
      u128 l = 0, r = 0;
      for (std::size_t g = 0; g < plane.group_order(); ++g) {
        const auto v = lambda.at(g, plane.sub(x, plane.act(g, xp)));
        l += checked_pow(v, left);
        r += checked_pow(v, right);
      }
      total += l * r;
    }
  return total;
}

}  // namespace

TEST_CASE("lambda table invariants") {
  TestRng rng(4);
  for (std::uint32_t p : {3u, 7u}) {
    const auto pl = plane(p);
    for (int trial = 0; trial < 5; ++trial) {
      const PointSet set = random_set(pl, pl->size() / 2, rng);
      const LambdaTable lambda(set);
      const std::uint64_t e = set.size();
      CHECK(lambda.at(pl->identity_element(), 0) == e);
      for (std::size_t g = 0; g < lambda.group_order(); ++g) {
        std::uint64_t row = 0;
        for (auto v : lambda.row(g)) {
          row += v;
          CHECK(v <= e);
        }
        CHECK(row == e * e);
      }
      CHECK(product_identity_error(*pl, lambda, WeightedFunction::indicator(set)) < 1e-9);
    }
  }
}

TEST_CASE("frozen values for E = {A, B, C} in GF(3)^2") {
  const auto pl = plane(3);
  const auto set = abc(pl);
  const LambdaTable lambda(set);
  CHECK(cubic_lambda_sum(lambda) == 204);
  CHECK(psi(*pl, lambda, 2, 2) == 16816);
  CHECK(psi(*pl, lambda, 3, 1) == 18648);
  CHECK(kite_total_sum(set, lambda) == 1448);
  const auto f = weight_counts(set, 1);
  CHECK(f[pl->index(0, 0)] == 2);
  CHECK(f[pl->index(1, 0)] == 1);
  CHECK(f[pl->index(0, 1)] == 1);
  const auto iv = interpolation_values(*pl, lambda);
  CHECK(iv.psi22 == 16816);
  CHECK(iv.psi31 == 18648);
  const auto chain = triangle_chain_check(set, lambda);
  CHECK(chain.lhs == 729);
  CHECK(chain.holds());
}

TEST_CASE("psi against its definition and symmetry") {
  TestRng rng(9);
  const auto pl = plane(3);
  for (int trial = 0; trial < 5; ++trial) {
    const PointSet set = random_set(pl, 6, rng);
    const LambdaTable lambda(set);
    for (auto [a, b] : {std::pair{2u, 2u}, {3u, 1u}, {1u, 3u}, {0u, 2u}, {4u, 2u}})
      CHECK(psi(*pl, lambda, a, b) == psi_definition(*pl, lambda, a, b));
    CHECK(psi(*pl, lambda, 4, 1) == psi(*pl, lambda, 1, 4));
  }
  CHECK(psi(PointSet(pl), 2, 2) == 0);
  CHECK_THROWS_AS(psi(*pl, LambdaTable(abc(pl)), 4, 3), Error);
}

TEST_CASE("interpolation chain on random sets") {
  TestRng rng(10);
  for (std::uint32_t p : {3u, 7u}) {
    const auto pl = plane(p);
    for (int trial = 0; trial < 5; ++trial) {
      const PointSet set = random_set(pl, p == 3 ? 9 : 20, rng);
      const LambdaTable lambda(set);
      const auto iv = interpolation_values(*pl, lambda);
      CHECK(nu_squared_sum(set, ConfigGraph::bowtie()) <= iv.psi22);
      CHECK(iv.psi22 <= iv.psi31);
      CHECK(nu_squared_sum(set, ConfigGraph::triangle()) <= cubic_lambda_sum(lambda));
    }
  }
}

TEST_CASE("alpha table invariants") {
  TestRng rng(12);
  for (std::uint32_t p : {3u, 7u}) {
    const auto pl = plane(p);
    const PointSet set = random_set(pl, pl->size() / 2, rng);
    for (Code a = 0; a < p; ++a) {
      const AlphaTable alpha(set, a);
      std::uint64_t pairs = 0;
      for (PointIndex x : set.members())
        for (PointIndex y : set.members()) pairs += pl->dist(x, y) == a;
      CHECK(alpha.weight_l1() == pairs);
      CHECK(alpha.weight_max() <= p + 1);
      for (std::size_t g = 0; g < alpha.group_order(); ++g) {
        std::uint64_t row = 0;
        for (auto v : alpha.row(g)) {
          row += v;
          CHECK(v <= alpha.weight_max() * alpha.weight_l1());
        }
        CHECK(row == alpha.weight_l1() * alpha.weight_l1());
      }
      CHECK(product_identity_error(*pl, alpha, alpha.weight()) < 1e-9);
    }
  }
}

TEST_CASE("kite decomposition is an identity") {
  TestRng rng(13);
  for (std::uint32_t p : {3u, 7u}) {
    const auto pl = plane(p);
    const PointSet set = random_set(pl, pl->size() / 2, rng);
    const LambdaTable lambda(set);
    for (Code a = 0; a < p; ++a) {
      const auto d = kite_decomposition(set, lambda, AlphaTable(set, a));
      CHECK(d.total == d.total_pairs);
      CHECK(d.identity_holds());
    }
  }
  const auto empty = kite_decomposition(PointSet(plane(3)), 1);
  CHECK(empty.total == 0);
  CHECK(empty.first == 0);
}

TEST_CASE("summing kite totals over radii recovers the E-restricted psi(3,1) relation") {
  // With A_1(x, x') = 2 sum_a n_a(x) n_a(x') + 2q E(x) E(x') on E x E:
  //   sum_{x,x' in E} A_3 A_1 = 2 sum_a total(a) + 2q sum_{x,x' in E} A_3.
  TestRng rng(14);
  for (std::uint32_t p : {3u, 7u}) {
    const auto pl = plane(p);
    for (int trial = 0; trial < 4; ++trial) {
      const PointSet set = random_set(pl, p == 3 ? 6 : 15, rng);
      const LambdaTable lambda(set);
      const u128 lhs = restricted_cubic_pairs(set, lambda, 3, 1);
      const u128 cubic = restricted_cubic_pairs(set, lambda, 3, 0) / pl->group_order();
      const u128 rhs = 2 * kite_total_sum(set, lambda) + u128{2} * p * cubic;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("psi(3,1) differs from the summed kite totals") {
  const auto pl = plane(3);
  const std::vector<PointIndex> origin{0};
  const PointSet single(pl, origin);
  const LambdaTable lambda(single);
  CHECK(psi(*pl, lambda, 3, 1) == 192);
  CHECK(kite_total_sum(single, lambda) == 8);
}
