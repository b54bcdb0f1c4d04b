#include "ffdist/group_tables.hpp"

#include <algorithm>
#include <cmath>

#include "ffdist/counting.hpp"
#include "ffdist/error.hpp"
#include "ffdist/parallel.hpp"

namespace ffdist {

GroupTable::GroupTable(const Plane& plane, std::size_t group_order)
    : group_order_(group_order), row_length_(plane.size()), values_(group_order * plane.size(), 0) {}

LambdaTable::LambdaTable(const PointSet& set)
    : GroupTable(set.plane(), set.plane().group_order()), set_size_(set.size()) {
  const Plane& plane = set.plane();
  const auto& members = set.members();
  parallel_for(group_order(), [&](std::size_t g) {
    for (PointIndex v : members) {
      const PointIndex moved = plane.act(g, v);
      for (PointIndex u : members) ++at(g, plane.sub(u, moved));
    }
  });
}

std::vector<std::uint64_t> weight_counts(const PointSet& set, Code a) {
  const Plane& plane = set.plane();
  if (a >= plane.q()) throw Error(ErrorKind::InvalidArgument, "radius out of range");
  std::vector<std::uint64_t> f(plane.size(), 0);
  for (PointIndex x : set.members())
    for (PointIndex y : set.members())
      if (plane.dist(x, y) == a) ++f[x];
  return f;
}

WeightedFunction weight_function(const PointSet& set, Code a) {
  const auto counts = weight_counts(set, a);
  WeightedFunction fn = WeightedFunction::zeros(set.plane());
  for (std::size_t i = 0; i < counts.size(); ++i) fn.values[i] = static_cast<double>(counts[i]);
  return fn;
}

AlphaTable::AlphaTable(const PointSet& set, Code a)
    : GroupTable(set.plane(), set.plane().group_order()), radius_(a), weights_(weight_counts(set, a)) {
  const Plane& plane = set.plane();
  weight_ = WeightedFunction::zeros(plane);
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    weight_.values[i] = static_cast<double>(weights_[i]);
    weight_l1_ += weights_[i];
    weight_max_ = std::max(weight_max_, weights_[i]);
  }
  std::vector<PointIndex> support;
  for (PointIndex x = 0; x < weights_.size(); ++x)
    if (weights_[x] != 0) support.push_back(x);
  parallel_for(group_order(), [&](std::size_t g) {
    for (PointIndex xp : support) {
      const PointIndex moved = plane.act(g, xp);
      for (PointIndex x : support) at(g, plane.sub(x, moved)) += weights_[x] * weights_[xp];
    }
  });
}

double product_identity_error(const Plane& plane, const GroupTable& table, const WeightedFunction& base) {
  const SpectralTable base_hat = fourier(plane, base);
  const double q2 = static_cast<double>(plane.size());
  double worst = 0;
  for (std::size_t g = 0; g < table.group_order(); ++g) {
    WeightedFunction row = WeightedFunction::zeros(plane);
    for (PointIndex w = 0; w < plane.size(); ++w) row.values[w] = static_cast<double>(table.at(g, w));
    const SpectralTable row_hat = fourier(plane, row);
    const std::size_t inv = plane.inverse_element(g);
    for (PointIndex m = 0; m < plane.size(); ++m) {
      const Complex expected = q2 * base_hat.coeffs[m] * std::conj(base_hat.coeffs[plane.act(inv, m)]);
      worst = std::max(worst, std::abs(row_hat.coeffs[m] - expected) / (1.0 + std::abs(expected)));
    }
  }
  return worst;
}

// sum lambda^3 <= |O2| |E|^4: below 2^46 at q = 31 and below 2^64 at q = 127.
u128 power_sum(const GroupTable& table, unsigned power) {
  u128 acc = 0;
  for (std::size_t g = 0; g < table.group_order(); ++g)
    for (std::uint64_t v : table.row(g)) acc = checked_add(acc, checked_pow(v, power));
  return acc;
}

u128 cubic_lambda_sum(const LambdaTable& lambda) { return power_sum(lambda, 3); }

namespace {

// powers[k][v] = v^k for v <= |E|.
std::vector<std::vector<u128>> power_table(std::size_t max_value, unsigned max_power) {
  std::vector<std::vector<u128>> powers(max_power + 1, std::vector<u128>(max_value + 1));
  for (std::size_t v = 0; v <= max_value; ++v) {
    u128 acc = 1;
    for (unsigned k = 0; k <= max_power; ++k) {
      powers[k][v] = acc;
      acc = k < max_power ? checked_mul(acc, v) : acc;
    }
  }
  return powers;
}

// sums[k] <= |O2| |E|^k and, with a + b <= 6, the total is at most
// q^4 |O2|^2 |E|^6: below 2^92 at q = 31. Larger planes rely on the checked
// arithmetic, which throws SizeOverflow instead of wrapping.
// For every pair (x, x') forms sums[k] = sum_theta lambda_theta(x - theta x')^k
// and folds accumulate(sums, acc) into one accumulator per x'. The per-x'
// partials are then combined in x' order.
template <class Acc, class Accumulate>
std::vector<Acc> pair_sweep(const Plane& plane, const LambdaTable& lambda, unsigned max_power,
                            Accumulate&& accumulate) {
  const auto powers = power_table(lambda.set_size(), max_power);
  std::vector<Acc> partial(plane.size());
  parallel_for(plane.size(), [&](std::size_t xp_index) {
    const PointIndex xp = static_cast<PointIndex>(xp_index);
    std::vector<u128> sums(max_power + 1);
    std::vector<PointIndex> moved(lambda.group_order());
    for (std::size_t g = 0; g < lambda.group_order(); ++g) moved[g] = plane.act(g, xp);
    Acc acc{};
    for (PointIndex x = 0; x < plane.size(); ++x) {
      std::fill(sums.begin(), sums.end(), 0);
      for (std::size_t g = 0; g < lambda.group_order(); ++g) {
        const std::uint64_t v = lambda.at(g, plane.sub(x, moved[g]));
        for (unsigned k = 0; k <= max_power; ++k) sums[k] += powers[k][v];
      }
      accumulate(sums, acc);
    }
    partial[xp] = acc;
  });
  return partial;
}

}  // namespace

u128 psi(const Plane& plane, const LambdaTable& lambda, unsigned a, unsigned b) {
  if (a + b > 6) throw Error(ErrorKind::InvalidArgument, "psi exponents must satisfy a + b <= 6");
  const auto partial = pair_sweep<u128>(plane, lambda, std::max(a, b), [&](const std::vector<u128>& s, u128& acc) {
    acc = checked_add(acc, checked_mul(s[a], s[b]));
  });
  u128 total = 0;
  for (auto v : partial) total = checked_add(total, v);
  return total;
}

u128 psi(const PointSet& set, unsigned a, unsigned b) { return psi(set.plane(), LambdaTable(set), a, b); }

InterpolationValues interpolation_values(const Plane& plane, const LambdaTable& lambda) {
  const auto partial =
      pair_sweep<InterpolationValues>(plane, lambda, 3, [](const std::vector<u128>& s, InterpolationValues& acc) {
        acc.psi22 = checked_add(acc.psi22, checked_mul(s[2], s[2]));
        acc.psi31 = checked_add(acc.psi31, checked_mul(s[3], s[1]));
      });
  InterpolationValues out;
  for (const auto& v : partial) {
    out.psi22 = checked_add(out.psi22, v.psi22);
    out.psi31 = checked_add(out.psi31, v.psi31);
  }
  return out;
}

TriangleChain triangle_chain_check(const PointSet& set, const LambdaTable& lambda) {
  TriangleChain out;
  const ConfigGraph triangle = ConfigGraph::triangle();
  const u128 delta_size = delta(set, triangle).size;
  out.lhs = checked_pow(set.size(), 6);
  out.mid = checked_mul(delta_size, nu_squared_sum(set, triangle));
  out.rhs = checked_mul(delta_size, cubic_lambda_sum(lambda));
  return out;
}

TriangleChain triangle_chain_check(const PointSet& set) { return triangle_chain_check(set, LambdaTable(set)); }

bool KiteDecomposition::identity_holds(double tolerance) const {
  const long double sum = static_cast<long double>(first) + second + third;
  const long double exact = to_long_double(total);
  return std::fabs(static_cast<double>(sum - exact)) <= tolerance * (1.0 + static_cast<double>(exact)) &&
         total == total_pairs;
}

// lambda^3 alpha <= |E|^3 (q + 1) |E|^2 per entry: below 2^71 summed at q = 31;
// checked beyond.
KiteDecomposition kite_decomposition(const PointSet& set, const LambdaTable& lambda, const AlphaTable& alpha) {
  const Plane& plane = set.plane();
  const long double e = static_cast<long double>(set.size());
  const long double q2 = static_cast<long double>(plane.size());
  const long double mu = e * e / q2;
  const long double nu = mu * mu;

  KiteDecomposition out;
  long double first = 0, second = 0, third = 0;
  for (std::size_t g = 0; g < lambda.group_order(); ++g) {
    for (PointIndex w = 0; w < plane.size(); ++w) {
      const std::uint64_t l = lambda.at(g, w);
      const std::uint64_t a = alpha.at(g, w);
      if (l == 0) continue;
      const long double ll = static_cast<long double>(l);
      const long double sq = ll * ll;
      first += sq * (ll - mu) * (static_cast<long double>(a) - nu);
      second += sq * (ll - mu);
      third += sq * static_cast<long double>(a);
      out.total = checked_add(out.total, checked_mul(checked_pow(l, 3), a));
    }
  }
  out.first = static_cast<double>(first);
  out.second = static_cast<double>(nu * second);
  out.third = static_cast<double>(mu * third);

  const auto& f = alpha.weights();
  std::vector<PointIndex> support;
  for (PointIndex x = 0; x < f.size(); ++x)
    if (f[x] != 0) support.push_back(x);
  for (std::size_t g = 0; g < lambda.group_order(); ++g) {
    for (PointIndex xp : support) {
      const PointIndex moved = plane.act(g, xp);
      for (PointIndex x : support) {
        const std::uint64_t l = lambda.at(g, plane.sub(x, moved));
        out.total_pairs = checked_add(out.total_pairs, checked_mul(checked_pow(l, 3), u128{f[x]} * f[xp]));
      }
    }
  }
  return out;
}

KiteDecomposition kite_decomposition(const PointSet& set, Code a) {
  return kite_decomposition(set, LambdaTable(set), AlphaTable(set, a));
}

}  // namespace ffdist
