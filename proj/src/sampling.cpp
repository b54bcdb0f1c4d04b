#include "ffdist/sampling.hpp"

#include <algorithm>
#include <numeric>

#include "ffdist/error.hpp"
#include "ffdist/random.hpp"

namespace ffdist {

namespace {

// First k entries of a seeded Fisher-Yates shuffle of 0..n-1.
std::vector<std::uint32_t> shuffled_prefix(std::uint32_t n, std::size_t k, SplitMix64& rng) {
  std::vector<std::uint32_t> values(n);
  std::iota(values.begin(), values.end(), 0u);
  for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(values[i], values[j]);
  }
  values.resize(k);
  return values;
}

}  // namespace

std::string to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::Uniform: return "uniform";
    case SampleKind::SphereUnion: return "sphere-union";
    case SampleKind::Grid: return "grid";
  }
  return "uniform";
}

std::optional<SampleKind> parse_sample_kind(const std::string& name) {
  if (name == "uniform") return SampleKind::Uniform;
  if (name == "sphere-union") return SampleKind::SphereUnion;
  if (name == "grid") return SampleKind::Grid;
  return std::nullopt;
}

PointSet sample_set(const PlanePtr& plane, std::size_t size, std::uint64_t seed, SampleKind kind) {
  const std::uint32_t q = plane->q();
  const std::size_t total = plane->size();
  if (size > total)
    throw Error(ErrorKind::SizeTooLarge,
                "requested " + std::to_string(size) + " points but the plane has " + std::to_string(total));
  SplitMix64 rng(seed);
  std::vector<PointIndex> chosen;

  switch (kind) {
    case SampleKind::Uniform:
      chosen = shuffled_prefix(static_cast<std::uint32_t>(total), size, rng);
      break;
    case SampleKind::SphereUnion:
      for (Code t : shuffled_prefix(q, q, rng)) {
        for (PointIndex x : plane->sphere_indices(t)) {
          if (chosen.size() == size) break;
          chosen.push_back(x);
        }
      }
      break;
    case SampleKind::Grid: {
      std::size_t side = 0;
      while (side * side < size) ++side;
      auto rows = shuffled_prefix(q, side, rng);
      auto cols = shuffled_prefix(q, side, rng);
      std::sort(rows.begin(), rows.end());
      std::sort(cols.begin(), cols.end());
      for (Code r : rows)
        for (Code c : cols)
          if (chosen.size() < size) chosen.push_back(plane->index(r, c));
      break;
    }
  }
  return PointSet(plane, chosen);
}

}  // namespace ffdist
