#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ffdist/point_set.hpp"

namespace ffdist {

enum class SampleKind { Uniform, SphereUnion, Grid };

std::string to_string(SampleKind kind);
std::optional<SampleKind> parse_sample_kind(const std::string& name);

// Deterministic in (seed, kind, size):
//   uniform       first `size` entries of a Fisher-Yates shuffle of the q^2 indices
//   sphere-union  spheres about the origin in seeded radius order, concatenated
//                 in ascending index order and truncated
//   grid          A x B for seeded rows A and columns B with |A| = |B| =
//                 ceil(sqrt(size)), truncated in linear-index order
// Throws SizeTooLarge when size > q^2.
PointSet sample_set(const PlanePtr& plane, std::size_t size, std::uint64_t seed, SampleKind kind);

}  // namespace ffdist
