#pragma once

// Configuration counts nu_G(t) and generalized distance sets Delta_G(E).
//
// nu_G(t) counts ordered (k+1)-tuples of points of E, repetition allowed,
// whose dictionary-ordered edge distances equal t. A distance vector t is
// encoded as sum_e t_e q^(|edges| - 1 - e), so the first edge is the most
// significant digit.

#include <cstdint>
#include <span>
#include <vector>

#include "ffdist/graph.hpp"
#include "ffdist/int128.hpp"
#include "ffdist/point_set.hpp"

namespace ffdist {

using DistanceVector = std::vector<Code>;

std::uint64_t distance_space_size(std::uint32_t q, std::size_t edges);
std::uint64_t encode_distances(std::span<const Code> t, std::uint32_t q);
DistanceVector decode_distances(std::uint64_t index, std::uint32_t q, std::size_t edges);

// Tables and masks beyond these caps raise SizeOverflow.
inline constexpr std::uint64_t kDenseTableCap = std::uint64_t{1} << 25;
inline constexpr std::uint64_t kDefaultMaskCapBits = std::uint64_t{1} << 35;
// Exhaustive tuple enumeration beyond |E|^(k+1) > this raises FallbackTooLarge.
inline constexpr std::uint64_t kTupleBudget = std::uint64_t{1} << 32;

// Brute force with pruning; throws ArityMismatch if |t| != |edges(G)|.
std::uint64_t nu(const PointSet& set, const ConfigGraph& graph, std::span<const Code> t);

// Dense nu table indexed by encoded distance vectors.
using NuTable = std::vector<std::uint64_t>;

// Uses the vertex factorizations of edge, path2, bowtie and kite; other
// graphs (and the triangle) enumerate tuples.
NuTable nu_table(const PointSet& set, const ConfigGraph& graph);
NuTable nu_table_bruteforce(const PointSet& set, const ConfigGraph& graph);

struct DeltaSet {
  std::uint32_t q = 0;
  std::size_t edge_count = 0;
  std::vector<std::uint64_t> bits;
  std::uint64_t size = 0;

  bool contains(std::uint64_t index) const noexcept { return (bits[index >> 6] >> (index & 63)) & 1u; }
  bool is_subset_of(const DeltaSet& other) const;
  friend bool operator==(const DeltaSet& a, const DeltaSet& b) noexcept {
    return a.q == b.q && a.edge_count == b.edge_count && a.bits == b.bits;
  }
};

// Support of nu_G without tabulating nu where the graph factors through a
// vertex (edge, path2, bowtie); triangle and other graphs enumerate tuples.
DeltaSet delta(const PointSet& set, const ConfigGraph& graph, std::uint64_t mask_cap_bits = kDefaultMaskCapBits);
DeltaSet delta_bruteforce(const PointSet& set, const ConfigGraph& graph,
                          std::uint64_t mask_cap_bits = kDefaultMaskCapBits);
DeltaSet support(const NuTable& table, std::uint32_t q, std::size_t edges);

// sum_t nu_G(t)^2. Factorized for edge, path2, triangle and bowtie; other
// graphs fall back to a dense table (FallbackTooLarge beyond the caps).
u128 nu_squared_sum(const PointSet& set, const ConfigGraph& graph);
u128 nu_squared_sum_bruteforce(const PointSet& set, const ConfigGraph& graph);

u128 sum_of_squares(const NuTable& table);

}  // namespace ffdist
