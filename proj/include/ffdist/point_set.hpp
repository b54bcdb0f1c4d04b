#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "ffdist/geometry.hpp"

namespace ffdist {

using PlanePtr = std::shared_ptr<const Plane>;

// A subset E of GF(q)^2, held both as a sorted index list and a q^2-bit mask.
class PointSet {
 public:
  explicit PointSet(PlanePtr plane);
  // Duplicates collapse; indices must be < q^2.
  PointSet(PlanePtr plane, std::span<const PointIndex> indices);

  static PointSet full(PlanePtr plane);

  const Plane& plane() const noexcept { return *plane_; }
  const PlanePtr& plane_ptr() const noexcept { return plane_; }
  const std::vector<PointIndex>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(PointIndex i) const noexcept { return (bits_[i >> 6] >> (i & 63)) & 1u; }

  bool is_subset_of(const PointSet& other) const;

  // theta E + shift, with theta given by its group position.
  PointSet transformed(std::size_t group_element, PointIndex shift) const;

  friend bool operator==(const PointSet& a, const PointSet& b) noexcept { return a.members_ == b.members_; }

 private:
  PlanePtr plane_;
  std::vector<PointIndex> members_;
  std::vector<std::uint64_t> bits_;
};

// One point per line as "c1,c2" integer codes; '#' starts a comment.
// Throws Error(Parse) on malformed input.
PointSet read_points(std::istream& in, PlanePtr plane);
void write_points(std::ostream& out, const PointSet& set);

}  // namespace ffdist
