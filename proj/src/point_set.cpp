#include "ffdist/point_set.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "ffdist/error.hpp"

namespace ffdist {

PointSet::PointSet(PlanePtr plane) : plane_(std::move(plane)) {
  if (!plane_) throw Error(ErrorKind::InvalidArgument, "point set without a plane");
  bits_.assign((plane_->size() + 63) / 64, 0);
}

PointSet::PointSet(PlanePtr plane, std::span<const PointIndex> indices) : PointSet(std::move(plane)) {
  for (PointIndex i : indices) {
    if (i >= plane_->size()) throw Error(ErrorKind::InvalidArgument, "point index out of range");
    bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  for (PointIndex i = 0; i < plane_->size(); ++i)
    if (contains(i)) members_.push_back(i);
}

PointSet PointSet::full(PlanePtr plane) {
  std::vector<PointIndex> all(plane->size());
  for (PointIndex i = 0; i < all.size(); ++i) all[i] = i;
  return PointSet(std::move(plane), all);
}

bool PointSet::is_subset_of(const PointSet& other) const {
  return std::all_of(members_.begin(), members_.end(), [&](PointIndex i) { return other.contains(i); });
}

PointSet PointSet::transformed(std::size_t group_element, PointIndex shift) const {
  std::vector<PointIndex> out;
  out.reserve(members_.size());
  for (PointIndex i : members_) out.push_back(plane_->add(plane_->act(group_element, i), shift));
  return PointSet(plane_, out);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Code parse_code(std::string_view text, std::uint32_t q, std::size_t line_no) {
  text = trim(text);
  Code value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad coordinate '" + std::string(text) + "'");
  if (value >= q) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": coordinate out of range");
  return value;
}

}  // namespace

PointSet read_points(std::istream& in, PlanePtr plane) {
  std::vector<PointIndex> indices;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto comma = view.find(',');
    if (comma == std::string_view::npos)
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 'c1,c2'");
    const Code a = parse_code(view.substr(0, comma), plane->q(), line_no);
    const Code b = parse_code(view.substr(comma + 1), plane->q(), line_no);
    indices.push_back(plane->index(a, b));
  }
  if (in.bad()) throw Error(ErrorKind::Io, "failed reading point file");
  return PointSet(std::move(plane), indices);
}

void write_points(std::ostream& out, const PointSet& set) {
  for (PointIndex i : set.members()) out << set.plane().x1(i) << ',' << set.plane().x2(i) << '\n';
}

}  // namespace ffdist
