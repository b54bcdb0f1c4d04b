#pragma once

// The plane GF(q)^2 with the quadratic distance form
//   ||x - y|| = (x1 - y1)^2 + (x2 - y2)^2,
// its spheres S_t = {x : ||x|| = t} and the orthogonal group O2(GF(q)).

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ffdist/field.hpp"

namespace ffdist {

struct Point {
  Scalar x1;
  Scalar x2;

  friend bool operator==(const Point& a, const Point& b) noexcept { return a.x1 == b.x1 && a.x2 == b.x2; }
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);

Scalar norm(const Point& x);
Scalar dist(const Point& x, const Point& y);

// [[a, b], [c, d]] acting on column vectors.
struct OrthMatrix {
  Scalar a;
  Scalar b;
  Scalar c;
  Scalar d;

  Scalar determinant() const { return a * d - b * c; }
  bool is_orthogonal() const;

  friend bool operator==(const OrthMatrix& x, const OrthMatrix& y) noexcept {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

OrthMatrix operator*(const OrthMatrix& x, const OrthMatrix& y);
Point apply(const OrthMatrix& theta, const Point& x);
// theta^T, which is the inverse for orthogonal theta.
OrthMatrix inverse(const OrthMatrix& theta);

struct Sphere {
  Scalar t;
  std::vector<Point> points;  // ascending linear index
};

// Points are addressed by linear index code(x1) * q + code(x2).
using PointIndex = std::uint32_t;

// Geometry context for one field. All tables (norms, spheres, group elements
// and their action on every point) are built in the constructor; the object
// is immutable afterwards.
class Plane {
 public:
  static constexpr std::uint32_t kMaxOrder = 128;

  // Throws TooLarge if q > kMaxOrder.
  explicit Plane(FieldPtr field);

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return q_; }
  std::size_t size() const noexcept { return std::size_t{q_} * q_; }

  PointIndex index(Code x1, Code x2) const noexcept { return x1 * q_ + x2; }
  PointIndex index(const Point& x) const;
  Code x1(PointIndex i) const noexcept { return i / q_; }
  Code x2(PointIndex i) const noexcept { return i % q_; }
  Point point(PointIndex i) const;
  Scalar scalar(Code c) const { return {field_, c}; }

  PointIndex add(PointIndex a, PointIndex b) const noexcept;
  PointIndex sub(PointIndex a, PointIndex b) const noexcept;
  Code norm(PointIndex x) const noexcept { return norm_[x]; }
  Code dist(PointIndex x, PointIndex y) const noexcept { return norm_[sub(x, y)]; }
  // Absolute trace of the bilinear pairing m . x, via per-coordinate tables.
  std::uint32_t trace_dot(PointIndex m, PointIndex x) const noexcept;

  const std::vector<PointIndex>& sphere_indices(Code t) const noexcept { return spheres_[t]; }
  Sphere sphere(const Scalar& t) const;

  // Sorted by (a, b, c, d) entry codes.
  const std::vector<OrthMatrix>& orthogonal_group() const noexcept { return group_; }
  std::size_t group_order() const noexcept { return group_.size(); }
  std::size_t identity_element() const noexcept { return identity_; }
  std::size_t inverse_element(std::size_t g) const noexcept { return inverse_[g]; }
  PointIndex act(std::size_t g, PointIndex x) const noexcept { return action_[g * size() + x]; }

 private:
  FieldPtr field_;
  std::uint32_t q_;
  std::vector<Code> sub_;              // q*q
  std::vector<Code> add_;              // q*q
  std::vector<std::uint32_t> trace_mul_;  // q*q
  std::vector<Code> norm_;
  std::vector<std::vector<PointIndex>> spheres_;
  std::vector<OrthMatrix> group_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
  std::vector<PointIndex> action_;
};

// Checks every (m, l, m', l') in S_t^4 with m + l = m' + l' for
// (m = m' and l = l') or (m = l' and l = m') or (m + l = 0).
// Throws HypothesisViolated when the field admits isotropic vectors.
bool sphere_quadruple_trichotomy(const Plane& plane, Code t);

}  // namespace ffdist
