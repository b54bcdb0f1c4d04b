#include "ffdist/geometry.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "ffdist/error.hpp"

namespace ffdist {

namespace {

auto entry_key(const OrthMatrix& m) {
  return std::make_tuple(m.a.code(), m.b.code(), m.c.code(), m.d.code());
}

}  // namespace

Point operator+(const Point& a, const Point& b) { return {a.x1 + b.x1, a.x2 + b.x2}; }

Point operator-(const Point& a, const Point& b) { return {a.x1 - b.x1, a.x2 - b.x2}; }

Scalar norm(const Point& x) { return x.x1 * x.x1 + x.x2 * x.x2; }

Scalar dist(const Point& x, const Point& y) { return norm(x - y); }

bool OrthMatrix::is_orthogonal() const {
  const Scalar one(a.field_ptr(), 1);
  const Scalar zero(a.field_ptr(), 0);
  return a * a + c * c == one && b * b + d * d == one && a * b + c * d == zero;
}

OrthMatrix operator*(const OrthMatrix& x, const OrthMatrix& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Point apply(const OrthMatrix& theta, const Point& x) {
  return {theta.a * x.x1 + theta.b * x.x2, theta.c * x.x1 + theta.d * x.x2};
}

OrthMatrix inverse(const OrthMatrix& theta) { return {theta.a, theta.c, theta.b, theta.d}; }

Plane::Plane(FieldPtr field) : field_(std::move(field)), q_(field_ ? field_->q() : 0) {
  if (!field_) throw Error(ErrorKind::InvalidArgument, "plane without a field");
  if (q_ > kMaxOrder) throw Error(ErrorKind::TooLarge, "plane tables are limited to q <= 128");
  const Field& f = *field_;

  sub_.resize(std::size_t{q_} * q_);
  add_.resize(std::size_t{q_} * q_);
  trace_mul_.resize(std::size_t{q_} * q_);
  for (Code a = 0; a < q_; ++a) {
    for (Code b = 0; b < q_; ++b) {
      sub_[a * q_ + b] = f.sub(a, b);
      add_[a * q_ + b] = f.add(a, b);
      trace_mul_[a * q_ + b] = f.trace(f.mul(a, b));
    }
  }

  norm_.resize(size());
  spheres_.assign(q_, {});
  for (PointIndex i = 0; i < size(); ++i) {
    const Code a = x1(i);
    const Code b = x2(i);
    norm_[i] = f.add(f.mul(a, a), f.mul(b, b));
    spheres_[norm_[i]].push_back(i);
  }

  // Columns of an orthogonal matrix: (a, c) on S_1 and (b, d) = +-(-c, a).
  for (PointIndex i : spheres_[1]) {
    const Code a = x1(i);
    const Code c = x2(i);
    group_.push_back({scalar(a), scalar(f.neg(c)), scalar(c), scalar(a)});
    group_.push_back({scalar(a), scalar(c), scalar(c), scalar(f.neg(a))});
  }
  std::sort(group_.begin(), group_.end(),
            [](const OrthMatrix& x, const OrthMatrix& y) { return entry_key(x) < entry_key(y); });

  std::map<std::tuple<Code, Code, Code, Code>, std::size_t> position;
  for (std::size_t g = 0; g < group_.size(); ++g) position.emplace(entry_key(group_[g]), g);
  identity_ = position.at({1, 0, 0, 1});
  inverse_.resize(group_.size());
  action_.resize(group_.size() * size());
  for (std::size_t g = 0; g < group_.size(); ++g) {
    const OrthMatrix& m = group_[g];
    inverse_[g] = position.at(entry_key(inverse(m)));
    const Code a = m.a.code(), b = m.b.code(), c = m.c.code(), d = m.d.code();
    for (PointIndex i = 0; i < size(); ++i) {
      const Code u = x1(i);
      const Code v = x2(i);
      action_[g * size() + i] = index(f.add(f.mul(a, u), f.mul(b, v)), f.add(f.mul(c, u), f.mul(d, v)));
    }
  }
}

PointIndex Plane::index(const Point& x) const {
  require_same_field(*field_, x.x1.field());
  require_same_field(*field_, x.x2.field());
  return index(x.x1.code(), x.x2.code());
}

Point Plane::point(PointIndex i) const { return {scalar(x1(i)), scalar(x2(i))}; }

PointIndex Plane::add(PointIndex a, PointIndex b) const noexcept {
  return index(add_[x1(a) * q_ + x1(b)], add_[x2(a) * q_ + x2(b)]);
}

PointIndex Plane::sub(PointIndex a, PointIndex b) const noexcept {
  return index(sub_[x1(a) * q_ + x1(b)], sub_[x2(a) * q_ + x2(b)]);
}

std::uint32_t Plane::trace_dot(PointIndex m, PointIndex x) const noexcept {
  const std::uint32_t s = trace_mul_[x1(m) * q_ + x1(x)] + trace_mul_[x2(m) * q_ + x2(x)];
  const std::uint32_t p = field_->p();
  return s >= p ? s - p : s;
}

Sphere Plane::sphere(const Scalar& t) const {
  require_same_field(*field_, t.field());
  Sphere out{t, {}};
  for (PointIndex i : spheres_[t.code()]) out.points.push_back(point(i));
  return out;
}

bool sphere_quadruple_trichotomy(const Plane& plane, Code t) {
  if (!plane.field().hypothesis_ok())
    throw Error(ErrorKind::HypothesisViolated, "trichotomy requires -1 to be a non-square");
  const auto& pts = plane.sphere_indices(t);
  // Bucket ordered pairs (m, l) by m + l; quadruples are pairs of pairs in a bucket.
  std::vector<std::vector<std::pair<PointIndex, PointIndex>>> by_sum(plane.size());
  for (PointIndex m : pts)
    for (PointIndex l : pts) by_sum[plane.add(m, l)].emplace_back(m, l);
  for (PointIndex s = 0; s < by_sum.size(); ++s) {
    if (s == 0) continue;  // m + l = 0 covers every quadruple in this bucket
    for (const auto& [m, l] : by_sum[s]) {
      for (const auto& [mp, lp] : by_sum[s]) {
        const bool same = m == mp && l == lp;
        const bool swapped = m == lp && l == mp;
        if (!same && !swapped) return false;
      }
    }
  }
  return true;
}

}  // namespace ffdist
