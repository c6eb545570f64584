#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bhs/error.hpp"
#include "bhs/geometry.hpp"

namespace bhs::geometry {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Radial profile r(t) with its first two derivatives.
struct Radial {
  double r, r1, r2;
};

Radial apple(double t) {
  const double c = std::cos(t), s = std::sin(t);
  const double p = 1.0 + 0.9 * c + 0.1 * std::sin(2 * t);
  const double p1 = -0.9 * s + 0.2 * std::cos(2 * t);
  const double p2 = -0.9 * c - 0.4 * std::sin(2 * t);
  const double q = 1.0 + 0.75 * c, q1 = -0.75 * s, q2 = -0.75 * c;
  const double num = p1 * q - p * q1;
  return {0.55 * p / q, 0.55 * num / (q * q),
          0.55 * ((p2 * q - p * q2) / (q * q) - 2.0 * q1 * num / (q * q * q))};
}

Radial peanut(double t) {
  const double c = std::cos(t);
  const double w = 3.0 * c * c + 1.0, w1 = -3.0 * std::sin(2 * t), w2 = -6.0 * std::cos(2 * t);
  const double sw = std::sqrt(w);
  return {0.275 * sw, 0.275 * w1 / (2 * sw), 0.275 * (w2 / (2 * sw) - w1 * w1 / (4 * w * sw))};
}

// sqrt(1 - sin t) = |cos(t/2) - sin(t/2)|, which keeps the closed-form
// derivatives well defined except for the kink at t = pi/2.
Radial peach(double t) {
  const double c = std::cos(t), s = std::sin(t);
  const double a = std::cos(t / 2) - std::sin(t / 2);
  const double a1 = -(std::sin(t / 2) + std::cos(t / 2)) / 2;
  const double abs_a = std::abs(a), sg = a < 0 ? -1.0 : 1.0;
  const double f = c * c * abs_a;
  const double f1 = -2 * c * s * abs_a + c * c * sg * a1;
  const double f2 = -2 * std::cos(2 * t) * abs_a - 4 * c * s * sg * a1 - c * c * abs_a / 4;
  return {0.22 * (f + 2.0), 0.22 * f1, 0.22 * f2};
}

CurvePoint from_radial(Radial q, double t) {
  const Vec2 e{std::cos(t), std::sin(t)}, p{-e.y, e.x};
  return {q.r * e, q.r1 * e + q.r * p, q.r2 * e + 2.0 * q.r1 * p - q.r * e};
}

CurvePoint base_point(Shape shape, double t) {
  switch (shape) {
    case Shape::Apple: return from_radial(apple(t), t);
    case Shape::Peanut: return from_radial(peanut(t), t);
    case Shape::Peach: return from_radial(peach(t), t);
    case Shape::Circle: return from_radial({1.0, 0.0, 0.0}, t);
    case Shape::Ellipse: {
      const double c = std::cos(t), s = std::sin(t);
      return {{c, 0.6 * s}, {-s, 0.6 * c}, {-c, -0.6 * s}};
    }
  }
  throw DomainError("unknown shape");
}

}  // namespace

Shape parse_shape(std::string_view name) {
  if (name == "apple") return Shape::Apple;
  if (name == "peanut") return Shape::Peanut;
  if (name == "peach") return Shape::Peach;
  if (name == "circle") return Shape::Circle;
  if (name == "ellipse") return Shape::Ellipse;
  throw ConfigError("unknown shape '" + std::string(name) + "' (expected apple, peanut, peach, circle, ellipse)");
}

std::string_view shape_name(Shape s) {
  switch (s) {
    case Shape::Apple: return "apple";
    case Shape::Peanut: return "peanut";
    case Shape::Peach: return "peach";
    case Shape::Circle: return "circle";
    case Shape::Ellipse: return "ellipse";
  }
  return "?";
}

ParametricCurve::ParametricCurve(Shape shape, Vec2 center, double scale)
    : shape_(shape), center_(center), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("curve scale must be positive and finite");
  if (!std::isfinite(center.x) || !std::isfinite(center.y)) throw DomainError("curve center must be finite");
  constexpr int samples = 4096;
  outline_.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const CurvePoint p = sample(two_pi * k / samples);
    if (length(p.d1) < 1e-12) throw GeometryError("curve is not regular: |x'(t)| vanishes");
    outline_.push_back(p.position);
  }
}

CurvePoint ParametricCurve::sample(double t) const {
  const CurvePoint b = base_point(shape_, t);
  return {center_ + scale_ * b.position, scale_ * b.d1, scale_ * b.d2};
}

std::vector<Vec2> ParametricCurve::polyline(int samples) const {
  if (samples == static_cast<int>(outline_.size())) return outline_;
  if (samples < 3) throw DomainError("polyline needs at least 3 samples");
  std::vector<Vec2> pts(samples);
  for (int k = 0; k < samples; ++k) pts[k] = position(two_pi * k / samples);
  return pts;
}

double ParametricCurve::signed_area(int samples) const {
  const auto pts = polyline(samples);
  double a = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Vec2 p = pts[k], q = pts[(k + 1) % pts.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

int ParametricCurve::winding_number(Vec2 p, int samples) const {
  const auto pts = polyline(samples);
  double total = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Vec2 u = pts[k] - p, v = pts[(k + 1) % pts.size()] - p;
    total += std::atan2(u.x * v.y - u.y * v.x, dot(u, v));
  }
  return static_cast<int>(std::lround(total / two_pi));
}

bool ParametricCurve::contains(Vec2 p) const {
  bool inside = false;
  const std::size_t m = outline_.size();
  for (std::size_t k = 0, j = m - 1; k < m; j = k++) {
    const Vec2 a = outline_[k], b = outline_[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside;
}

ParametricCurve make_named_curve(std::string_view name, Vec2 center, double scale) {
  return {parse_shape(name), center, scale};
}

double BoundaryDiscretization::perimeter() const {
  double s = 0.0;
  for (double j : jacobian) s += j;
  return s * weight;
}

double BoundaryDiscretization::max_spacing() const {
  double h = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) h = std::max(h, length(nodes[(k + 1) % nodes.size()] - nodes[k]));
  return h;
}

BoundaryDiscretization discretize(const ParametricCurve& curve, int n) {
  if (n < 8 || n > 1024 || (n & (n - 1)) != 0)
    throw DomainError("discretize: n must be a power of two in [8, 1024], got " + std::to_string(n));
  BoundaryDiscretization d;
  d.n = n;
  d.weight = std::numbers::pi / n;
  const int m = 2 * n;
  d.t.resize(m);
  d.nodes.resize(m);
  d.tangents.resize(m);
  d.second.resize(m);
  d.jacobian.resize(m);
  d.normals.resize(m);
  for (int i = 0; i < m; ++i) {
    const double t = std::numbers::pi * i / n;
    const CurvePoint p = curve.sample(t);
    const double j = length(p.d1);
    if (!(j >= 1e-12)) throw GeometryError("discretize: |x'| below 1e-12 at node " + std::to_string(i));
    d.t[i] = t;
    d.nodes[i] = p.position;
    d.tangents[i] = p.d1;
    d.second[i] = p.d2;
    d.jacobian[i] = j;
    d.normals[i] = {p.d1.y / j, -p.d1.x / j};
  }
  return d;
}

}  // namespace bhs::geometry
