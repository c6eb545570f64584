#pragma once

#include <cmath>
#include <string_view>
#include <vector>

namespace bhs {

struct Vec2 {
  double x = 0.0, y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double length(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit_direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

namespace geometry {

enum class Shape { Apple, Peanut, Peach, Circle, Ellipse };

Shape parse_shape(std::string_view name);
std::string_view shape_name(Shape s);

struct CurvePoint {
  Vec2 position;
  Vec2 d1;  // x'(t)
  Vec2 d2;  // x''(t)
};

// Closed, counterclockwise, 2pi-periodic boundary curve: a base shape scaled
// by `scale` and translated to `center`. Derivatives are closed-form.
//
// Base shapes (r(t) in polar form, x = r(t) (cos t, sin t)):
//   apple   r = 0.55 (1 + 0.9 cos t + 0.1 sin 2t) / (1 + 0.75 cos t)
//   peanut  r = 0.275 sqrt(3 cos^2 t + 1)
//   peach   r = 0.22 (cos^2 t sqrt(1 - sin t) + 2)
//   circle  r = 1
//   ellipse x = (cos t, 0.6 sin t)
class ParametricCurve {
 public:
  ParametricCurve(Shape shape, Vec2 center, double scale);

  CurvePoint sample(double t) const;
  Vec2 position(double t) const { return sample(t).position; }

  Shape shape() const { return shape_; }
  Vec2 center() const { return center_; }
  double scale() const { return scale_; }

  ParametricCurve translated(Vec2 v) const { return {shape_, center_ + v, scale_}; }

  std::vector<Vec2> polyline(int samples = 4096) const;
  double signed_area(int samples = 4096) const;
  // Winding number of the curve about p by angle accumulation.
  int winding_number(Vec2 p, int samples = 4096) const;
  // Point-in-polygon test against a fine polyline.
  bool contains(Vec2 p) const;

 private:
  Shape shape_;
  Vec2 center_;
  double scale_;
  std::vector<Vec2> outline_;
};

ParametricCurve make_named_curve(std::string_view name, Vec2 center, double scale);

// Nystrom node layout: 2n equispaced parameters t_i = pi i / n with the
// trapezoid weight pi / n.
struct BoundaryDiscretization {
  int n = 0;
  double weight = 0.0;
  std::vector<double> t;
  std::vector<Vec2> nodes;
  std::vector<Vec2> tangents;  // x'(t_i), unnormalized
  std::vector<Vec2> second;    // x''(t_i)
  std::vector<double> jacobian;
  std::vector<Vec2> normals;   // outward unit normals

  std::size_t size() const { return nodes.size(); }
  double perimeter() const;
  double max_spacing() const;
};

BoundaryDiscretization discretize(const ParametricCurve& curve, int n);

}  // namespace geometry
}  // namespace bhs
