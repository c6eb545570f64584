#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bhs/geometry.hpp"

namespace bhs {

// Uniform lattice including both endpoints; point k = iy * nx + ix with y
// increasing along rows.
class SamplingGrid {
 public:
  SamplingGrid(double xmin, double xmax, double ymin, double ymax, int nx, int ny);

  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return std::size_t(nx_) * std::size_t(ny_); }

  double dx() const { return (xmax_ - xmin_) / (nx_ - 1); }
  double dy() const { return (ymax_ - ymin_) / (ny_ - 1); }
  double spacing() const;

  double x(int ix) const;
  double y(int iy) const;
  Vec2 point(std::size_t k) const { return {x(int(k % nx_)), y(int(k / nx_))}; }

  friend bool operator==(const SamplingGrid&, const SamplingGrid&) = default;

 private:
  double xmin_, xmax_, ymin_, ymax_;
  int nx_, ny_;
};

struct IndicatorMeta {
  std::string method;  // "lsm", "esm", ...
  std::vector<double> kappas;
  double alpha = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  double radius = 0.0;  // ESM sampling-disk radius, 0 otherwise
};

struct IndicatorMap {
  SamplingGrid grid;
  std::vector<double> values;
  IndicatorMeta meta;

  double max_value() const;
  // Lowest row-major index among the minima.
  std::size_t argmin() const;
  // values / max, so the largest entry is exactly 1.
  std::vector<double> normalized() const;
};

struct Mask {
  SamplingGrid grid;
  std::vector<std::uint8_t> inside;

  std::size_t count() const;
  // Throws DataError for an empty mask.
  Vec2 centroid() const;
};

// mean(values inside curve) / mean(values outside curve) over grid points.
double inside_outside_ratio(const IndicatorMap& map, const geometry::ParametricCurve& curve);

}  // namespace bhs
