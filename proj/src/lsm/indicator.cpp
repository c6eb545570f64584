#include <algorithm>
#include <cmath>
#include <string>

#include "bhs/error.hpp"
#include "bhs/indicator.hpp"

namespace bhs {

SamplingGrid::SamplingGrid(double xmin, double xmax, double ymin, double ymax, int nx, int ny)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), nx_(nx), ny_(ny) {
  if (nx < 2 || ny < 2) throw DomainError("SamplingGrid: nx and ny must be at least 2");
  if (!std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(ymin) || !std::isfinite(ymax))
    throw DomainError("SamplingGrid: bounds must be finite");
  if (!(xmin < xmax) || !(ymin < ymax)) throw DomainError("SamplingGrid: bounds must be ordered");
}

double SamplingGrid::spacing() const { return std::max(dx(), dy()); }

double SamplingGrid::x(int ix) const { return ix == nx_ - 1 ? xmax_ : xmin_ + ix * dx(); }

double SamplingGrid::y(int iy) const { return iy == ny_ - 1 ? ymax_ : ymin_ + iy * dy(); }

double IndicatorMap::max_value() const {
  if (values.empty()) throw DataError("indicator map is empty");
  return *std::max_element(values.begin(), values.end());
}

std::size_t IndicatorMap::argmin() const {
  if (values.empty()) throw DataError("indicator map is empty");
  // min_element returns the first minimum, which is the lowest index.
  return std::size_t(std::min_element(values.begin(), values.end()) - values.begin());
}

std::vector<double> IndicatorMap::normalized() const {
  const double m = max_value();
  std::vector<double> out(values.size(), 0.0);
  if (m > 0.0)
    for (std::size_t k = 0; k < values.size(); ++k) out[k] = values[k] / m;
  return out;
}

std::size_t Mask::count() const { return std::size_t(std::count(inside.begin(), inside.end(), std::uint8_t{1})); }

Vec2 Mask::centroid() const {
  double sx = 0.0, sy = 0.0;
  std::size_t c = 0;
  for (std::size_t k = 0; k < inside.size(); ++k) {
    if (!inside[k]) continue;
    const Vec2 p = grid.point(k);
    sx += p.x;
    sy += p.y;
    ++c;
  }
  if (c == 0) throw DataError("mask is empty; centroid undefined");
  return {sx / c, sy / c};
}

double inside_outside_ratio(const IndicatorMap& map, const geometry::ParametricCurve& curve) {
  double in = 0.0, out = 0.0;
  std::size_t nin = 0, nout = 0;
  for (std::size_t k = 0; k < map.values.size(); ++k) {
    if (curve.contains(map.grid.point(k))) {
      in += map.values[k];
      ++nin;
    } else {
      out += map.values[k];
      ++nout;
    }
  }
  if (nin == 0 || nout == 0) throw DataError("inside_outside_ratio: grid does not straddle the curve");
  return (in / nin) / (out / nout);
}

}  // namespace bhs
