#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "bhs/error.hpp"
#include "bhs/esm.hpp"
#include "bhs/forward.hpp"
#include "bhs/special_functions.hpp"

namespace bhs::esm {

namespace {
constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

void check_positive(double R, double kappa, const char* where) {
  if (!(R > 0.0) || !(kappa > 0.0) || !std::isfinite(R) || !std::isfinite(kappa))
    throw DomainError(std::string(where) + ": R and kappa must be positive and finite");
}

// J_n(kappa R) / H_n(kappa R) for n = 0..nmax.
std::vector<cplx> mode_ratios(double R, double kappa, int nmax) {
  const double x = kappa * R;
  const auto J = special::bessel_j_sequence(nmax, x);
  const auto Y = special::bessel_y_sequence(nmax, x);
  std::vector<cplx> a(nmax + 1);
  for (int n = 0; n <= nmax; ++n) a[n] = std::isfinite(Y[n]) ? J[n] / cplx(J[n], Y[n]) : cplx(0.0);
  return a;
}

cplx prefactor(double kappa) { return -std::exp(-I * (pi / 4.0)) * std::sqrt(2.0 / (pi * kappa)); }

cplx series(const std::vector<cplx>& a, int terms, double angle) {
  cplx s = a[0];
  for (int n = 1; n <= terms; ++n) s += 2.0 * a[n] * std::cos(n * angle);
  return s;
}
}  // namespace

int disk_series_terms(double R, double kappa) {
  check_positive(R, kappa, "disk_series_terms");
  const double x = kappa * R;
  const int first = static_cast<int>(std::ceil(x + 10.0));
  if (first > special::max_order) throw DomainError("disk_series_terms: kappa*R too large");
  const auto a = mode_ratios(R, kappa, special::max_order);
  for (int n = first; n <= special::max_order; ++n)
    if (std::abs(a[n]) < 1e-14) return n;
  throw DomainError("disk_series_terms: series did not reach 1e-14 within the supported order range");
}

cplx disk_far_field(double R, double kappa, double theta_x, double theta_y) {
  const int nt = disk_series_terms(R, kappa);
  return prefactor(kappa) * series(mode_ratios(R, kappa, nt), nt, theta_x - theta_y);
}

DiskKernel::DiskKernel(double R, double kappa, int N, int extra_terms) : R_(R), kappa_(kappa), N_(N), u_(N, N) {
  if (N < 1) throw DomainError("DiskKernel: N must be positive");
  const int nt = std::min(disk_series_terms(R, kappa) + std::max(extra_terms, 0), special::max_order);
  const auto a = mode_ratios(R, kappa, nt);
  const cplx pre = prefactor(kappa);
  std::vector<cplx> c(N / 2 + 1);
  for (int m = 0; m <= N / 2; ++m) c[m] = pre * series(a, nt, 2.0 * pi * m / N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const int d = ((i - j) % N + N) % N;
      u_(i, j) = c[std::min(d, N - d)];
    }
}

ComplexMatrix translated_kernel(Vec2 z, const DiskKernel& kernel) {
  const int N = kernel.N();
  const double k = kernel.kappa();
  ComplexMatrix a(N, N);
  for (int i = 0; i < N; ++i) {
    const Vec2 xh = forward::direction(i, N);
    for (int j = 0; j < N; ++j)
      a(i, j) = std::exp(I * (k * dot(z, forward::direction(j, N) - xh))) * kernel.matrix()(i, j);
  }
  return a;
}

double dirichlet_margin(double R, double kappa) {
  check_positive(R, kappa, "dirichlet_margin");
  // J_n has no zeros below n, so orders n >= kappa R cannot put kappa^2 on a
  // Dirichlet eigenvalue; they are small only through ordinary decay.
  const double x = kappa * R;
  const int nmax = std::min({static_cast<int>(std::floor(x + 10.0)), static_cast<int>(std::ceil(x)) - 1,
                             special::max_order});
  const auto J = special::bessel_j_sequence(std::max(nmax, 0), x);
  double m = std::abs(J[0]);
  for (int n = 1; n <= nmax; ++n) m = std::min(m, std::abs(J[n]));
  return m;
}

double admissible_radius(double R, std::span<const double> kappas, std::vector<std::string>* warnings) {
  for (int attempt = 0; attempt <= 20; ++attempt) {
    bool ok = true;
    for (double k : kappas) ok = ok && dirichlet_margin(R, k) > 1e-8;
    if (ok) return R;
    const double next = R * 1.01;
    if (warnings) {
      std::ostringstream os;
      os.precision(17);
      os << "kappa^2 is close to a Dirichlet eigenvalue of the sampling disk; R changed from " << R << " to " << next;
      warnings->push_back(os.str());
    }
    R = next;
  }
  throw DomainError("admissible_radius: could not move R away from Dirichlet eigenvalues");
}

EsmResult esm_indicator(std::span<const FarFieldColumn> columns, const EsmConfig& config) {
  if (columns.empty()) throw DataError("esm_indicator: no far-field columns");
  if (!(config.alpha > 0.0)) throw DomainError("esm_indicator: alpha must be positive");
  if (!(config.R > 0.0)) throw DomainError("esm_indicator: R must be positive");
  const std::size_t N = columns.front().values.size();
  std::vector<double> kappas;
  for (const auto& c : columns) {
    if (c.values.size() != N || N == 0) throw DataError("esm_indicator: far-field columns differ in length");
    if (!(c.kappa > 0.0)) throw DomainError("esm_indicator: kappa must be positive");
    if (std::all_of(c.values.begin(), c.values.end(), [](const cplx& v) { return v == 0.0; }))
      throw DataError("esm_indicator: far-field column is identically zero");
    if (std::find(kappas.begin(), kappas.end(), c.kappa) == kappas.end()) kappas.push_back(c.kappa);
  }

  EsmResult res{{config.grid, std::vector<double>(config.grid.size(), 0.0), {"esm", kappas, config.alpha, 0.0, 0, 0.0}},
                0, {}, 0.0, {}};
  res.R_used = admissible_radius(config.R, kappas, &res.warnings);
  res.map.meta.radius = res.R_used;

  std::vector<Vec2> dirs(N);
  for (std::size_t i = 0; i < N; ++i) dirs[i] = forward::direction(int(i), int(N));
  std::vector<DiskKernel> kernels;
  for (double k : kappas) kernels.emplace_back(res.R_used, k, int(N));
  auto kernel_index = [&](double k) { return std::size_t(std::find(kappas.begin(), kappas.end(), k) - kappas.begin()); };

  auto& raw = res.map.values;
  if (config.route == Route::Factored) {
    std::vector<linalg::TikhonovSolver> solvers;
    for (const auto& kern : kernels) solvers.emplace_back(kern.matrix(), config.alpha);
    ComplexVector shifted(N);
    for (std::size_t p = 0; p < raw.size(); ++p) {
      const Vec2 z = config.grid.point(p);
      double s = 0.0;
      for (const auto& c : columns) {
        for (std::size_t i = 0; i < N; ++i) shifted[i] = std::exp(I * (c.kappa * dot(z, dirs[i]))) * c.values[i];
        s += linalg::norm(solvers[kernel_index(c.kappa)].solve(shifted));
      }
      raw[p] = s;
    }
  } else {
    for (std::size_t p = 0; p < raw.size(); ++p) {
      const Vec2 z = config.grid.point(p);
      double s = 0.0;
      for (std::size_t q = 0; q < kappas.size(); ++q) {
        const linalg::TikhonovSolver solver(translated_kernel(z, kernels[q]), config.alpha);
        for (const auto& c : columns)
          if (c.kappa == kappas[q]) s += linalg::norm(solver.solve(c.values));
      }
      raw[p] = s;
    }
  }

  const double mx = *std::max_element(raw.begin(), raw.end());
  if (!(mx > 0.0) || !std::isfinite(mx)) throw DataError("esm_indicator: degenerate indicator values");
  for (auto& v : raw) v /= mx;
  res.argmin = res.map.argmin();
  res.z_star = config.grid.point(res.argmin);
  return res;
}

SamplingGrid level_grid(const Region& region, double R) {
  auto count = [R](double lo, double hi) {
    const double w = hi - lo;
    const double h = std::min(R, w / 32.0);
    return std::clamp(static_cast<int>(std::ceil(w / h - 1e-9)) + 1, 2, 256);
  };
  return {region.xmin, region.xmax, region.ymin, region.ymax, count(region.xmin, region.xmax),
          count(region.ymin, region.ymax)};
}

LocalizationResult multilevel_esm(std::span<const FarFieldColumn> columns, double R0, const Region& region,
                                  const EsmConfig& config) {
  if (!(R0 > 0.0) || !std::isfinite(R0)) throw DomainError("multilevel_esm: R0 must be positive");
  LocalizationResult out;
  auto run_level = [&](int j) {
    EsmConfig c = config;
    c.R = std::ldexp(R0, -j);
    c.grid = level_grid(region, c.R);
    EsmResult r = esm_indicator(columns, c);
    for (auto& w : r.warnings) out.warnings.push_back("level " + std::to_string(j) + ": " + w);
    out.history.push_back({j, c.R, r.R_used, r.z_star, c.grid.nx(), c.grid.ny()});
  };

  run_level(0);
  for (int j = 1; j <= max_levels; ++j) {
    run_level(j);
    const LevelRecord& prev = out.history[j - 1];
    const LevelRecord& cur = out.history[j];
    if (length(cur.minimizer - prev.minimizer) > prev.R) {
      out.z_star = prev.minimizer;
      out.R_final = prev.R;
      out.low_confidence = (j == 1);
      return out;
    }
  }
  out.reached_cap = true;
  out.z_star = out.history.back().minimizer;
  out.R_final = out.history.back().R;
  return out;
}

}  // namespace bhs::esm
