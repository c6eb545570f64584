#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "bhs/error.hpp"
#include "bhs/forward.hpp"
#include "doctest.h"

using namespace bhs;
using namespace bhs::forward;
using geometry::discretize;
using geometry::make_named_curve;
using std::numbers::pi;

namespace {

constexpr cplx I{0.0, 1.0};

LayerDensities plane_wave_solve(const ForwardSolver& s, Vec2 d) {
  return s.solve(plane_wave_data(s.discretization(), PlaneWave(s.kappa(), d)));
}

Vec2 rotate(Vec2 v, double a) {
  return {std::cos(a) * v.x - std::sin(a) * v.y, std::sin(a) * v.x + std::cos(a) * v.y};
}

BoundaryData random_boundary_data(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BoundaryData b;
  b.h1.resize(m);
  b.h2.resize(m);
  for (auto& z : b.h1) z = {u(g), u(g)};
  for (auto& z : b.h2) z = {u(g), u(g)};
  return b;
}

double max_abs(const ComplexMatrix& m) { return m.max_abs(); }

}  // namespace

TEST_SUITE("forward") {
  TEST_CASE("plane wave") {
    const PlaneWave w(2.0, {0.6, 0.8});
    CHECK(std::abs(w.value({0, 0}) - 1.0) == 0.0);
    CHECK(std::abs(w.value({1.0, 0.5}) - std::exp(I * 2.0 * (0.6 + 0.4))) < 1e-15);
    CHECK(std::abs(w.normal_derivative({0, 0}, {1, 0}) - I * 1.2) < 1e-15);
    CHECK_THROWS_AS(PlaneWave(2.0, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(PlaneWave(0.0, {1.0, 0.0}), DomainError);
  }

  TEST_CASE("system on the circle is block circulant with finite diagonals") {
    const auto disc = discretize(make_named_curve("circle", {0, 0}, 1), 32);
    const auto a = assemble_system(disc, 2.0);
    const std::size_t m = disc.size();
    CHECK(a.rows() == 2 * m);
    for (int bi = 0; bi < 2; ++bi) {
      for (int bj = 0; bj < 2; ++bj) {
        double err = 0.0;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            err = std::max(err, std::abs(a(bi * m + i, bj * m + j) - a(bi * m, bj * m + (j + m - i) % m)));
        CHECK(err < 1e-10);
      }
    }
    for (std::size_t i = 0; i < 2 * m; ++i) CHECK(std::isfinite(std::abs(a(i, i))));
  }

  TEST_CASE("modified single layer on a constant density matches adaptive quadrature") {
    const auto disc = discretize(make_named_curve("circle", {0, 0}, 1), 64);
    const auto a = assemble_system(disc, 1.0);
    const std::size_t m = disc.size();
    cplx s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += a(0, m + j);
    // |x(0) - x(tau)| = 2 sin(tau/2) on the unit circle; log singularities at both ends.
    boost::math::quadrature::tanh_sinh<double> ts;
    const double oracle = ts.integrate(
        [](double tau) { return boost::math::cyl_bessel_k(0, 2.0 * std::sin(tau / 2)) / (2 * pi); }, 0.0, 2 * pi);
    CHECK(std::abs(s.real() - oracle) < 1e-8);
    CHECK(std::abs(s.imag()) < 1e-12);
    // Graf's addition theorem gives the same integral in closed form.
    CHECK(std::abs(oracle - boost::math::cyl_bessel_i(0, 1.0) * boost::math::cyl_bessel_k(0, 1.0)) < 1e-12);
  }

  TEST_CASE("linearity and residual of the clamped solve") {
    const auto disc = discretize(make_named_curve("apple", {0, 0}, 1), 64);
    const ForwardSolver solver(disc, pi);
    const auto a = assemble_system(disc, pi);
    const std::size_t m = disc.size();

    const auto zero = solver.solve({ComplexVector(m), ComplexVector(m)});
    for (std::size_t i = 0; i < m; ++i) CHECK((zero.phiH[i] == 0.0 && zero.phiM[i] == 0.0));

    const auto h = random_boundary_data(m, 1), k = random_boundary_data(m, 2);
    const cplx ca{0.3, -1.1}, cb{-2.0, 0.5};
    BoundaryData mix{ComplexVector(m), ComplexVector(m)};
    for (std::size_t i = 0; i < m; ++i) {
      mix.h1[i] = ca * h.h1[i] + cb * k.h1[i];
      mix.h2[i] = ca * h.h2[i] + cb * k.h2[i];
    }
    const auto ph = solver.solve(h), pk = solver.solve(k), pm = solver.solve(mix);
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const cplx wantH = ca * ph.phiH[i] + cb * pk.phiH[i], wantM = ca * ph.phiM[i] + cb * pk.phiM[i];
      scale = std::max({scale, std::abs(wantH), std::abs(wantM)});
      err = std::max({err, std::abs(pm.phiH[i] - wantH), std::abs(pm.phiM[i] - wantM)});
    }
    CHECK(err <= 1e-12 * scale);

    const Vec2 xhat = unit_direction(0.4);
    const cplx ff = far_field(pm, disc, pi, xhat);
    const cplx ffw = ca * far_field(ph, disc, pi, xhat) + cb * far_field(pk, disc, pi, xhat);
    // Relative to the quadrature sum of |phi_H|, the natural scale of the far-field sum.
    double l1 = 0.0;
    for (std::size_t i = 0; i < m; ++i) l1 += std::abs(pm.phiH[i]) * disc.jacobian[i] * disc.weight;
    CHECK(std::abs(ff - ffw) <= 1e-12 * l1);

    ComplexVector x(2 * m), rhs(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = ph.phiH[i];
      x[m + i] = ph.phiM[i];
      rhs[i] = h.h1[i];
      rhs[m + i] = h.h2[i];
    }
    const auto ax = linalg::matvec(a, x);
    double r = 0.0;
    for (std::size_t i = 0; i < 2 * m; ++i) r += std::norm(ax[i] - rhs[i]);
    CHECK(std::sqrt(r) / linalg::norm(rhs) < 1e-10);
    CHECK(solver.condition_estimate() < ForwardSolver::max_condition);
  }

  TEST_CASE("disk oracle agreement") {
    for (double kappa : {pi, 2 * pi}) {
      CAPTURE(kappa);
      const auto f = far_field_matrix(make_named_curve("circle", {0, 0}, 1), kappa, 64, 128);
      double err = 0.0;
      for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j)
          err = std::max(err, std::abs(f.F(i, j) - analytic_disk_far_field(1.0, kappa, direction(j, 64), direction(i, 64))));
      CHECK(err < 1e-6);
    }
  }

  TEST_CASE("disk oracle symmetries") {
    const double kappa = 5.0, R = 0.8;
    for (double a : {0.0, 0.9, 2.5}) {
      for (double b : {0.3, 4.0}) {
        const Vec2 x = unit_direction(a), d = unit_direction(b);
        const cplx v = analytic_disk_far_field(R, kappa, d, x);
        CHECK(std::abs(v - analytic_disk_far_field(R, kappa, -1.0 * x, -1.0 * d)) < 1e-12);
        CHECK(std::abs(v - analytic_disk_far_field(R, kappa, unit_direction(b + 1.1), unit_direction(a + 1.1))) <
              1e-12);
      }
    }
    CHECK(disk_mode_count(1.0, 2 * pi) == int(std::ceil(2 * pi + 8 * std::cbrt(2 * pi) + 12)));
    CHECK_THROWS_AS(analytic_disk_far_field(-1.0, 1.0, {1, 0}, {1, 0}), DomainError);
  }

  TEST_CASE("far field is the large-r limit of the scattered field") {
    const double kappa = pi;
    const auto disc = discretize(make_named_curve("apple", {0.1, -0.2}, 1), 128);
    const ForwardSolver solver(disc, kappa);
    const auto dens = plane_wave_solve(solver, unit_direction(pi / 3));
    const double r = 1e4;
    for (double a : {0.0, 1.0, 2.2, 4.0}) {
      const Vec2 xhat = unit_direction(a);
      const cplx us = evaluate_scattered(dens, disc, kappa, r * xhat).total;
      const cplx limit = us * std::sqrt(r) * std::exp(-I * kappa * r) * std::sqrt(8 * pi * kappa) * std::exp(-I * pi / 4.0);
      const cplx ff = far_field(dens, disc, kappa, xhat);
      CHECK(std::abs(limit - ff) < 1e-3 * std::abs(ff));
    }
    CHECK(far_field({ComplexVector(disc.size()), ComplexVector(disc.size())}, disc, kappa, {1, 0}) == 0.0);
  }

  TEST_CASE("clamped condition near the boundary") {
    const double kappa = pi;
    const auto curve = make_named_curve("circle", {0, 0}, 0.25);
    const auto disc = discretize(curve, 256);
    const ForwardSolver solver(disc, kappa);
    const PlaneWave wave(kappa, unit_direction(0.7));
    const auto dens = solver.solve(plane_wave_data(disc, wave));
    for (int k = 0; k < 8; ++k) {
      const double t = 2 * pi * (k + 0.5) / 8;
      const Vec2 x = (0.25 + 1e-2) * unit_direction(t);
      const cplx u = wave.value(x) + evaluate_scattered(dens, disc, kappa, x).total;
      CHECK(std::abs(u) < 1e-1);
    }
    CHECK_THROWS_AS(evaluate_scattered(dens, disc, kappa, (0.25 + 1e-3) * unit_direction(0.1)), NearBoundaryError);
  }

  TEST_CASE("Sommerfeld radiation condition at r = 200") {
    const double kappa = pi;
    const auto disc = discretize(make_named_curve("peanut", {0, 0}, 1), 128);
    const auto dens = plane_wave_solve(ForwardSolver(disc, kappa), {1, 0});
    const double r = 200.0, h = 1e-4;
    for (double a : {0.2, 1.7, 3.9}) {
      const Vec2 xhat = unit_direction(a);
      const cplx u = evaluate_scattered(dens, disc, kappa, r * xhat).helmholtz;
      const cplx du = (evaluate_scattered(dens, disc, kappa, (r + h) * xhat).helmholtz -
                       evaluate_scattered(dens, disc, kappa, (r - h) * xhat).helmholtz) /
                      (2 * h);
      CHECK(std::abs(std::sqrt(r) * (du - I * kappa * u)) < 1e-2 * std::abs(u * std::sqrt(r)));
    }
  }

  TEST_CASE("modified component is evanescent") {
    const double kappa = pi;
    const auto disc = discretize(make_named_curve("apple", {0, 0}, 1), 128);
    const auto dens = plane_wave_solve(ForwardSolver(disc, kappa), unit_direction(0.5));
    for (int k = 0; k < 8; ++k) {
      const Vec2 xhat = direction(k, 8);
      const double m5 = std::abs(evaluate_scattered(dens, disc, kappa, 5.0 * xhat).modified);
      const double m10 = std::abs(evaluate_scattered(dens, disc, kappa, 10.0 * xhat).modified);
      CHECK(m10 < m5 * std::exp(-4 * kappa));
    }
  }

  TEST_CASE("rotational symmetry on the circle") {
    const double kappa = 2 * pi, a = pi / 7;
    const auto disc = discretize(make_named_curve("circle", {0, 0}, 1), 128);
    const ForwardSolver solver(disc, kappa);
    const Vec2 d = unit_direction(0.3), x = unit_direction(1.9);
    const cplx v0 = far_field(plane_wave_solve(solver, d), disc, kappa, x);
    const cplx v1 = far_field(plane_wave_solve(solver, rotate(d, a)), disc, kappa, rotate(x, a));
    CHECK(std::abs(v0 - v1) < 1e-8);
  }

  TEST_CASE("far-field matrix structure") {
    const auto circ = far_field_matrix(make_named_curve("circle", {0, 0}, 1), pi, 16, 128);
    double err = 0.0;
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) err = std::max(err, std::abs(circ.F(i, j) - circ.F(0, (j - i + 16) % 16)));
    CHECK(err < 1e-8);
    CHECK(circ.N == 16);
    CHECK(circ.kappa == pi);

    const auto apple = far_field_matrix(make_named_curve("apple", {0, 0}, 1), pi, 32, 128);
    CHECK(reciprocity_residual(apple) < 1e-4);

    CHECK_THROWS_AS(far_field_matrix(make_named_curve("apple", {0, 0}, 1), pi, 7, 64), DomainError);
    CHECK_THROWS_AS(far_field_matrix(make_named_curve("apple", {0, 0}, 1), pi, 6, 64), DomainError);
  }

  TEST_CASE("self-convergence in the node count") {
    struct Case {
      const char* name;
      double tol;
    };
    for (const Case c : {Case{"apple", 1e-8}, Case{"peanut", 1e-8}, Case{"peach", 1e-5}}) {
      CAPTURE(c.name);
      const auto curve = make_named_curve(c.name, {0, 0}, 1);
      const auto f128 = far_field_matrix(curve, pi, 8, 128), f256 = far_field_matrix(curve, pi, 8, 256);
      double err = 0.0;
      for (std::size_t k = 0; k < f128.F.data().size(); ++k)
        err = std::max(err, std::abs(f128.F.data()[k] - f256.F.data()[k]));
      CHECK(err < c.tol);
    }

    // Superalgebraic convergence for an analytic boundary.
    const auto curve = make_named_curve("peanut", {0, 0}, 1);
    const auto ref = far_field_matrix(curve, pi, 8, 256);
    auto err_at = [&](int n) {
      const auto f = far_field_matrix(curve, pi, 8, n);
      double e = 0.0;
      for (std::size_t k = 0; k < f.F.data().size(); ++k) e = std::max(e, std::abs(f.F.data()[k] - ref.F.data()[k]));
      return e;
    };
    const double e8 = err_at(8), e16 = err_at(16), e32 = err_at(32);
    CHECK(e8 / e16 >= 10.0);
    CHECK(e16 / e32 >= 10.0);
  }

  TEST_CASE("reciprocity across shapes and a shifted scatterer") {
    for (const char* name : {"peanut", "peach", "ellipse"}) {
      CAPTURE(name);
      CHECK(reciprocity_residual(far_field_matrix(make_named_curve(name, {0, 0}, 1), 2 * pi, 16, 128)) < 1e-4);
    }
    CHECK(reciprocity_residual(far_field_matrix(make_named_curve("apple", {-1.5, 1.5}, 1), pi, 16, 128)) < 1e-4);
  }

  TEST_CASE("herglotz wave function") {
    const int N = 16;
    ComplexVector g(N, cplx(1.0 / (2 * pi)));
    CHECK(std::abs(herglotz_wave(g, 3.0, {0, 0}) - 1.0) < 1e-15);
    CHECK(herglotz_wave(ComplexVector(N), 3.0, {0.4, 1.0}) == 0.0);

    // Superposition: scattering of v_g has far field (2 pi / N) F g.
    const double kappa = pi;
    const auto curve = make_named_curve("peanut", {0, 0}, 1);
    const auto disc = discretize(curve, 128);
    const auto f = far_field_matrix(curve, kappa, N, 128);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& z : g) z = {u(rng), u(rng)};
    BoundaryData data{ComplexVector(disc.size()), ComplexVector(disc.size())};
    for (std::size_t i = 0; i < disc.size(); ++i) {
      cplx dn = 0.0;
      for (int j = 0; j < N; ++j) {
        const Vec2 d = direction(j, N);
        dn += I * kappa * dot(d, disc.normals[i]) * std::exp(I * kappa * dot(disc.nodes[i], d)) * g[j];
      }
      data.h1[i] = -herglotz_wave(g, kappa, disc.nodes[i]);
      data.h2[i] = -(2 * pi / N) * dn;
    }
    const auto dens = ForwardSolver(disc, kappa).solve(data);
    const auto fg = linalg::matvec(f.F, g);
    for (int i = 0; i < N; ++i) CHECK(std::abs(far_field(dens, disc, kappa, direction(i, N)) - (2 * pi / N) * fg[i]) < 1e-8);
  }

  TEST_CASE("noise model") {
    const auto f = far_field_matrix(make_named_curve("apple", {0, 0}, 1), pi, 16, 64);
    CHECK(add_noise(f, 0.0, 5).F == f.F);
    CHECK(add_noise(f, 0.05, 5).F == add_noise(f, 0.05, 5).F);
    CHECK_FALSE(add_noise(f, 0.05, 5).F == add_noise(f, 0.05, 6).F);
    CHECK_THROWS_AS(add_noise(f, -0.1, 5), DomainError);

    const auto e = noise_matrix(16, 5);
    Eigen::MatrixXcd ee(16, 16);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        ee(i, j) = e(i, j);
      }
    CHECK(std::abs(Eigen::JacobiSVD<Eigen::MatrixXcd>(ee).singularValues()(0) - 1.0) < 1e-8);
    const auto noisy = add_noise(f, 0.05, 5);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) CHECK(noisy.F(i, j) == f.F(i, j) * (1.0 + 0.05 * e(i, j)));
    CHECK(max_abs(noisy.F) > 0.0);
  }

  TEST_CASE("exact interior Dirichlet eigenvalue is reported as ill-conditioned") {
    const double j01 = 2.404825557695773;
    const auto disc = discretize(make_named_curve("circle", {0, 0}, 1), 64);
    try {
      ForwardSolver s(disc, j01);
      FAIL("expected IllConditionedError, condition " << s.condition_estimate());
    } catch (const IllConditionedError& e) {
      CHECK(e.kappa == j01);
      CHECK(std::string(e.what()).find("kappa=2.4048") != std::string::npos);
    }
  }
}
