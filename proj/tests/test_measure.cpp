#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oracles.hpp"
#include "parisi/measure.hpp"
#include "parisi/solver.hpp"

using namespace parisi;

TEST_CASE("measure validation") {
  CHECK_THROWS_AS(DiscreteMeasure({}, {}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({0.1}, {1.0}, 0.5), std::invalid_argument);  // t0 != 0
  CHECK_THROWS_AS(DiscreteMeasure({0.0, 0.5}, {2.0, 1.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({0.0}, {1.0}, 0.0), std::invalid_argument);  // atom
  CHECK_THROWS_AS(DiscreteMeasure({0.0, 1.0}, {1.0, 2.0}, 0.5), std::invalid_argument);
  CHECK_NOTHROW(DiscreteMeasure({0.0, 0.3, 0.7}, {0.5, 0.5, 2.0}, 0.1));
}

TEST_CASE("tail mass") {
  const auto nu = DiscreteMeasure::two_step(0.6, 1.0, 2.0, 0.25);
  CHECK(nu.tail_mass(1.0) == 0.25);  // only the atom survives
  // r <= q: a1 (q - r) + a2 (1 - q) + atom
  const double r = 0.2;
  CHECK(nu.tail_mass(r) == doctest::Approx(1.0 * (0.6 - r) + 2.0 * 0.4 + 0.25).epsilon(1e-15));
  const auto rs = DiscreteMeasure::constant_density(1.5, 0.25);
  CHECK(rs.tail_mass(0.0) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(nu.charged_points() == std::vector<double>{0.0, 0.6});
  CHECK(DiscreteMeasure::constant_density(0.0, 1.0).charged_points().empty());
}

TEST_CASE("tail mass is nonincreasing") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto nu = oracle::random_measure();
    for (int i = 0; i < 50; ++i) {
      double r1 = oracle::uniform(0.0, 1.0);
      double r2 = oracle::uniform(0.0, 1.0);
      if (r1 > r2) std::swap(r1, r2);
      CHECK(nu.tail_mass(r1) >= nu.tail_mass(r2));
    }
  }
}

TEST_CASE("ground-state functional closed forms") {
  const auto m = oracle::ex1();
  // pure atom: Q = (delta xi'(1) + 1/delta)/2
  for (double delta : {0.2, 0.5, 1.0, 2.0}) {
    const auto nu = DiscreteMeasure::constant_density(0.0, delta);
    CHECK(crisanti_sommers(m, nu) ==
          doctest::Approx(0.5 * (delta * m.d1(1.0) + 1.0 / delta)).epsilon(1e-14));
  }
  // its minimum over delta sits at 1/sqrt(xi'(1)) with value sqrt(xi'(1))
  const double best = oracle::golden_min_arg(
      [&](double d) { return crisanti_sommers(m, DiscreteMeasure::constant_density(0.0, d)); },
      0.05, 5.0);
  CHECK(best == doctest::Approx(1.0 / std::sqrt(m.d1(1.0))).epsilon(1e-8));
  CHECK(crisanti_sommers(m, DiscreteMeasure::constant_density(0.0, best)) ==
        doctest::Approx(std::sqrt(m.d1(1.0))).epsilon(1e-12));
}

TEST_CASE("closed form matches adaptive quadrature") {
  const auto models = {oracle::ex1(), oracle::ex3()};
  int done = 0;
  for (const auto& m : models) {
    for (int i = 0; i < 25; ++i) {
      const auto nu = oracle::random_measure();
      const double closed = crisanti_sommers(m, nu);
      const double quad = oracle::crisanti_sommers_quadrature(m, nu);
      CHECK(std::fabs(closed - quad) <= 1e-10);
      ++done;
    }
  }
  CHECK(done == 50);
}

TEST_CASE("optimality function basics") {
  const auto m = oracle::ex1();
  const auto nu = oracle::random_measure();
  CHECK(chen_sen_g(m, nu, 1.0) == 0.0);  // exactly

  // derivative: g'(u) = -(xi'(u) - I(u))
  for (int i = 0; i < 40; ++i) {
    double u = oracle::uniform(0.05, 0.95);
    bool near_break = false;
    for (double t : nu.breakpoints()) near_break |= std::fabs(u - t) < 1e-3;
    if (near_break) continue;
    const double fd = oracle::d1_central([&](double x) { return chen_sen_g(m, nu, x); }, u, 1e-6);
    const double expected = -(m.d1(u) - tail_inverse_square_integral(nu, u));
    CHECK(std::fabs(fd - expected) <= 1e-6);
  }

  // curvature: g''(u) = -xi''(u) + 1/T(u)^2
  for (int i = 0; i < 40; ++i) {
    double u = oracle::uniform(0.05, 0.95);
    bool near_break = false;
    for (double t : nu.breakpoints()) near_break |= std::fabs(u - t) < 1e-3;
    if (near_break) continue;
    const double fd = oracle::d2_central([&](double x) { return chen_sen_g(m, nu, x); }, u, 1e-4);
    const double tu = nu.tail_mass(u);
    CHECK(std::fabs(fd - (-m.d2(u) + 1.0 / (tu * tu))) <= 1e-5);
  }
}

TEST_CASE("optimality anchors at a certified two-step solution") {
  const auto m = oracle::ex1();
  const auto sol = solve_2rsb(m, 0.743, 0.747);
  const auto& nu = sol.measure;
  CHECK(std::fabs(chen_sen_g(m, nu, 0.0)) <= 1e-8);
  CHECK(std::fabs(chen_sen_g(m, nu, sol.coords.q)) <= 1e-8);

  // shifting the split point breaks optimality: g dips strictly negative
  const auto perturbed =
      DiscreteMeasure::two_step(sol.coords.q + 0.05, sol.coords.a1, sol.coords.a2, sol.delta);
  double min_g = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    min_g = std::min(min_g, chen_sen_g(m, perturbed, double(i) / 2000));
  }
  CHECK(min_g < -1e-6);
}

TEST_CASE("criterion verification") {
  const auto m = oracle::ex1();
  const auto sol = solve_2rsb(m, 0.743, 0.747);
  const auto report = chen_sen_verify(m, sol.measure, 1e-4);
  CHECK(report.pass);
  CHECK(report.functional_residual <= 1e-9);
  CHECK(report.min_g >= -1e-9);
  CHECK(report.max_charged_anchor <= 1e-8);
  CHECK(report.g_at_1 == 0.0);

  // the RS candidate for the same model fails
  const auto rs = solve_rs(m);
  const auto rs_report = chen_sen_verify(m, rs.measure, 1e-3);
  CHECK_FALSE(rs_report.pass);
  CHECK(rs_report.min_g < -1e-3);

  CHECK_THROWS_AS(chen_sen_verify(m, sol.measure, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(chen_sen_verify(m, sol.measure, 0.0), std::invalid_argument);
}

TEST_CASE("serial and parallel verification agree bitwise") {
  const auto m = oracle::ex2();
  const auto sol = solve_2rsb(m, 0.824, 0.828);
  const auto a = chen_sen_verify(m, sol.measure, 1e-4, grid::Exec::Serial);
  const auto b = chen_sen_verify(m, sol.measure, 1e-4, grid::Exec::Parallel);
  CHECK(a.min_g == b.min_g);
  CHECK(a.min_g_at == b.min_g_at);
  CHECK(a.functional_residual == b.functional_residual);
  CHECK(a.pass == b.pass);
}
