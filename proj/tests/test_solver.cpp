#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "parisi/numeric.hpp"
#include "parisi/solver.hpp"

using namespace parisi;

TEST_CASE("replica-symmetric candidate") {
  const auto m = oracle::ex1();
  const auto r = solve_rs(m);
  CHECK(r.ansatz == Ansatz::RS);
  CHECK(r.delta == doctest::Approx(1.0 / std::sqrt(m.d1(1.0))).epsilon(1e-15));
  CHECK(r.residuals.at("functional") <= 1e-12);
  CHECK(r.energy == doctest::Approx(std::sqrt(m.d1(1.0))).epsilon(1e-13));
}

TEST_CASE("one-step solve") {
  const auto m = oracle::pure(3);
  const auto r = solve_1rsb(m);
  // frozen from an independent bisection oracle on [1e-8, 100]
  CHECK(r.z == doctest::Approx(1.8169605355365097).epsilon(1e-10));
  CHECK(r.delta == doctest::Approx(0.34399251380682483).epsilon(1e-10));
  CHECK(r.residuals.at("stationarity") <= 1e-12);
  CHECK(r.residuals.at("functional") <= 1e-12);
  CHECK(r.energy == doctest::Approx(1.6569983635274732).epsilon(1e-12));

  // the right side is strictly decreasing, so the root is unique
  double prev = rsb_bracket(1e-6);
  for (int i = 1; i <= 200; ++i) {
    const double v = rsb_bracket(0.5 * i);
    CHECK(v < prev);
    prev = v;
  }

  // xi'(1) barely above 2 pushes z toward 0
  const auto near = MixtureModel::parse("999/1000:2,1/1000:3");
  const auto rn = solve_1rsb(near);
  CHECK(rn.z > 0.0);
  CHECK(rn.z < 3e-3);

  CHECK_THROWS_AS(solve_1rsb(oracle::pure(2)), SolveError);
  try {
    solve_1rsb(oracle::pure(2));
  } catch (const SolveError& e) {
    CHECK(e.kind == SolveErrorKind::NoRoot);
  }
}

TEST_CASE("f2 curve trace reproduces the reference brackets") {
  const auto m = oracle::ex1();
  const auto curve = trace_f2_curve(m, 0.743, 0.747, 1e-4);
  REQUIRE(curve.size() >= 2);
  CHECK(curve.front().q == 0.743);
  CHECK(curve.back().q == 0.747);
  CHECK(curve.front().z2 > 3.22);
  CHECK(curve.front().z2 < 3.25);
  CHECK(curve.back().z2 > 3.17);
  CHECK(curve.back().z2 < 3.2);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].z2 < curve[i - 1].z2);  // strictly decreasing (lambda above threshold)
    CHECK(std::fabs(f2(m, curve[i].q, curve[i].z2)) <= 1e-12);
  }
}

TEST_CASE("f2 curve trace: serial equals parallel bitwise") {
  const auto m = oracle::ex3();
  const auto a = trace_f2_curve(m, 0.3, 0.7, 1e-3, grid::Exec::Serial);
  const auto b = trace_f2_curve(m, 0.3, 0.7, 1e-3, grid::Exec::Parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].q == b[i].q);
    CHECK(a[i].z2 == b[i].z2);
  }
}

TEST_CASE("small-branch continuation") {
  const auto m = oracle::ex1();
  const auto curve = trace_f1_small_branch(m, 0.743, 0.747, 1e-4);
  CHECK(curve.front().z2 > 3.2);
  CHECK(curve.front().z2 < 3.22);
  CHECK(curve.back().z2 > 3.2);
  CHECK(curve.back().z2 < 3.22);
  for (const auto& pt : curve) {
    CHECK(std::fabs(f1(m, pt.q, pt.z2)) <= 1e-10);
    CHECK(pt.z2 < z2_critical_points(m, pt.q).small);
  }
}

TEST_CASE("two-step solve lands inside the reference rectangles") {
  struct Case {
    MixtureModel m;
    double qlo, qhi, zlo, zhi;
  };
  const Case cases[] = {
      {oracle::ex1(), 0.743, 0.747, 3.17, 3.25},
      {oracle::ex2(), 0.824, 0.828, 1.54, 1.64},
      {oracle::ex3(), 0.89, 0.9, 3.5, 4.1},
      {oracle::ex4(), 0.83, 0.833, 9.3, 9.8},
  };
  for (const auto& c : cases) {
    const auto r = solve_2rsb(c.m, c.qlo, c.qhi);
    CHECK(r.ansatz == Ansatz::TwoRSB);
    CHECK(r.coords.q >= c.qlo);
    CHECK(r.coords.q <= c.qhi);
    CHECK(r.coords.z2 >= c.zlo);
    CHECK(r.coords.z2 <= c.zhi);
    for (const auto& [name, v] : r.residuals) {
      INFO(name);
      CHECK(v <= 1e-10);
    }
    // reported bracket strictly contains q and re-solving from it is stable
    CHECK(r.bracket.q_lo < r.coords.q);
    CHECK(r.coords.q < r.bracket.q_hi);
    const auto again = solve_2rsb(c.m, r.bracket.q_lo, r.bracket.q_hi);
    CHECK(std::fabs(again.coords.q - r.coords.q) <= 1e-11);
  }
}

TEST_CASE("the crossing is unique inside the certified rectangle") {
  const auto m = oracle::ex1();
  auto d = [&](double q) { return f1_small_branch_root(m, q) - f2_positive_root(m, q); };
  int sign_changes = 0;
  double prev = d(0.743);
  for (int i = 1; i <= 40; ++i) {
    const double q = 0.743 + 1e-4 * i;
    const double v = d(q);
    if ((v < 0) != (prev < 0)) ++sign_changes;
    prev = v;
  }
  CHECK(sign_changes == 1);
}

TEST_CASE("solve errors") {
  const auto m = oracle::ex1();
  CHECK_THROWS_AS(solve_2rsb(m, 0.9, 0.95), SolveError);  // no crossing there
  try {
    solve_2rsb(m, 0.9, 0.95);
  } catch (const SolveError& e) {
    CHECK(e.kind == SolveErrorKind::NoSignChange);
  }
  CHECK_THROWS_AS(solve_2rsb(oracle::pure(2), 0.4, 0.6), SolveError);
  CHECK_THROWS_AS(solve_2rsb(m, 0.0, 0.5), std::invalid_argument);

  // the pure 3-spin scan crosses once but violates the level ordering
  try {
    solve_2rsb_scan(oracle::pure(3));
    FAIL("scan should not certify a pure model");
  } catch (const SolveError& e) {
    CHECK(e.kind == SolveErrorKind::NoSignChange);
    REQUIRE(e.rejected.size() >= 1);
    CHECK(e.rejected[0].reason.find("OrderingViolation") != std::string::npos);
  }
}

TEST_CASE("ansatz resolution") {
  // pure 3-spin: one step of symmetry breaking, criterion passes
  {
    const auto out = resolve_ansatz(oracle::pure(3), 1e-3);
    CHECK(out.chosen.ansatz == Ansatz::OneRSB);
    CHECK(out.verification.pass);
    REQUIRE(out.rejected.size() == 1);  // RS was tried and failed
    CHECK(out.rejected[0].ansatz == Ansatz::RS);
  }
  // pure-like 4+40 mixture resolves to two steps inside the reference range
  {
    const auto out = resolve_ansatz(oracle::ex4(), 1e-3);
    CHECK(out.chosen.ansatz == Ansatz::TwoRSB);
    CHECK(out.verification.pass);
    CHECK(out.chosen.coords.q >= 0.83);
    CHECK(out.chosen.coords.q <= 0.833);
  }
  CHECK_THROWS_AS(resolve_ansatz(oracle::pure(2)), SolveError);
}
