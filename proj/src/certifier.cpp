#include "parisi/certifier.hpp"

#include <cmath>

#include "parisi/dual.hpp"
#include "parisi/numeric.hpp"

namespace parisi {

namespace {

constexpr double kStrict = 1e-12;  // "strictly positive" means margin above this

double fd_derivative(const std::function<double(double)>& fn, double x, double h) {
  return (fn(x + h) - fn(x - h)) / (2.0 * h);
}

}  // namespace

int count_roots(const std::function<double(double)>& fn, double lo, double hi,
                double refine_tol, bool* double_root_flag) {
  if (double_root_flag) *double_root_flag = false;
  if (!(lo < hi)) return 0;
  const double step = 1e-4;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  int count = 0;
  double prev_u = 0.0, prev_v = 0.0;
  bool have_prev = false;
  for (std::size_t i = 1; i < n; ++i) {  // open interval: endpoints excluded
    const double u = lo + (hi - lo) * double(i) / double(n);
    const double v = fn(u);
    if (std::fabs(v) < 1e-9) {
      if (double_root_flag) *double_root_flag = true;
      continue;  // graze without a confirmed crossing
    }
    if (have_prev && (v < 0) != (prev_v < 0)) {
      // sharpen the crossing location to refine_tol before counting it
      num::bisect(fn, prev_u, u, /*max_iter=*/std::max(60, int(-std::log2(refine_tol)) + 4));
      ++count;
    }
    prev_u = u;
    prev_v = v;
    have_prev = true;
  }
  return count;
}

PsiCheck check_psi_negativity(const MixtureModel& model, const TwoRsbCoordinates& coords,
                              double grid_step, grid::Exec exec) {
  PsiCheck out;
  const double q = coords.q;

  bool doubles = false;
  out.h1_roots = count_roots([&](double u) { return h1(model, coords, u); }, 0.0, q, 1e-10,
                             &doubles);
  out.h2_roots = count_roots([&](double u) { return h2(model, coords, u); }, q, 1.0, 1e-10,
                             &doubles);

  out.anchor_max_abs = std::max(
      std::max(std::fabs(psi1(model, coords, 0.0)), std::fabs(psi1(model, coords, q))),
      std::max(std::fabs(psi2(model, coords, q)), std::fabs(psi2(model, coords, 1.0))));

  // psi vanishes to high order at the anchors; strictness is only resolvable
  // outside a guard band of 1% of the interval length
  auto scan = [&](auto&& fn, double lo, double hi, double& worst_bulk) {
    const double band = 0.01 * (hi - lo);
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / grid_step));
    // max over interior = -(min of -fn); lexicographic reduce keeps it deterministic
    double worst_all = -std::numeric_limits<double>::infinity();
    worst_bulk = -std::numeric_limits<double>::infinity();
    const auto neg_bulk = grid::min_reduce(
        n - 1,
        [&](std::size_t i) {
          const double u = lo + (hi - lo) * double(i + 1) / double(n);
          const double v = fn(u);
          if (u - lo < band || hi - u < band) return std::numeric_limits<double>::infinity();
          return -v;
        },
        exec);
    worst_bulk = -neg_bulk.value;
    const auto neg_all = grid::min_reduce(
        n - 1,
        [&](std::size_t i) {
          const double u = lo + (hi - lo) * double(i + 1) / double(n);
          return -fn(u);
        },
        exec);
    worst_all = -neg_all.value;
    return worst_bulk < -kStrict && worst_all <= kStrict;
  };

  const bool psi1_grid =
      scan([&](double a) { return psi1(model, coords, a); }, 0.0, q, out.psi1_worst);
  const bool psi2_grid =
      scan([&](double b) { return psi2(model, coords, b); }, q, 1.0, out.psi2_worst);

  const bool anchors_ok = out.anchor_max_abs <= 1e-8;
  out.psi1_ok = psi1_grid && anchors_ok && out.h1_roots == 1;
  out.psi2_ok = psi2_grid && anchors_ok && out.h2_roots == 1;
  return out;
}

FbarCheck check_fbar(const MixtureModel& model, const TwoRsbCoordinates& coords,
                     double grid_step, grid::Exec exec) {
  FbarCheck out;
  const double q = coords.q;
  const DiscreteMeasure nu = DiscreteMeasure::two_step(q, coords.a1, coords.a2, coords.delta);
  const double b = optimal_B(model, nu);

  out.anchor_max_abs = std::max(std::fabs(dual_fbar(model, coords, 0.0)),
                                std::fabs(dual_fbar(model, coords, q)));
  out.anchor_max_abs = std::max(out.anchor_max_abs, std::fabs(dual_f(model, b, nu, 1.0)));
  out.f_at_q = dual_f(model, b, nu, q);

  const auto n = static_cast<std::size_t>(std::ceil(1.0 / grid_step));
  const auto mn = grid::min_reduce(
      n + 1, [&](std::size_t i) { return dual_fbar(model, coords, double(i) / double(n)); },
      exec);
  out.min_value = mn.value;

  // fd sign of fbar' against -h1 / -h2, skipping unresolvable near-zeros of h
  const double fd_h = 1e-7;
  bool signs_ok = true;
  const int samples = 400;
  for (int i = 1; i < samples && signs_ok; ++i) {
    const double a = q * double(i) / double(samples);
    if (a < fd_h || a > q - fd_h) continue;
    const double hv = h1(model, coords, a);
    if (std::fabs(hv) < 1e-6) continue;
    const double d = fd_derivative([&](double s) { return dual_fbar(model, coords, s); }, a, fd_h);
    if (std::fabs(d) < 1e-9) continue;
    if ((d < 0) != (hv > 0)) signs_ok = false;
  }
  for (int i = 1; i < samples && signs_ok; ++i) {
    const double u = q + (1.0 - q) * double(i) / double(samples);
    if (u < q + fd_h || u > 1.0 - fd_h) continue;
    const double hv = h2(model, coords, u);
    if (std::fabs(hv) < 1e-6) continue;
    const double d = fd_derivative([&](double s) { return dual_fbar(model, coords, s); }, u, fd_h);
    if (std::fabs(d) < 1e-9) continue;
    if ((d < 0) != (hv > 0)) signs_ok = false;
  }
  out.sign_agreement = signs_ok;

  out.ok = out.anchor_max_abs <= 1e-8 && out.min_value >= -1e-9 && signs_ok;
  return out;
}

CertificationReport certify_rectangle(const MixtureModel& model, const Rectangle& rect,
                                      const CertifyOptions& opts) {
  if (!(rect.q_lo > 0.0 && rect.q_lo < rect.q_hi && rect.q_hi < 1.0 && rect.z2_lo > 0.0 &&
        rect.z2_lo < rect.z2_hi)) {
    throw std::invalid_argument("InvalidRectangle: need 0 < q_lo < q_hi < 1 and 0 < z2_lo < z2_hi");
  }
  const auto sp = model.sp_form();
  if (!sp || sp->s < 3 || sp->p < sp->s + 2) {
    throw std::invalid_argument(
        "certification is restricted to two-term models with s >= 3 and p >= s+2");
  }

  CertificationReport report;
  report.rect = rect;
  const bool convex = is_convex(model);

  const double d11 = model.d1(1.0);
  const double d1lo = model.d1(rect.q_lo);
  const double d1hi = model.d1(rect.q_hi);

  auto add = [&](const std::string& name, double margin, bool mandatory) {
    report.checks.push_back({name, margin, margin > kStrict, mandatory});
  };

  // worst-corner endpoint inequalities
  add("z1_positive", rect.q_lo * (d11 - d1hi) / (d1hi * (1.0 - rect.q_lo)) - rect.z2_hi - 1.0,
      true);
  add("ordering",
      rect.q_lo * rect.z2_lo / (1.0 - rect.q_lo) -
          (rect.q_hi * (d11 - d1lo) / (d1lo * (1.0 - rect.q_hi)) - rect.z2_lo - 1.0),
      true);
  add("second_derivative",
      -(model.d2(rect.q_hi) * (1.0 + rect.z2_hi) * (1.0 - rect.q_lo) + d1hi - d11), true);
  add("h1_at_1",
      (1.0 + rect.z2_lo) * (d11 * rect.q_hi - d1hi + d11 * (1.0 - rect.q_hi)) -
          d11 * rect.q_lo * (d11 - d1lo) / d1lo,
      true);
  add("h2_at_0", (1.0 + rect.z2_lo) * d1lo - d11 * rect.q_hi, true);

  // smaller-branch isolation at both rectangle edges
  double branch_margin = -std::numeric_limits<double>::infinity();
  try {
    const double rlo = f1_small_branch_root(model, rect.q_lo);
    const double rhi = f1_small_branch_root(model, rect.q_hi);
    branch_margin = std::min(z2_critical_points(model, rect.q_lo).small - rlo,
                             z2_critical_points(model, rect.q_hi).small - rhi);
  } catch (const SolveError&) {
    // margin stays -inf: branch not isolated
  }
  add("branch_check", branch_margin, true);

  // monotonicity threshold: sufficient, not necessary, so informational
  double lambda_margin;
  try {
    lambda_margin = (sp->lambda - lambda_threshold(sp->s, sp->p)).value();
  } catch (const std::domain_error&) {
    lambda_margin = std::numeric_limits<double>::infinity();  // condition vacuous
  }
  add("lambda_monotone", lambda_margin, false);

  std::optional<SolveResult> solution;
  try {
    solution = solve_2rsb(model, rect.q_lo, rect.q_hi);
  } catch (const SolveError& e) {
    report.reasons.push_back(std::string("NoSolution: ") + e.what());
  }
  if (solution && !(solution->coords.z2 >= rect.z2_lo && solution->coords.z2 <= rect.z2_hi)) {
    report.reasons.push_back("NoSolution: intersection left the z2 range of the rectangle");
    solution.reset();
  }

  if (solution) {
    report.solution = solution;
    report.chen_sen = chen_sen_verify(model, solution->measure, opts.grid_step, opts.exec);
    report.checks.push_back(
        {"chen_sen", report.chen_sen->min_g, report.chen_sen->pass, true});

    const auto psi = check_psi_negativity(model, solution->coords, opts.grid_step, opts.exec);
    report.checks.push_back({"psi1_negative", -psi.psi1_worst, psi.psi1_ok, convex});
    report.checks.push_back({"psi2_negative", -psi.psi2_worst, psi.psi2_ok, convex});

    const auto fb = check_fbar(model, solution->coords, opts.grid_step, opts.exec);
    report.checks.push_back({"fbar_nonnegative", fb.min_value, fb.ok, convex});
  } else {
    report.checks.push_back({"chen_sen", 0.0, false, true});
    report.checks.push_back({"psi1_negative", 0.0, false, convex});
    report.checks.push_back({"psi2_negative", 0.0, false, convex});
    report.checks.push_back({"fbar_nonnegative", 0.0, false, convex});
  }

  bool ok = solution.has_value();
  for (const auto& c : report.checks) {
    if (c.mandatory && !c.pass) {
      ok = false;
      report.reasons.push_back("check failed: " + c.name);
    }
  }
  report.verdict = ok ? Verdict::Certified2RSB : Verdict::NotCertified;
  return report;
}

}  // namespace parisi
