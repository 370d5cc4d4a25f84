#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parisi/solver.hpp"

namespace parisi {

struct Rectangle {
  double q_lo = 0.0, q_hi = 0.0;
  double z2_lo = 0.0, z2_hi = 0.0;
};

struct CertCheck {
  std::string name;
  double margin = 0.0;  // evaluated slack, favorable direction positive
  bool pass = false;
  bool mandatory = true;
};

enum class Verdict { Certified2RSB, NotCertified };

struct CertificationReport {
  Rectangle rect;
  std::vector<CertCheck> checks;
  Verdict verdict = Verdict::NotCertified;
  std::vector<std::string> reasons;
  std::optional<SolveResult> solution;
  std::optional<CriterionReport> chen_sen;
  // floating-point evidence with stated tolerances, not a rigorous enclosure
  bool numerical_certificate = true;
};

struct CertifyOptions {
  double grid_step = 1e-4;
  grid::Exec exec = grid::Exec::Parallel;
};

/// Certifies that a two-term model is two-step on a (q, z2) rectangle:
/// the endpoint inequalities for z1 > 0, the level ordering, the
/// second-derivative condition, h1(1) > 0 and h2(0) < 0 (evaluated at the
/// exact worst corners), the smaller-branch isolation, a solve inside the
/// rectangle, and the full optimality report of the assembled measure.
/// Strictness threshold: margin > 1e-12.  The monotonicity threshold and the
/// psi / fbar landscape conditions are also evaluated; psi / fbar are
/// mandatory only for convex models, the monotonicity margin is always
/// informational.  Requires an s+p model with s >= 3, p >= s+2 and a
/// nondegenerate rectangle inside (0,1) x (0,inf).
CertificationReport certify_rectangle(const MixtureModel& model, const Rectangle& rect,
                                      const CertifyOptions& opts = {});

/// Sign changes of fn on a 1e-4 grid over the open interval (lo, hi), each
/// refined by bisection to refine_tol.  Grid points where |fn| < 1e-9
/// without a sign change set *double_root_flag.
int count_roots(const std::function<double(double)>& fn, double lo, double hi,
                double refine_tol = 1e-10, bool* double_root_flag = nullptr);

struct PsiCheck {
  bool psi1_ok = false;
  bool psi2_ok = false;
  double psi1_worst = 0.0;  // largest interior value away from the anchors
  double psi2_worst = 0.0;
  double anchor_max_abs = 0.0;
  int h1_roots = 0;
  int h2_roots = 0;
};

/// Strict interior negativity of psi1 on (0,q) and psi2 on (q,1).  Both
/// functions vanish to high order at their anchors, so strictness below
/// -1e-12 is demanded only outside a guard band of 1% of the interval
/// length; inside the band no value may exceed +1e-12.  The interior sign
/// pattern is cross-checked through the root counts of h1 and h2.
PsiCheck check_psi_negativity(const MixtureModel& model, const TwoRsbCoordinates& coords,
                              double grid_step = 1e-4, grid::Exec exec = grid::Exec::Parallel);

struct FbarCheck {
  bool ok = false;
  double anchor_max_abs = 0.0;  // max of |fbar(0)|, |fbar(q)|, |f(1)|
  double min_value = 0.0;       // over the grid
  double f_at_q = 0.0;
  bool sign_agreement = false;  // fbar' against -h1 / -h2
};

/// Minimizer conditions of the dual route: anchors within 1e-8,
/// fbar >= -1e-9 on the grid, and sign(fbar') = -sign(h1) on (0,q),
/// -sign(h2) on (q,1) by finite differences.
FbarCheck check_fbar(const MixtureModel& model, const TwoRsbCoordinates& coords,
                     double grid_step = 1e-4, grid::Exec exec = grid::Exec::Parallel);

}  // namespace parisi
