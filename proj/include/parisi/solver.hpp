#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "parisi/grid.hpp"
#include "parisi/measure.hpp"
#include "parisi/system2rsb.hpp"

namespace parisi {

enum class Ansatz { RS, OneRSB, TwoRSB };

const char* to_string(Ansatz a);

enum class SolveErrorKind {
  ExcludedModel,
  NoRoot,
  NoSignChange,
  NegativeZ1,
  OrderingViolation,
  BranchAmbiguity,
  BracketingFailure,
  AllAnsaetzeFail,
};

const char* to_string(SolveErrorKind k);

struct Rejection {
  Ansatz ansatz;
  std::string reason;
  std::map<std::string, double> diagnostics;
};

class SolveError : public std::runtime_error {
 public:
  SolveError(SolveErrorKind kind, const std::string& msg, double diagnostic_q = 0.0)
      : std::runtime_error(msg), kind(kind), diagnostic_q(diagnostic_q) {}
  SolveErrorKind kind;
  double diagnostic_q;
  std::vector<Rejection> rejected;  // filled by resolve_ansatz on total failure
};

struct CurvePoint {
  double q;
  double z2;
};

struct SolveResult {
  Ansatz ansatz = Ansatz::RS;
  TwoRsbCoordinates coords{};  // meaningful only for TwoRSB
  double z = 0.0;              // meaningful only for OneRSB
  double delta = 0.0;
  std::map<std::string, double> residuals;
  struct Bracket {
    double q_lo = 0.0, q_hi = 0.0;
    double z2_lo = 0.0, z2_hi = 0.0;
  } bracket;
  DiscreteMeasure measure;
  double energy = 0.0;  // Q of the assembled candidate
};

/// Pure-atom candidate: delta = 1/sqrt(xi'(1)), zero density.
SolveResult solve_rs(const MixtureModel& model);

/// One-step candidate from the scalar equation 1/xi'(1) = rsb_bracket(z);
/// the right side decreases from 1/2, so a positive root needs xi'(1) > 2
/// (throws SolveError{NoRoot} at or below that boundary).
SolveResult solve_1rsb(const MixtureModel& model);

/// Unique positive zero of f2(q, .), bracketed from [1e-8, Z] with Z grown
/// geometrically.
double f2_positive_root(const MixtureModel& model, double q);

/// The smaller zero of f1(q, .), isolated in (-1, z2_small(q)) where f1 is
/// strictly decreasing.  Throws SolveError{BranchAmbiguity} when the branch
/// cannot be isolated below the critical point.
double f1_small_branch_root(const MixtureModel& model, double q);

/// f2 zero curve on a uniform q grid; points are independent solves, so the
/// sweep is a data-parallel kernel (deterministic, ordered by q).
std::vector<CurvePoint> trace_f2_curve(const MixtureModel& model, double q_lo, double q_hi,
                                       double step = 1e-4,
                                       grid::Exec exec = grid::Exec::Parallel);

/// Continuation along the smaller-zero branch of f1, warm-starting each
/// bracket from the previous point (sequential by construction).  Every
/// returned point satisfies |f1| <= 1e-10 and z2 < z2_small(q).
std::vector<CurvePoint> trace_f1_small_branch(const MixtureModel& model, double q_lo,
                                              double q_hi, double step = 1e-4);

/// Intersect the two zero curves on [q_lo, q_hi] by bisecting
/// D(q) = f1_root(q) - f2_root(q), then assemble and validate the full
/// coordinate set.  Throws SolveError on NoSignChange / NegativeZ1 /
/// OrderingViolation, or BracketingFailure when any equation residual of the
/// assembled solution exceeds residual_tol.
SolveResult solve_2rsb(const MixtureModel& model, double q_lo, double q_hi,
                       double residual_tol = 1e-10);

/// Same, but scanning q in 0.01..0.99 step 0.005 for sign changes of D when
/// no bracket is known (a heuristic; every crossing is tried in order).
SolveResult solve_2rsb_scan(const MixtureModel& model, double residual_tol = 1e-10);

struct ResolveOutcome {
  SolveResult chosen;
  CriterionReport verification;
  std::vector<Rejection> rejected;
};

/// Try RS, then one-step, then the two-step scan, returning the first
/// candidate whose optimality report passes; every rejected candidate is
/// recorded with its failure diagnostics.  Throws SolveError{ExcludedModel}
/// for x^2 and SolveError{AllAnsaetzeFail} (carrying the rejections) when
/// nothing verifies.
ResolveOutcome resolve_ansatz(const MixtureModel& model, double grid_step = 1e-4,
                              grid::Exec exec = grid::Exec::Parallel);

}  // namespace parisi
