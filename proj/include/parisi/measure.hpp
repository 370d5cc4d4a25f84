#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "parisi/grid.hpp"
#include "parisi/mixture.hpp"

namespace parisi {

/// A candidate overlap-distribution measure
///   nu(ds) = gamma(s) ds on [0,1)  +  atom * delta_1,
/// where gamma is a nondecreasing nonnegative step function: level[i] on
/// [breakpoints[i], breakpoints[i+1]) and the last level runs to 1.
///
/// One type covers every ansatz used here: a single level 0 is the pure-atom
/// (replica symmetric) candidate, a single positive level is one step of
/// symmetry breaking, two levels are the two-step ansatz.
class DiscreteMeasure {
 public:
  /// Pure unit atom; mostly for containers, not a meaningful candidate.
  DiscreteMeasure() : breakpoints_{0.0}, levels_{0.0}, atom_(1.0) {}

  DiscreteMeasure(std::vector<double> breakpoints, std::vector<double> levels, double atom);

  static DiscreteMeasure constant_density(double level, double atom) {
    return DiscreteMeasure({0.0}, {level}, atom);
  }
  static DiscreteMeasure two_step(double q, double a1, double a2, double atom) {
    return DiscreteMeasure({0.0, q}, {a1, a2}, atom);
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& levels() const { return levels_; }
  double atom() const { return atom_; }
  std::size_t steps() const { return levels_.size(); }
  /// Right end of piece i (1.0 for the last piece).
  double piece_end(std::size_t i) const {
    return i + 1 < breakpoints_.size() ? breakpoints_[i + 1] : 1.0;
  }

  /// nu((r,1]) -- strictly positive, nonincreasing and piecewise affine in r.
  double tail_mass(double r) const;
  double total_mass() const { return tail_mass(0.0); }

  /// Breakpoints where the measure induced by gamma carries an atom, i.e.
  /// where gamma jumps (including 0 when the first level is positive).
  std::vector<double> charged_points() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
  double atom_;
};

/// int_0^s dr / nu((r,1])^2, evaluated per affine piece as
/// (y-x)/(T(x) T(y)) -- exact for the step density, stable for level -> 0.
double tail_inverse_square_integral(const DiscreteMeasure& nu, double s);

/// The ground-state functional
///   Q(nu) = 1/2 ( int_0^1 xi'(s) nu(ds) + int_0^1 dq / nu((q,1]) ),
/// both integrals in closed form (polynomial antiderivatives and logarithms
/// of the affine tail).
double crisanti_sommers(const MixtureModel& model, const DiscreteMeasure& nu);

/// The optimality function
///   g(u) = int_u^1 ( xi'(s) - int_0^s dr/nu((r,1])^2 ) ds,
/// closed form; g(1) = 0 exactly.  nu is the minimizer iff
/// xi'(1) = int_0^1 dr/nu((r,1])^2, min g >= 0, and g vanishes on the
/// support of the density measure.
double chen_sen_g(const MixtureModel& model, const DiscreteMeasure& nu, double u);

struct CriterionAnchor {
  double u;
  double g;
  bool charged;  // a zero of g is required here
};

struct CriterionReport {
  double grid_step = 0.0;
  double functional_residual = 0.0;  // |xi'(1) - int_0^1 dr/T^2|
  double min_g = 0.0;                // over the grid
  double min_g_at = 0.0;
  double g_at_1 = 0.0;
  std::vector<CriterionAnchor> anchors;  // g at every breakpoint
  double max_charged_anchor = 0.0;       // max |g| over charged anchors
  bool pass = false;
};

/// Grid verification of the optimality criterion with analytic anchor
/// checks.  Pass tolerances: g >= -1e-9 on the grid, |g| <= 1e-8 at every
/// charged breakpoint, functional residual <= 1e-9.  Failure is data, not an
/// error.  grid_step must lie in (0, 1e-2].
CriterionReport chen_sen_verify(const MixtureModel& model, const DiscreteMeasure& nu,
                                double grid_step = 1e-4,
                                grid::Exec exec = grid::Exec::Parallel);

}  // namespace parisi
