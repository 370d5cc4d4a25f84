#pragma once

#include "parisi/mixture.hpp"
#include "parisi/rational.hpp"

namespace parisi {

/// Transformed unknowns of the two-step stationarity system.  With density
/// levels a1 < a2 split at q and atom delta:
///   z1 = a1 q / delta,   z2 = a2 (1-q) / delta,
/// and (z1, delta) are always derived from (q, z2) through
///   1 + z1 + z2 = q [xi'(1) - xi'(q)] / (xi'(q)(1-q)),
///   delta^2     = (1-q) / ((1+z2)(xi'(1) - xi'(q))).
struct TwoRsbCoordinates {
  double q = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
  double delta = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
};

/// Derive the full coordinate set from (q, z2).  Throws std::domain_error
/// for q outside (0,1), z2 <= 0, or the excluded model x^2.  Does not check
/// z1 > 0 or the ordering a1 < a2; the solver enforces those.
TwoRsbCoordinates coords_from_qz2(const MixtureModel& model, double q, double z2);

/// Relative disagreement of the two closed forms of delta^2.
double delta_sq_residual(const MixtureModel& model, const TwoRsbCoordinates& c);

/// |1 + z1 + z2 - q[xi'(1)-xi'(q)]/(xi'(q)(1-q))|.
double consistency_residual(const MixtureModel& model, const TwoRsbCoordinates& c);

/// (1+z)/z^2 log(1+z) - 1/z, the level term shared by the one-step
/// stationarity equation and f2.  Strictly decreasing from 1/2 at z=0 to 0;
/// series evaluation below z = 0.5.
double rsb_bracket(double z);

/// First stationarity function in (q, z2); zero set carries the candidate
/// solutions together with f2.  Requires q in (0,1), z2 > -1, model != x^2.
double f1(const MixtureModel& model, double q, double z2);

/// Second stationarity function; for fixed q it has a unique positive zero.
/// Requires q in (0,1), z2 >= 0 (the z2->0 limit is supplied analytically).
double f2(const MixtureModel& model, double q, double z2);

struct Z2Critical {
  double small;  // local minimum of f1(q, .)
  double big;    // local maximum, also a zero of f1(q, .)
};
Z2Critical z2_critical_points(const MixtureModel& model, double q);

/// h1, h2: polynomial sign witnesses.  g1', psi1' and -fbar' share the sign
/// of h1 on (0,q); g2', psi2' and -fbar' share the sign of h2 on (q,1).
double h1(const MixtureModel& model, const TwoRsbCoordinates& c, double u);
double h2(const MixtureModel& model, const TwoRsbCoordinates& c, double u);

/// g1 (u in [0,q]) and g2 (u in [q,1]): nonpositivity of these is the
/// optimality condition in the transformed variables; both vanish at their
/// interval endpoints when (q, z2) solves f1 = f2 = 0.
double g1(const MixtureModel& model, const TwoRsbCoordinates& c, double u);
double g2(const MixtureModel& model, const TwoRsbCoordinates& c, double u);

/// psi1 (a in [0,q]) and psi2 (b in [q,1]): the coupled-measure derivative
/// boundary objects; strict interior negativity is the landscape hypothesis.
double psi1(const MixtureModel& model, const TwoRsbCoordinates& c, double a);
double psi2(const MixtureModel& model, const TwoRsbCoordinates& c, double b);

/// Sign of phi1 decides the monotonicity of the f2 zero curve:
/// dz2/dq < 0 iff phi1(q) < 0.
double phi1(const MixtureModel& model, double q);

/// Exact rational threshold lambda* for s+p models: dz2/dq < 0 is guaranteed
/// for lambda > lambda* (or lambda = 0).  Requires s >= 3, p >= s+2; throws
/// std::domain_error when the denominator is nonpositive (condition vacuous).
Rational lambda_threshold(int s, int p);

}  // namespace parisi
