#pragma once

#include "parisi/measure.hpp"
#include "parisi/system2rsb.hpp"

namespace parisi {

/// nu_hat(s) = int_s^1 xi''(r) nu(dr).  The atom at 1 contributes
/// atom * xi''(1) for every s in [0,1] (closed-interval convention, which is
/// what keeps B - nu_hat(s) continuous at s = 1).
double nu_hat(const MixtureModel& model, const DiscreteMeasure& nu, double s);

/// Stationary choice of the scalar parameter: B = nu_hat(0) + 1/nu([0,1]).
double optimal_B(const MixtureModel& model, const DiscreteMeasure& nu);

/// The alternative ground-state functional
///   P(B, nu) = 1/2 ( int_0^1 xi''(s) ds / (B - nu_hat(s)) + B
///               - int_0^1 s xi''(s) nu(ds) ),
/// closed form per piece.  Requires admissibility B > nu_hat(0) with margin
/// above 1e-12; throws std::domain_error otherwise.  At the optimal pair the
/// value coincides with the Crisanti-Sommers functional.
double parisi_dual(const MixtureModel& model, double B, const DiscreteMeasure& nu);

/// Stationarity defect f(r) = int_0^r xi''(t) dt / (B - nu_hat(t))^2 - r;
/// at the minimizer f(1) = 0 (and f(q) = 0 for the two-step ansatz).
double dual_f(const MixtureModel& model, double B, const DiscreteMeasure& nu, double r);

/// fbar(s) = int_s^1 f(r) xi''(r) dr in the transformed two-step variables;
/// the minimizer condition is fbar >= 0 with fbar(0) = fbar(q) = fbar(1) = 0.
double dual_fbar(const MixtureModel& model, const TwoRsbCoordinates& c, double s);

}  // namespace parisi
