#include "parisi/dual.hpp"

#include <cmath>
#include <stdexcept>

#include "parisi/numeric.hpp"

namespace parisi {

double nu_hat(const MixtureModel& model, const DiscreteMeasure& nu, double s) {
  double t = nu.atom() * model.d2(1.0);
  for (std::size_t i = 0; i < nu.steps(); ++i) {
    const double lo = std::max(nu.breakpoints()[i], s);
    const double hi = nu.piece_end(i);
    if (lo < hi) t += nu.levels()[i] * (model.d1(hi) - model.d1(lo));
  }
  return t;
}

double optimal_B(const MixtureModel& model, const DiscreteMeasure& nu) {
  return nu_hat(model, nu, 0.0) + 1.0 / nu.total_mass();
}

double parisi_dual(const MixtureModel& model, double B, const DiscreteMeasure& nu) {
  if (!(B - nu_hat(model, nu, 0.0) > 1e-12)) {
    throw std::domain_error("inadmissible dual point: B must exceed nu_hat(0)");
  }
  // On each piece B - nu_hat(s) = K + level * (xi'(s) - xi'(a)) with
  // K = B - nu_hat(a), so substituting v = xi'(s) integrates both terms.
  double integral = 0.0;
  double moment = nu.atom() * model.d2(1.0);
  for (std::size_t i = 0; i < nu.steps(); ++i) {
    const double a = nu.breakpoints()[i];
    const double b = nu.piece_end(i);
    const double level = nu.levels()[i];
    const double va = model.d1(a);
    const double vb = model.d1(b);
    const double k = B - nu_hat(model, nu, a);
    integral += (vb - va) / k * num::log1p_over(level * (vb - va) / k);
    moment += level * ((b * vb - model.value(b)) - (a * va - model.value(a)));
  }
  return 0.5 * (integral + B - moment);
}

double dual_f(const MixtureModel& model, double B, const DiscreteMeasure& nu, double r) {
  double t = 0.0;
  for (std::size_t i = 0; i < nu.steps(); ++i) {
    const double a = nu.breakpoints()[i];
    const double y = std::min(nu.piece_end(i), r);
    if (a >= y) continue;
    const double va = model.d1(a);
    const double vy = model.d1(y);
    const double k = B - nu_hat(model, nu, a);
    t += (vy - va) / (k * (k + nu.levels()[i] * (vy - va)));
  }
  return t - r;
}

double dual_fbar(const MixtureModel& model, const TwoRsbCoordinates& c, double s) {
  const double q = c.q, z1 = c.z1, z2 = c.z2;
  const double big = 1.0 + z1 + z2;
  const double d1q = model.d1(q);
  const double d11 = model.d1(1.0);
  const double ds = model.d1(s);
  if (s <= q) {
    return s * ds + model.value(q) - model.value(s) - q * d1q
           + q * (d1q - ds) * big / z1
           - q * d1q * (1.0 + z2) * big / (z1 * z1) *
                 num::checked_log(big * d1q / ((1.0 + z2) * d1q + z1 * ds));
  }
  const double gap = d11 - d1q;
  return s * ds - ds + 1.0 - model.value(s) + (d11 - ds) * (1.0 - q) / z2
         - (1.0 - q) * (1.0 + z2) * gap / (z2 * z2) *
               num::checked_log((1.0 + z2) / (1.0 + z2 * (ds - d1q) / gap));
}

}  // namespace parisi
