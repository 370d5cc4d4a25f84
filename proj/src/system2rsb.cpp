#include "parisi/system2rsb.hpp"

#include <cmath>
#include <stdexcept>

#include "parisi/numeric.hpp"

namespace parisi {

namespace {

void require_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("q must lie in (0,1)");
}

void require_solvable(const MixtureModel& model) {
  if (model.is_pure_square()) throw std::domain_error("model x^2 is excluded from the two-step system");
}

}  // namespace

TwoRsbCoordinates coords_from_qz2(const MixtureModel& model, double q, double z2) {
  require_solvable(model);
  require_q(q);
  if (!(z2 > 0.0)) throw std::domain_error("z2 must be positive");
  const double d1q = model.d1(q);
  const double gap = model.d1(1.0) - d1q;
  TwoRsbCoordinates c;
  c.q = q;
  c.z2 = z2;
  c.z1 = q * gap / (d1q * (1.0 - q)) - 1.0 - z2;
  c.delta = std::sqrt((1.0 - q) / ((1.0 + z2) * gap));
  c.a1 = c.z1 * c.delta / q;
  c.a2 = c.z2 * c.delta / (1.0 - q);
  return c;
}

double delta_sq_residual(const MixtureModel& model, const TwoRsbCoordinates& c) {
  const double d1q = model.d1(c.q);
  const double gap = model.d1(1.0) - d1q;
  const double lhs = (1.0 - c.q) / ((1.0 + c.z2) * gap);
  const double rhs = c.q / (d1q * (1.0 + c.z2) * (1.0 + c.z1 + c.z2));
  return std::fabs(lhs - rhs) / std::fabs(lhs);
}

double consistency_residual(const MixtureModel& model, const TwoRsbCoordinates& c) {
  const double d1q = model.d1(c.q);
  return std::fabs(1.0 + c.z1 + c.z2 - c.q * (model.d1(1.0) - d1q) / (d1q * (1.0 - c.q)));
}

double rsb_bracket(double z) {
  if (!(z >= 0.0)) throw std::domain_error("rsb_bracket requires z >= 0");
  if (z < 0.5) {
    // sum_{j>=0} (-1)^j z^j / ((j+1)(j+2))
    double sum = 0.0;
    double zj = 1.0;
    for (int j = 0; j < 400; ++j) {
      const double t = zj / (double(j + 1) * double(j + 2));
      sum += (j % 2 == 0) ? t : -t;
      zj *= z;
      if (t < 1e-22) break;
    }
    return sum;
  }
  return (1.0 + z) / (z * z) * std::log1p(z) - 1.0 / z;
}

double f1(const MixtureModel& model, double q, double z2) {
  require_solvable(model);
  require_q(q);
  if (!(z2 > -1.0)) throw std::domain_error("f1 requires z2 > -1");
  const double xq = model.value(q);
  const double d1q = model.d1(q);
  const double gap = model.d1(1.0) - d1q;
  const double w = 1.0 + z2;
  return -(q * d1q - xq) * (1.0 - q) * w / gap
         - q * q * num::checked_log(q * gap / (w * d1q * (1.0 - q)))
         + q * q - 2.0 * xq * q / d1q
         + xq * q * q * gap / (w * d1q * d1q * (1.0 - q));
}

double f2(const MixtureModel& model, double q, double z2) {
  require_solvable(model);
  require_q(q);
  if (!(z2 >= 0.0)) throw std::domain_error("f2 requires z2 >= 0");
  const double d1q = model.d1(q);
  return (1.0 - q) * (model.d1(1.0) - d1q) * rsb_bracket(z2) + d1q * (1.0 - q) - 1.0 +
         model.value(q);
}

Z2Critical z2_critical_points(const MixtureModel& model, double q) {
  require_solvable(model);
  require_q(q);
  const double xq = model.value(q);
  const double d1q = model.d1(q);
  const double gap = model.d1(1.0) - d1q;
  Z2Critical c;
  c.small = q * xq * gap / (d1q * (q * d1q - xq) * (1.0 - q)) - 1.0;
  c.big = q * gap / ((1.0 - q) * d1q) - 1.0;
  return c;
}

double h1(const MixtureModel& model, const TwoRsbCoordinates& c, double u) {
  return model.d1(u) * (c.q * (1.0 + c.z1 + c.z2) - u * c.z1) -
         (1.0 + c.z2) * model.d1(c.q) * u;
}

double h2(const MixtureModel& model, const TwoRsbCoordinates& c, double u) {
  const double d1q = model.d1(c.q);
  return (model.d1(u) - d1q) * (1.0 + c.z2 - c.q - u * c.z2) -
         (u - c.q) * (model.d1(1.0) - d1q);
}

double g1(const MixtureModel& model, const TwoRsbCoordinates& c, double u) {
  const double q = c.q, z1 = c.z1, z2 = c.z2;
  const double big = 1.0 + z1 + z2;
  const double d1q = model.d1(q);
  return q * q / (z1 * z1) * num::checked_log(1.0 + z1 * (q - u) / (q * (1.0 + z2)))
         - q * (q - u) / (z1 * big)
         + (1.0 - q) * q / ((1.0 + z2) * big)
         + (1.0 - q) * (1.0 - q) / (z2 * z2) * std::log1p(z2)
         - (1.0 - q) * (1.0 - q) / (z2 * (1.0 + z2))
         - (1.0 - model.value(u)) * q / (d1q * (1.0 + z2) * big);
}

double g2(const MixtureModel& model, const TwoRsbCoordinates& c, double u) {
  const double q = c.q, z2 = c.z2;
  const double d1q = model.d1(q);
  const double gap = model.d1(1.0) - d1q;
  return (1.0 - u) * d1q / ((1.0 + z2) * gap)
         - (1.0 - u) / (z2 * (1.0 + z2))
         + (1.0 - q) / (z2 * z2) * num::checked_log(1.0 + z2 * (1.0 - u) / (1.0 - q))
         - (1.0 - model.value(u)) / ((1.0 + z2) * gap);
}

double psi1(const MixtureModel& model, const TwoRsbCoordinates& c, double a) {
  const double q = c.q, z1 = c.z1, z2 = c.z2;
  const double big = 1.0 + z1 + z2;
  const double d1q = model.d1(q);
  const double d1a = model.d1(a);
  return big * q * d1a / z1 - a * d1a + model.value(a)
         - q * d1q * (1.0 + z2) * big / (z1 * z1) *
               num::checked_log(1.0 + z1 * d1a / ((1.0 + z2) * d1q));
}

double psi2(const MixtureModel& model, const TwoRsbCoordinates& c, double b) {
  const double q = c.q, z2 = c.z2;
  const double d1q = model.d1(q);
  const double gap = model.d1(1.0) - d1q;
  const double d1b = model.d1(b);
  return d1b * (q - b) + model.value(b) - model.value(q)
         + (d1b - d1q) * (1.0 - q) / z2
         + (d1b - d1q) * (1.0 - q)
         - (1.0 - q) * (1.0 + z2) * gap / (z2 * z2) *
               num::checked_log(1.0 + (d1b - d1q) * z2 / gap);
}

double phi1(const MixtureModel& model, double q) {
  require_q(q);
  const double xq = model.value(q);
  const double d1q = model.d1(q);
  const double d11 = model.d1(1.0);
  return model.d2(q) * ((1.0 - q) * d11 - 1.0 + xq) -
         (d11 - d1q) / (1.0 - q) * (1.0 - xq - d1q * (1.0 - q));
}

Rational lambda_threshold(int s, int p) {
  if (s < 3 || p < s + 2) throw std::invalid_argument("threshold needs s >= 3 and p >= s+2");
  const std::int64_t S = s, P = p;
  // six times numerator and denominator keeps everything integral
  const std::int64_t num6 = 6 * P * S + 6 - S * S * S - P * S * S - 5 * S - 5 * P;
  const std::int64_t den6 = 6 * P * S + 6 - S * S * S - 6 * P - 5 * S;
  if (den6 <= 0) throw std::domain_error("monotonicity condition vacuous/inapplicable for this (s,p)");
  return Rational(num6, den6);
}

}  // namespace parisi
