#include "parisi/measure.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "parisi/numeric.hpp"

namespace parisi {

DiscreteMeasure::DiscreteMeasure(std::vector<double> breakpoints, std::vector<double> levels,
                                 double atom)
    : breakpoints_(std::move(breakpoints)), levels_(std::move(levels)), atom_(atom) {
  if (breakpoints_.empty() || breakpoints_.size() != levels_.size()) {
    throw std::invalid_argument("measure needs matching breakpoints and levels, at least one each");
  }
  if (breakpoints_[0] != 0.0) throw std::invalid_argument("first breakpoint must be 0");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < 1.0)) throw std::invalid_argument("breakpoints must lie in [0,1)");
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
      throw std::invalid_argument("breakpoints must be strictly increasing");
    }
    if (!(levels_[i] >= 0.0)) throw std::invalid_argument("density levels must be >= 0");
    if (i > 0 && levels_[i] < levels_[i - 1]) {
      throw std::invalid_argument("density levels must be nondecreasing");
    }
  }
  if (!(atom_ > 0.0)) throw std::invalid_argument("atom at 1 must be positive");
}

double DiscreteMeasure::tail_mass(double r) const {
  double t = atom_;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const double lo = std::max(breakpoints_[i], r);
    const double hi = piece_end(i);
    if (lo < hi) t += levels_[i] * (hi - lo);
  }
  return t;
}

std::vector<double> DiscreteMeasure::charged_points() const {
  std::vector<double> out;
  if (levels_[0] > 0.0) out.push_back(breakpoints_[0]);
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (levels_[i] > levels_[i - 1]) out.push_back(breakpoints_[i]);
  }
  return out;
}

double tail_inverse_square_integral(const DiscreteMeasure& nu, double s) {
  double total = 0.0;
  for (std::size_t i = 0; i < nu.steps(); ++i) {
    const double x = nu.breakpoints()[i];
    const double y = std::min(nu.piece_end(i), s);
    if (x < y) total += (y - x) / (nu.tail_mass(x) * nu.tail_mass(y));
  }
  return total;
}

double crisanti_sommers(const MixtureModel& model, const DiscreteMeasure& nu) {
  double drift = nu.atom() * model.d1(1.0);
  double entropy = 0.0;
  for (std::size_t i = 0; i < nu.steps(); ++i) {
    const double a = nu.breakpoints()[i];
    const double b = nu.piece_end(i);
    const double level = nu.levels()[i];
    drift += level * (model.value(b) - model.value(a));
    const double tb = nu.tail_mass(b);
    if (!(tb > 0.0)) throw std::domain_error("nonpositive tail mass");
    const double len = b - a;
    entropy += len / tb * num::log1p_over(level * len / tb);
  }
  return 0.5 * (drift + entropy);
}

double chen_sen_g(const MixtureModel& model, const DiscreteMeasure& nu, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("g(u) needs u in [0,1]");
  double res = model.value(1.0) - model.value(u) - (1.0 - u) * tail_inverse_square_integral(nu, u);
  for (std::size_t i = 0; i < nu.steps(); ++i) {
    const double x = std::max(nu.breakpoints()[i], u);
    const double y = nu.piece_end(i);
    if (x >= y) continue;
    const double tx = nu.tail_mass(x);
    const double ty = nu.tail_mass(y);
    const double len = y - x;
    res -= (1.0 - y) * len / (tx * ty);
    res -= (len * len) / (ty * ty) * num::psi_ratio(nu.levels()[i] * len / ty);
  }
  return res;
}

CriterionReport chen_sen_verify(const MixtureModel& model, const DiscreteMeasure& nu,
                                double grid_step, grid::Exec exec) {
  if (!(grid_step > 0.0 && grid_step <= 1e-2)) {
    throw std::invalid_argument("grid_step must lie in (0, 1e-2]");
  }
  CriterionReport report;
  report.grid_step = grid_step;
  report.functional_residual = std::fabs(model.d1(1.0) - tail_inverse_square_integral(nu, 1.0));

  const auto n = static_cast<std::size_t>(std::ceil(1.0 / grid_step));
  std::atomic<bool> failed{false};
  auto g_at = [&](std::size_t i) {
    // a guarded-log failure inside a parallel region must not escape
    try {
      return chen_sen_g(model, nu, double(i) / double(n));
    } catch (const std::exception&) {
      failed.store(true);
      return std::numeric_limits<double>::infinity();
    }
  };
  const auto mn = grid::min_reduce(n + 1, g_at, exec);
  if (failed.load()) throw std::domain_error("optimality function left its domain on the grid");
  report.min_g = mn.value;
  report.min_g_at = double(mn.index) / double(n);
  report.g_at_1 = chen_sen_g(model, nu, 1.0);

  const auto charged = nu.charged_points();
  report.max_charged_anchor = 0.0;
  for (double t : nu.breakpoints()) {
    CriterionAnchor a;
    a.u = t;
    a.g = chen_sen_g(model, nu, t);
    a.charged = false;
    for (double c : charged) {
      if (c == t) a.charged = true;
    }
    if (a.charged) report.max_charged_anchor = std::max(report.max_charged_anchor, std::fabs(a.g));
    report.anchors.push_back(a);
  }

  report.pass = report.functional_residual <= 1e-9 && report.min_g >= -1e-9 &&
                report.max_charged_anchor <= 1e-8;
  return report;
}

}  // namespace parisi
