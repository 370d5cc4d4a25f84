#include "parisi/solver.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "parisi/numeric.hpp"

namespace parisi {

const char* to_string(Ansatz a) {
  switch (a) {
    case Ansatz::RS: return "rs";
    case Ansatz::OneRSB: return "1rsb";
    case Ansatz::TwoRSB: return "2rsb";
  }
  return "?";
}

const char* to_string(SolveErrorKind k) {
  switch (k) {
    case SolveErrorKind::ExcludedModel: return "ExcludedModel";
    case SolveErrorKind::NoRoot: return "NoRoot";
    case SolveErrorKind::NoSignChange: return "NoSignChange";
    case SolveErrorKind::NegativeZ1: return "NegativeZ1";
    case SolveErrorKind::OrderingViolation: return "OrderingViolation";
    case SolveErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case SolveErrorKind::BracketingFailure: return "BracketingFailure";
    case SolveErrorKind::AllAnsaetzeFail: return "AllAnsaetzeFail";
  }
  return "?";
}

SolveResult solve_rs(const MixtureModel& model) {
  const double d11 = model.d1(1.0);
  SolveResult r;
  r.ansatz = Ansatz::RS;
  r.delta = 1.0 / std::sqrt(d11);
  r.measure = DiscreteMeasure::constant_density(0.0, r.delta);
  r.residuals["functional"] = std::fabs(d11 - tail_inverse_square_integral(r.measure, 1.0));
  r.energy = crisanti_sommers(model, r.measure);
  return r;
}

SolveResult solve_1rsb(const MixtureModel& model) {
  const double d11 = model.d1(1.0);
  if (!(d11 > 2.0)) {
    throw SolveError(SolveErrorKind::NoRoot,
                     "one-step equation has no positive root: xi'(1) <= 2");
  }
  // rsb_bracket decreases from 1/2 to 0, so bracket the root geometrically.
  auto fn = [&](double z) { return rsb_bracket(z) - 1.0 / d11; };
  double hi = 1.0;
  while (fn(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw SolveError(SolveErrorKind::BracketingFailure, "one-step bracket overflow");
  }
  const auto root = num::bisect(fn, 1e-8, hi);
  SolveResult r;
  r.ansatz = Ansatz::OneRSB;
  r.z = root.x;
  r.delta = 1.0 / std::sqrt(d11 * (1.0 + root.x));
  r.bracket = {0.0, 0.0, root.lo, root.hi};
  r.measure = DiscreteMeasure::constant_density(root.x * r.delta, r.delta);
  r.residuals["stationarity"] = std::fabs(root.fx);
  r.residuals["functional"] = std::fabs(d11 - tail_inverse_square_integral(r.measure, 1.0));
  r.energy = crisanti_sommers(model, r.measure);
  if (r.residuals["stationarity"] > 1e-12) {
    throw SolveError(SolveErrorKind::BracketingFailure, "one-step residual target missed");
  }
  return r;
}

double f2_positive_root(const MixtureModel& model, double q) {
  auto fn = [&](double z) { return f2(model, q, z); };
  double lo = 1e-8;
  if (fn(lo) <= 0.0) {
    // root squeezed below the default bracket; f2(q, 0) > 0 analytically
    if (!(fn(0.0) > 0.0)) {
      throw SolveError(SolveErrorKind::BracketingFailure, "f2 not positive at z2 = 0", q);
    }
    return num::bisect(fn, 0.0, lo).x;
  }
  double hi = 1.0;
  while (fn(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) {
      throw SolveError(SolveErrorKind::BracketingFailure, "f2 bracket overflow", q);
    }
  }
  return num::bisect(fn, lo, hi).x;
}

double f1_small_branch_root(const MixtureModel& model, double q) {
  const double zs = z2_critical_points(model, q).small;
  auto fn = [&](double z) { return f1(model, q, z); };
  if (!(fn(zs) < 0.0)) {
    throw SolveError(SolveErrorKind::BranchAmbiguity,
                     "smaller branch not isolated: f1 >= 0 at its local minimum", q);
  }
  // f1 -> +inf toward z2 = -1, and is strictly decreasing up to zs
  double onepz = 0.5 * (1.0 + zs);
  while (fn(onepz - 1.0) <= 0.0) {
    onepz *= 0.25;
    if (onepz < 1e-13) {
      throw SolveError(SolveErrorKind::BranchAmbiguity, "no positive f1 value left of the branch", q);
    }
  }
  return num::bisect(fn, onepz - 1.0, zs).x;
}

namespace {

void require_range(double q_lo, double q_hi) {
  if (!(q_lo > 0.0 && q_hi < 1.0 && q_lo < q_hi)) {
    throw std::invalid_argument("q range must satisfy 0 < q_lo < q_hi < 1");
  }
}

}  // namespace

std::vector<CurvePoint> trace_f2_curve(const MixtureModel& model, double q_lo, double q_hi,
                                       double step, grid::Exec exec) {
  require_range(q_lo, q_hi);
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const auto n = static_cast<std::size_t>(std::ceil((q_hi - q_lo) / step));
  std::vector<CurvePoint> out(n + 1);
  std::atomic<std::size_t> first_bad{n + 1};
  grid::for_each_index(
      n + 1,
      [&](std::size_t i) {
        const double q = q_lo + (q_hi - q_lo) * double(i) / double(n);
        try {
          out[i] = {q, f2_positive_root(model, q)};
        } catch (...) {
          std::size_t cur = first_bad.load();
          while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
          }
        }
      },
      exec);
  if (first_bad.load() <= n) {
    const double q = q_lo + (q_hi - q_lo) * double(first_bad.load()) / double(n);
    f2_positive_root(model, q);  // deterministic: rethrows the original error
    throw SolveError(SolveErrorKind::BracketingFailure, "trace failed", q);
  }
  return out;
}

std::vector<CurvePoint> trace_f1_small_branch(const MixtureModel& model, double q_lo,
                                              double q_hi, double step) {
  require_range(q_lo, q_hi);
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  // branch check at both endpoints first
  double prev = f1_small_branch_root(model, q_lo);
  f1_small_branch_root(model, q_hi);

  const auto n = static_cast<std::size_t>(std::ceil((q_hi - q_lo) / step));
  std::vector<CurvePoint> out;
  out.reserve(n + 1);
  out.push_back({q_lo, prev});
  for (std::size_t i = 1; i <= n; ++i) {
    const double q = q_lo + (q_hi - q_lo) * double(i) / double(n);
    const double zs = z2_critical_points(model, q).small;
    auto fn = [&](double z) { return f1(model, q, z); };
    double root = 0.0;
    // warm bracket around the previous point, widened geometrically
    double d = std::max(1e-3, 8.0 * step);
    bool solved = false;
    for (int attempt = 0; attempt < 10 && !solved; ++attempt, d *= 2.0) {
      const double lo = prev - d;
      const double hi = std::min(prev + d, zs);
      if (!(lo > -1.0 && lo < hi)) break;
      const double flo = fn(lo);
      const double fhi = fn(hi);
      if ((flo < 0) != (fhi < 0)) {
        root = num::bisect(fn, lo, hi).x;
        solved = true;
      }
    }
    if (!solved) root = f1_small_branch_root(model, q);
    out.push_back({q, root});
    prev = root;
  }
  return out;
}

SolveResult solve_2rsb(const MixtureModel& model, double q_lo, double q_hi,
                       double residual_tol) {
  require_range(q_lo, q_hi);
  if (model.is_pure_square()) {
    throw SolveError(SolveErrorKind::ExcludedModel, "model x^2 is excluded");
  }
  auto D = [&](double q) { return f1_small_branch_root(model, q) - f2_positive_root(model, q); };
  num::RootResult root;
  try {
    root = num::bisect(D, q_lo, q_hi);
  } catch (const std::domain_error&) {
    throw SolveError(SolveErrorKind::NoSignChange,
                     "zero curves do not cross inside the given q range");
  }
  const double q = root.x;
  const double z2 = f2_positive_root(model, q);
  TwoRsbCoordinates c = coords_from_qz2(model, q, z2);
  if (!(c.z1 > 0.0)) {
    throw SolveError(SolveErrorKind::NegativeZ1, "z1 <= 0 at the curve intersection", q);
  }
  if (!(q * c.z2 > (1.0 - q) * c.z1)) {
    throw SolveError(SolveErrorKind::OrderingViolation,
                     "intersection violates the level ordering a1 < a2", q);
  }
  SolveResult r;
  r.ansatz = Ansatz::TwoRSB;
  r.coords = c;
  r.delta = c.delta;
  r.residuals["f1"] = std::fabs(f1(model, q, z2));
  r.residuals["f2"] = std::fabs(f2(model, q, z2));
  r.residuals["delta_sq"] = delta_sq_residual(model, c);
  r.residuals["consistency"] = consistency_residual(model, c);
  for (const auto& [name, v] : r.residuals) {
    if (!(v <= residual_tol)) {
      throw SolveError(SolveErrorKind::BracketingFailure,
                       std::string("residual target missed: ") + name, q);
    }
  }
  const double zl = f2_positive_root(model, root.lo);
  const double zh = f2_positive_root(model, root.hi);
  r.bracket.q_lo = root.lo;
  r.bracket.q_hi = root.hi;
  r.bracket.z2_lo = std::min(z2, std::min(zl, zh));
  r.bracket.z2_hi = std::max(z2, std::max(zl, zh));
  r.measure = DiscreteMeasure::two_step(q, c.a1, c.a2, c.delta);
  r.energy = crisanti_sommers(model, r.measure);
  return r;
}

SolveResult solve_2rsb_scan(const MixtureModel& model, double residual_tol) {
  if (model.is_pure_square()) {
    throw SolveError(SolveErrorKind::ExcludedModel, "model x^2 is excluded");
  }
  // heuristic default grid; every sign change of D is tried in order
  constexpr double kLo = 0.01, kStep = 0.005;
  constexpr int kCount = 197;  // 0.01 .. 0.99
  double prev_d = std::numeric_limits<double>::quiet_NaN();
  double prev_q = 0.0;
  std::vector<Rejection> candidates;
  for (int i = 0; i < kCount; ++i) {
    const double q = kLo + kStep * i;
    double d;
    try {
      d = f1_small_branch_root(model, q) - f2_positive_root(model, q);
    } catch (...) {
      d = std::numeric_limits<double>::quiet_NaN();  // out-of-domain: no bracket here
    }
    if (std::isfinite(d) && std::isfinite(prev_d) && (d < 0) != (prev_d < 0)) {
      try {
        return solve_2rsb(model, prev_q, q, residual_tol);
      } catch (const SolveError& e) {
        Rejection rej;
        rej.ansatz = Ansatz::TwoRSB;
        rej.reason = std::string(to_string(e.kind)) + ": " + e.what();
        rej.diagnostics["q"] = e.diagnostic_q;
        candidates.push_back(rej);
      }
    }
    prev_d = d;
    prev_q = q;
  }
  std::ostringstream msg;
  if (candidates.empty()) {
    msg << "no sign change of the curve gap on the default scan grid";
  } else {
    msg << "no certified intersection: " << candidates.size()
        << " crossing(s) found and rejected (";
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (i) msg << "; ";
      msg << candidates[i].reason;
    }
    msg << ")";
  }
  SolveError err(SolveErrorKind::NoSignChange, msg.str());
  err.rejected = std::move(candidates);
  throw err;
}

ResolveOutcome resolve_ansatz(const MixtureModel& model, double grid_step, grid::Exec exec) {
  if (model.is_pure_square()) {
    throw SolveError(SolveErrorKind::ExcludedModel,
                     "model x^2 is excluded from ansatz resolution");
  }
  std::vector<Rejection> rejected;
  auto try_candidate = [&](SolveResult r) -> std::optional<ResolveOutcome> {
    CriterionReport rep = chen_sen_verify(model, r.measure, grid_step, exec);
    if (rep.pass) return ResolveOutcome{std::move(r), std::move(rep), rejected};
    Rejection rej;
    rej.ansatz = r.ansatz;
    rej.reason = "optimality criterion failed";
    rej.diagnostics["min_g"] = rep.min_g;
    rej.diagnostics["min_g_at"] = rep.min_g_at;
    rej.diagnostics["functional_residual"] = rep.functional_residual;
    rej.diagnostics["max_charged_anchor"] = rep.max_charged_anchor;
    rejected.push_back(std::move(rej));
    return std::nullopt;
  };

  if (auto out = try_candidate(solve_rs(model))) return *out;
  try {
    if (auto out = try_candidate(solve_1rsb(model))) return *out;
  } catch (const SolveError& e) {
    rejected.push_back({Ansatz::OneRSB, std::string(to_string(e.kind)) + ": " + e.what(), {}});
  }
  try {
    if (auto out = try_candidate(solve_2rsb_scan(model))) return *out;
  } catch (const SolveError& e) {
    Rejection rej{Ansatz::TwoRSB, std::string(to_string(e.kind)) + ": " + e.what(), {}};
    rejected.push_back(rej);
    for (const auto& r : e.rejected) rejected.push_back(r);
  }
  SolveError err(SolveErrorKind::AllAnsaetzeFail,
                 "no ansatz verified; the model is likely beyond two steps of symmetry breaking");
  err.rejected = std::move(rejected);
  throw err;
}

}  // namespace parisi
