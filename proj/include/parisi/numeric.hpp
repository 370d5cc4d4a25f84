#pragma once

#include <cmath>
#include <stdexcept>

namespace parisi::num {

/// Guarded logarithm: a log argument that has collapsed to zero (or gone
/// negative) means the caller left the domain of one of the closed forms,
/// and a silent NaN would poison every bisection downstream.
inline double checked_log(double x) {
  if (!(x > 1e-300)) throw std::domain_error("log argument out of domain");
  return std::log(x);
}

/// x^p by binary exponentiation, p >= 0.  Deterministic across platforms,
/// unlike std::pow.
inline double ipow(double x, int p) {
  double r = 1.0;
  double b = x;
  for (int e = p; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

/// log(1+w)/w, continuous through w = 0.
inline double log1p_over(double w) {
  if (std::fabs(w) < 1e-4) {
    return 1.0 + w * (-0.5 + w * (1.0 / 3.0 - 0.25 * w));
  }
  return std::log1p(w) / w;
}

/// (log(1+s) - s/(1+s)) / s^2, continuous through s = 0 where it equals 1/2.
/// Series below 0.5 avoids the cancellation between the two log-scale terms.
inline double psi_ratio(double s) {
  if (s < 0.5) {
    double sum = 0.0;
    double sj = 1.0;  // s^(k-2)
    for (int k = 2; k < 400; ++k) {
      double t = sj * (double(k - 1) / double(k));
      sum += (k % 2 == 0) ? t : -t;
      sj *= s;
      if (std::fabs(t) < 1e-22) break;
    }
    return sum;
  }
  return (std::log1p(s) - s / (1.0 + s)) / (s * s);
}

struct RootResult {
  double x;
  double fx;
  double lo;
  double hi;
  int iterations;
};

/// Bracketed bisection.  Requires f(lo) and f(hi) finite with opposite sign;
/// runs to bracket exhaustion (relative width ~1e-15) so the residual is
/// limited only by the conditioning of f.  The final bracket is returned so
/// callers can re-solve from it.
template <class F>
RootResult bisect(F&& f, double lo, double hi, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, lo, hi, 0};
  if (fhi == 0.0) return {hi, 0.0, lo, hi, 0};
  if (!(std::isfinite(flo) && std::isfinite(fhi)) || (flo < 0) == (fhi < 0)) {
    throw std::domain_error("bisect: no sign change over bracket");
  }
  const bool lo_neg = flo < 0;
  double mid = lo, fmid = flo;
  int it = 0;
  for (; it < max_iter; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket exhausted in doubles
    fmid = f(mid);
    if (fmid == 0.0) return {mid, 0.0, lo, hi, it + 1};
    if ((fmid < 0) == lo_neg) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * (std::fabs(lo) + std::fabs(hi) + 1e-3)) break;
  }
  mid = 0.5 * (lo + hi);
  return {mid, f(mid), lo, hi, it};
}

}  // namespace parisi::num
