#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parisi/rational.hpp"

namespace parisi {

struct MixtureTerm {
  Rational weight;  // c_p^2, >= 0
  int power;        // p >= 2
};

/// A mixed p-spin covariance function xi(x) = sum_p c_p^2 x^p with finitely
/// many terms, normalized so that xi(1) = 1.  Weights are kept as exact
/// rationals (evaluated in double precision) so that threshold comparisons
/// like lambda > 7/39 do not drift.
///
/// Immutable after construction; safe to share across threads.
class MixtureModel {
 public:
  /// Validates: powers >= 2, strictly increasing after sorting, weights >= 0
  /// with at least one positive, and |sum - 1| <= 1e-12 unless `renormalize`
  /// is set, in which case weights are divided by their exact sum.
  explicit MixtureModel(std::vector<MixtureTerm> terms, bool renormalize = false);

  /// Parses the spec grammar: comma-separated `weight:power` terms, weight a
  /// decimal or `a/b` rational, e.g. "5/7:3,2/7:16".  Errors carry the
  /// character position.
  static MixtureModel parse(std::string_view spec, bool renormalize = false);

  /// (1-lambda) x^s + lambda x^p.
  static MixtureModel sp(int s, int p, const Rational& lambda);

  const std::vector<MixtureTerm>& terms() const { return terms_; }

  /// xi(x), xi'(x) or xi''(x) by direct polynomial evaluation.
  double eval(double x, int order) const;
  double value(double x) const { return eval(x, 0); }
  double d1(double x) const { return eval(x, 1); }
  double d2(double x) const { return eval(x, 2); }

  /// True exactly for xi(x) = x^2, which the nonlinear system excludes.
  bool is_pure_square() const;

  struct SpForm {
    int s;
    int p;
    Rational lambda;  // weight of the larger power
  };
  /// Present when the model has exactly two terms (an s+p model).
  std::optional<SpForm> sp_form() const;

  /// Canonical spec string, lowest-terms weights.
  std::string spec_string() const;

 private:
  std::vector<MixtureTerm> terms_;
  std::vector<double> weights_;  // cached doubles, same order as terms_
};

enum class MixtureClass { PureLike, FullMixture, Critical };

const char* to_string(MixtureClass c);

struct GClassification {
  double g;
  MixtureClass cls;
};

/// The complexity constant G built from xi'(1) and xi''(1); sign > 0 is
/// pure-like, < 0 full mixture, |G| <= 1e-12 critical.
GClassification classify_g_constant(const MixtureModel& model);

/// xi'' >= 0 on [-1,1].  Automatic on [0,1]; on [-1,0] decided by a sign
/// grid refined with local minimization around every candidate dip.
bool is_convex(const MixtureModel& model);

}  // namespace parisi
