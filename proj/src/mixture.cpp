#include "parisi/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parisi/numeric.hpp"

namespace parisi {

MixtureModel::MixtureModel(std::vector<MixtureTerm> terms, bool renormalize)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("mixture needs at least one term");
  std::sort(terms_.begin(), terms_.end(),
            [](const MixtureTerm& a, const MixtureTerm& b) { return a.power < b.power; });
  Rational sum(0, 1);
  bool any_positive = false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.power < 2) throw std::invalid_argument("mixture powers must be >= 2");
    if (i > 0 && terms_[i - 1].power == t.power) {
      throw std::invalid_argument("duplicate power in mixture");
    }
    if (t.weight < Rational(0, 1)) throw std::invalid_argument("negative mixture weight");
    if (Rational(0, 1) < t.weight) any_positive = true;
    sum = sum + t.weight;
  }
  if (!any_positive) throw std::invalid_argument("mixture needs a positive weight");
  if (renormalize) {
    for (auto& t : terms_) t.weight = t.weight / sum;
  } else if (std::fabs(sum.value() - 1.0) > 1e-12) {
    throw std::invalid_argument("mixture weights must sum to 1 (pass renormalize to rescale)");
  }
  weights_.reserve(terms_.size());
  for (const auto& t : terms_) weights_.push_back(t.weight.value());
}

MixtureModel MixtureModel::parse(std::string_view spec, bool renormalize) {
  std::vector<MixtureTerm> terms;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what, std::size_t at) {
    throw std::invalid_argument("model spec error at position " + std::to_string(at) + ": " + what);
  };
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string_view item = spec.substr(pos, comma == std::string_view::npos ? spec.size() - pos
                                                                             : comma - pos);
    // trim spaces
    std::size_t off = pos;
    while (!item.empty() && item.front() == ' ') { item.remove_prefix(1); ++off; }
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) fail("empty term", off);
    std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) fail("missing ':' separator", off);
    MixtureTerm term;
    try {
      term.weight = Rational::parse(item.substr(0, colon));
    } catch (const std::exception& e) {
      fail(e.what(), off);
    }
    std::string_view ptext = item.substr(colon + 1);
    try {
      Rational p = Rational::parse(ptext);
      if (p.den() != 1) fail("power must be an integer", off + colon + 1);
      if (p.num() < 2 || p.num() > 1000000) fail("power out of range", off + colon + 1);
      term.power = static_cast<int>(p.num());
    } catch (const std::invalid_argument&) {
      fail("invalid power", off + colon + 1);
    }
    terms.push_back(term);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return MixtureModel(std::move(terms), renormalize);
}

MixtureModel MixtureModel::sp(int s, int p, const Rational& lambda) {
  return MixtureModel({{Rational(1, 1) - lambda, s}, {lambda, p}});
}

double MixtureModel::eval(double x, int order) const {
  double r = 0.0;
  switch (order) {
    case 0:
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        r += weights_[i] * num::ipow(x, terms_[i].power);
      }
      return r;
    case 1:
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        const int p = terms_[i].power;
        r += weights_[i] * p * num::ipow(x, p - 1);
      }
      return r;
    case 2:
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        const int p = terms_[i].power;
        r += weights_[i] * p * (p - 1) * num::ipow(x, p - 2);
      }
      return r;
    default:
      throw std::invalid_argument("eval order must be 0, 1 or 2");
  }
}

bool MixtureModel::is_pure_square() const {
  return terms_.size() == 1 && terms_[0].power == 2;
}

std::optional<MixtureModel::SpForm> MixtureModel::sp_form() const {
  if (terms_.size() != 2) return std::nullopt;
  return SpForm{terms_[0].power, terms_[1].power, terms_[1].weight};
}

std::string MixtureModel::spec_string() const {
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += ',';
    out += terms_[i].weight.str();
    out += ':';
    out += std::to_string(terms_[i].power);
  }
  return out;
}

const char* to_string(MixtureClass c) {
  switch (c) {
    case MixtureClass::PureLike: return "pure-like";
    case MixtureClass::FullMixture: return "full-mixture";
    case MixtureClass::Critical: return "critical";
  }
  return "?";
}

GClassification classify_g_constant(const MixtureModel& model) {
  const double a = model.d1(1.0);
  const double b = model.d2(1.0);
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("degenerate model: xi'(1), xi''(1) must be positive");
  const double g = std::log(b / a) - (b - a) * (b - a + a * a) / (b * a * a);
  MixtureClass cls = MixtureClass::Critical;
  if (g > 1e-12) cls = MixtureClass::PureLike;
  if (g < -1e-12) cls = MixtureClass::FullMixture;
  return {g, cls};
}

namespace {

// golden-section refinement of a local minimum of fn inside [a, b]
template <class F>
double refine_min(F&& fn, double a, double b) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = fn(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = fn(d);
    }
  }
  return std::min(fn(0.5 * (a + b)), std::min(fc, fd));
}

}  // namespace

bool is_convex(const MixtureModel& model) {
  // xi''(x) has nonnegative coefficients, so only [-1,0] can dip below zero.
  auto m = [&](double y) { return model.d2(-y); };  // y in [0,1]
  const int n = 4000;
  std::vector<double> v(n + 1);
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    v[i] = m(double(i) / n);
    worst = std::min(worst, v[i]);
  }
  if (worst < -1e-12) return false;
  // grid is nonnegative: refine every interior dip before accepting
  for (int i = 1; i < n; ++i) {
    if (v[i] <= v[i - 1] && v[i] <= v[i + 1]) {
      worst = std::min(worst, refine_min(m, double(i - 1) / n, double(i + 1) / n));
      if (worst < -1e-12) return false;
    }
  }
  return worst >= -1e-12;
}

}  // namespace parisi
