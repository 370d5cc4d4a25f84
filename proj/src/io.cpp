#include "parisi/io.hpp"

#include <cmath>

namespace parisi::io {

Json to_json(const DiscreteMeasure& nu) {
  return Json{{"breakpoints", nu.breakpoints()}, {"levels", nu.levels()}, {"atom", nu.atom()}};
}

DiscreteMeasure measure_from_json(const Json& j) {
  return DiscreteMeasure(j.at("breakpoints").get<std::vector<double>>(),
                         j.at("levels").get<std::vector<double>>(), j.at("atom").get<double>());
}

MixtureModel model_from_json(const Json& j, bool renormalize) {
  std::vector<MixtureTerm> terms;
  for (const auto& t : j.at("terms")) {
    MixtureTerm term;
    const auto& w = t.at("weight");
    if (w.is_string()) {
      term.weight = Rational::parse(w.get<std::string>());
    } else {
      term.weight = Rational(std::llround(w.get<double>() * 1e9), 1000000000LL);
    }
    term.power = t.at("power").get<int>();
    terms.push_back(term);
  }
  return MixtureModel(std::move(terms), renormalize);
}

Json to_json(const MixtureModel& model) {
  Json terms = Json::array();
  for (const auto& t : model.terms()) {
    terms.push_back(Json{{"weight", t.weight.str()}, {"power", t.power}});
  }
  return Json{{"terms", terms}, {"spec", model.spec_string()}};
}

Json to_json(const CriterionReport& r) {
  Json anchors = Json::array();
  for (const auto& a : r.anchors) {
    anchors.push_back(Json{{"u", a.u}, {"g", a.g}, {"charged", a.charged}});
  }
  return Json{{"grid_step", r.grid_step},
              {"functional_residual", r.functional_residual},
              {"min_g", r.min_g},
              {"min_g_at", r.min_g_at},
              {"g_at_1", r.g_at_1},
              {"anchors", anchors},
              {"max_charged_anchor", r.max_charged_anchor},
              {"pass", r.pass}};
}

Json to_json(const SolveResult& r) {
  Json j;
  j["ansatz"] = to_string(r.ansatz);
  if (r.ansatz == Ansatz::TwoRSB) {
    j["coords"] = Json{{"q", r.coords.q},         {"z1", r.coords.z1}, {"z2", r.coords.z2},
                       {"delta", r.coords.delta}, {"a1", r.coords.a1}, {"a2", r.coords.a2}};
  }
  if (r.ansatz == Ansatz::OneRSB) j["z"] = r.z;
  j["delta"] = r.delta;
  j["residuals"] = r.residuals;
  j["bracket"] = Json{{"q_lo", r.bracket.q_lo},
                      {"q_hi", r.bracket.q_hi},
                      {"z2_lo", r.bracket.z2_lo},
                      {"z2_hi", r.bracket.z2_hi}};
  j["measure"] = to_json(r.measure);
  j["energy"] = r.energy;
  return j;
}

Json to_json(const Rejection& r) {
  return Json{{"ansatz", to_string(r.ansatz)}, {"reason", r.reason},
              {"diagnostics", r.diagnostics}};
}

Json to_json(const CertificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{
        {"name", c.name}, {"margin", c.margin}, {"pass", c.pass}, {"mandatory", c.mandatory}});
  }
  Json j{{"rectangle", Json{{"q_lo", r.rect.q_lo},
                            {"q_hi", r.rect.q_hi},
                            {"z2_lo", r.rect.z2_lo},
                            {"z2_hi", r.rect.z2_hi}}},
         {"checks", checks},
         {"verdict", r.verdict == Verdict::Certified2RSB ? "Certified2RSB" : "NotCertified"},
         {"reasons", r.reasons},
         {"numerical_certificate", r.numerical_certificate}};
  if (r.solution) j["solution"] = to_json(*r.solution);
  if (r.chen_sen) j["chen_sen"] = to_json(*r.chen_sen);
  return j;
}

}  // namespace parisi::io
