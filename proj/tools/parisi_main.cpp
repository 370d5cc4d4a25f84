// Command-line front end: classify mixture models, solve and certify the
// RS / one-step / two-step ansaetze, compute ground-state energies through
// both functionals, and scan s+p families into CSV.
//
// Exit codes: 0 success, 1 usage/parse error, 2 resolution failure,
// 3 internal numeric domain error.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parisi/certifier.hpp"
#include "parisi/dual.hpp"
#include "parisi/io.hpp"
#include "parisi/solver.hpp"

namespace {

using parisi::io::Json;

std::string fmt(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

parisi::MixtureModel load_model(const std::string& spec, bool renormalize) {
  if (!spec.empty() && spec.front() == '{') {
    return parisi::io::model_from_json(Json::parse(spec), renormalize);
  }
  return parisi::MixtureModel::parse(spec, renormalize);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json solve_error_json(const parisi::SolveError& e) {
  Json rejected = Json::array();
  for (const auto& r : e.rejected) rejected.push_back(parisi::io::to_json(r));
  return Json{{"kind", to_string(e.kind)},
              {"message", e.what()},
              {"diagnostic_q", e.diagnostic_q},
              {"rejected", rejected}};
}

struct ScanArgs {
  int s = 0;
  int p = 0;
  std::string lambda_grid;
  bool parallel = false;
};

int run_scan(const ScanArgs& args, double grid_step, double residual_tol) {
  const auto first_colon = args.lambda_grid.find(':');
  const auto second_colon = args.lambda_grid.find(':', first_colon + 1);
  if (first_colon == std::string::npos || second_colon == std::string::npos) {
    throw std::invalid_argument("--lambda-grid expects a:b:h");
  }
  const auto a = parisi::Rational::parse(args.lambda_grid.substr(0, first_colon));
  const auto b = parisi::Rational::parse(
      args.lambda_grid.substr(first_colon + 1, second_colon - first_colon - 1));
  const auto h = parisi::Rational::parse(args.lambda_grid.substr(second_colon + 1));
  if (!(parisi::Rational(0, 1) < h)) throw std::invalid_argument("lambda step must be positive");

  std::vector<parisi::Rational> lambdas;
  for (parisi::Rational lam = a; lam <= b; lam = lam + h) lambdas.push_back(lam);
  if (lambdas.empty()) throw std::invalid_argument("empty lambda grid");

  std::string lambda_star;
  try {
    lambda_star = parisi::lambda_threshold(args.s, args.p).str();
  } catch (const std::domain_error&) {
    lambda_star = "inapplicable";
  }

  std::vector<std::string> rows(lambdas.size());
  parisi::grid::for_each_index(
      lambdas.size(),
      [&](std::size_t i) {
        const auto& lam = lambdas[i];
        std::string cls, ansatz = "Unresolved", q, z1, z2, delta, energy, status = "ok";
        std::string certified = "false";
        try {
          auto model = parisi::MixtureModel::sp(args.s, args.p, lam);
          cls = to_string(parisi::classify_g_constant(model).cls);
          auto outcome = parisi::resolve_ansatz(model, grid_step, parisi::grid::Exec::Serial);
          const auto& r = outcome.chosen;
          ansatz = to_string(r.ansatz);
          delta = fmt(r.delta);
          energy = fmt(r.energy);
          if (r.ansatz == parisi::Ansatz::OneRSB) z2 = fmt(r.z);
          if (r.ansatz == parisi::Ansatz::TwoRSB) {
            q = fmt(r.coords.q);
            z1 = fmt(r.coords.z1);
            z2 = fmt(r.coords.z2);
            // certificate on a small rectangle around the solution; padding
            // far above the solver bracket width, small against model scale
            parisi::Rectangle rect;
            rect.q_lo = std::max(1e-6, r.coords.q - 2e-4);
            rect.q_hi = std::min(1.0 - 1e-6, r.coords.q + 2e-4);
            rect.z2_lo = std::max(1e-9, r.coords.z2 * 0.998);
            rect.z2_hi = r.coords.z2 * 1.002;
            parisi::CertifyOptions opts;
            opts.grid_step = grid_step;
            opts.exec = parisi::grid::Exec::Serial;
            auto report = parisi::certify_rectangle(model, rect, opts);
            certified = report.verdict == parisi::Verdict::Certified2RSB ? "true" : "false";
          } else {
            certified = outcome.verification.pass ? "true" : "false";
          }
        } catch (const std::exception& e) {
          status = std::string("error: ") + e.what();
          for (auto& ch : status) {
            if (ch == ',' || ch == '\n') ch = ';';
          }
        }
        rows[i] = fmt(lam.value()) + "," + cls + "," + ansatz + "," + q + "," + z1 + "," + z2 +
                  "," + delta + "," + energy + "," + certified + "," + lambda_star + "," + status;
        rows[i] = std::to_string(args.s) + "," + std::to_string(args.p) + "," + rows[i];
      },
      args.parallel ? parisi::grid::Exec::Parallel : parisi::grid::Exec::Serial);

  std::cout << "s,p,lambda,class,ansatz,q,z1,z2,delta,energy,certified,lambda_star,status\n";
  for (const auto& row : rows) std::cout << row << "\n";
  (void)residual_tol;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-temperature Parisi measures for spherical mixed p-spin models"};
  app.require_subcommand(1);

  std::string model_spec;
  bool renormalize = false;
  double grid_step = 1e-4;
  double residual_tol = 1e-10;
  app.add_flag("--renormalize", renormalize, "rescale weights to sum to 1");
  app.add_option("--grid-step", grid_step, "grid step for optimality verification")
      ->default_val(1e-4);
  app.add_option("--tol-residual", residual_tol, "acceptance threshold for solver residuals")
      ->default_val(1e-10);

  // global tolerance flags may appear after the subcommand name
  app.fallthrough();

  auto* classify = app.add_subcommand("classify", "classify a model by the sign of G");
  classify->add_option("model", model_spec, "model spec, e.g. 5/7:3,2/7:16")->required();

  auto* solve = app.add_subcommand("solve", "solve for a candidate measure");
  solve->add_option("model", model_spec)->required();
  std::string ansatz = "auto";
  std::string qrange;
  solve->add_option("--ansatz", ansatz, "auto|rs|1rsb|2rsb")->default_val("auto");
  solve->add_option("--qrange", qrange, "q bracket a,b for the two-step solve");

  auto* certify = app.add_subcommand("certify", "certify a two-step rectangle");
  certify->add_option("model", model_spec)->required();
  std::string rect_text;
  certify->add_option("--rect", rect_text, "q_lo,q_hi,z2_lo,z2_hi")->required();

  auto* energy = app.add_subcommand("energy", "ground-state energy via both functionals");
  energy->add_option("model", model_spec)->required();

  auto* scan = app.add_subcommand(
      "scan",
      "scan an s+p family over lambda; CSV columns: s,p,lambda,class,ansatz,q,z1,z2,delta,"
      "energy,certified,lambda_star,status (one-step rows report z in the z2 column)");
  ScanArgs scan_args;
  scan->add_option("--s", scan_args.s, "smaller power, s >= 3")->required();
  scan->add_option("--p", scan_args.p, "larger power, p >= s+2")->required();
  scan->add_option("--lambda-grid", scan_args.lambda_grid, "a:b:h (rationals or decimals)")
      ->required();
  scan->add_flag("--parallel", scan_args.parallel, "compute rows in parallel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*classify) {
      const auto model = load_model(model_spec, renormalize);
      const auto g = parisi::classify_g_constant(model);
      emit(Json{{"schema", parisi::io::kSchema},
                {"command", "classify"},
                {"model", parisi::io::to_json(model)},
                {"G", g.g},
                {"class", to_string(g.cls)},
                {"convex", parisi::is_convex(model)},
                {"xi1_prime", model.d1(1.0)},
                {"xi1_doubleprime", model.d2(1.0)},
                {"solver_excluded", model.is_pure_square()}});
      return 0;
    }

    if (*solve) {
      const auto model = load_model(model_spec, renormalize);
      Json j{{"schema", parisi::io::kSchema}, {"command", "solve"},
             {"model", parisi::io::to_json(model)}};
      try {
        parisi::SolveResult result;
        std::vector<parisi::Rejection> rejected;
        parisi::CriterionReport verification;
        if (ansatz == "auto") {
          auto outcome = parisi::resolve_ansatz(model, grid_step);
          result = outcome.chosen;
          verification = outcome.verification;
          rejected = outcome.rejected;
        } else if (ansatz == "rs") {
          result = parisi::solve_rs(model);
          verification = parisi::chen_sen_verify(model, result.measure, grid_step);
        } else if (ansatz == "1rsb") {
          result = parisi::solve_1rsb(model);
          verification = parisi::chen_sen_verify(model, result.measure, grid_step);
        } else if (ansatz == "2rsb") {
          if (qrange.empty()) {
            result = parisi::solve_2rsb_scan(model, residual_tol);
          } else {
            const auto comma = qrange.find(',');
            if (comma == std::string::npos) {
              throw std::invalid_argument("--qrange expects a,b");
            }
            result = parisi::solve_2rsb(model, std::stod(qrange.substr(0, comma)),
                                        std::stod(qrange.substr(comma + 1)), residual_tol);
          }
          verification = parisi::chen_sen_verify(model, result.measure, grid_step);
        } else {
          throw std::invalid_argument("--ansatz must be auto, rs, 1rsb or 2rsb");
        }
        j["result"] = parisi::io::to_json(result);
        j["chen_sen"] = parisi::io::to_json(verification);
        j["verified"] = verification.pass;
        Json rej = Json::array();
        for (const auto& r : rejected) rej.push_back(parisi::io::to_json(r));
        j["rejected"] = rej;
        emit(j);
        return verification.pass ? 0 : 2;
      } catch (const parisi::SolveError& e) {
        j["error"] = solve_error_json(e);
        emit(j);
        return 2;
      }
    }

    if (*certify) {
      const auto model = load_model(model_spec, renormalize);
      parisi::Rectangle rect;
      if (std::sscanf(rect_text.c_str(), "%lf,%lf,%lf,%lf", &rect.q_lo, &rect.q_hi, &rect.z2_lo,
                      &rect.z2_hi) != 4) {
        throw std::invalid_argument("--rect expects q_lo,q_hi,z2_lo,z2_hi");
      }
      parisi::CertifyOptions opts;
      opts.grid_step = grid_step;
      auto report = parisi::certify_rectangle(model, rect, opts);
      Json j{{"schema", parisi::io::kSchema}, {"command", "certify"},
             {"model", parisi::io::to_json(model)}};
      j.update(parisi::io::to_json(report));
      emit(j);
      return report.verdict == parisi::Verdict::Certified2RSB ? 0 : 2;
    }

    if (*energy) {
      const auto model = load_model(model_spec, renormalize);
      Json j{{"schema", parisi::io::kSchema}, {"command", "energy"},
             {"model", parisi::io::to_json(model)}};
      try {
        auto outcome = parisi::resolve_ansatz(model, grid_step);
        const auto& nu = outcome.chosen.measure;
        const double q_value = outcome.chosen.energy;
        const double b = parisi::optimal_B(model, nu);
        const double p_value = parisi::parisi_dual(model, b, nu);
        j["ansatz"] = to_string(outcome.chosen.ansatz);
        j["Q"] = q_value;
        j["B_P"] = b;
        j["P"] = p_value;
        j["dual_gap"] = std::fabs(q_value - p_value);
        j["ground_state_energy"] = -q_value;
        emit(j);
        return 0;
      } catch (const parisi::SolveError& e) {
        j["error"] = solve_error_json(e);
        emit(j);
        return 2;
      }
    }

    if (*scan) {
      return run_scan(scan_args, grid_step, residual_tol);
    }
  } catch (const parisi::SolveError& e) {
    std::cerr << "resolution failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
