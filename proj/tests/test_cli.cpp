#include <doctest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef PARISI_CLI_PATH
#define PARISI_CLI_PATH "./parisi"
#endif

namespace {

struct RunResult {
  std::string out;
  int code = -1;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(PARISI_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("classify") {
  const auto r = run("classify 5/7:3,2/7:16");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema") == "parisi-zero/1");
  CHECK(j.at("class") == "pure-like");
  CHECK(j.at("convex") == false);
  CHECK(j.at("G").get<double>() > 0.0);
  CHECK(j.at("xi1_prime").get<double>() == doctest::Approx(47.0 / 7.0));
  CHECK(j.at("solver_excluded") == false);

  const auto full = run("classify 5/6:4,1/6:40");
  CHECK(nlohmann::json::parse(full.out).at("class") == "full-mixture");
  CHECK(nlohmann::json::parse(full.out).at("convex") == true);

  const auto sq = run("classify 1:2");
  CHECK(sq.code == 0);
  const auto jsq = nlohmann::json::parse(sq.out);
  CHECK(jsq.at("class") == "critical");
  CHECK(jsq.at("solver_excluded") == true);
}

TEST_CASE("classify usage errors") {
  CHECK(run("classify").code == 1);
  CHECK(run("classify 5/7:1").code == 1);
  CHECK(run("classify not-a-model").code == 1);
}

TEST_CASE("solve two-step inside the reference rectangle") {
  const auto r = run("solve 5/7:3,2/7:16 --ansatz 2rsb --qrange 0.743,0.747");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("verified") == true);
  const auto& c = j.at("result").at("coords");
  CHECK(c.at("q").get<double>() > 0.743);
  CHECK(c.at("q").get<double>() < 0.747);
  CHECK(c.at("z2").get<double>() > 3.17);
  CHECK(c.at("z2").get<double>() < 3.25);

  const auto r4 = run("solve 5/8:4,3/8:40 --ansatz 2rsb --qrange 0.83,0.833");
  CHECK(r4.code == 0);
  const auto c4 = nlohmann::json::parse(r4.out).at("result").at("coords");
  CHECK(c4.at("z2").get<double>() > 9.3);
  CHECK(c4.at("z2").get<double>() < 9.8);
}

TEST_CASE("solve auto on a pure model") {
  const auto r = run("solve 1:3 --grid-step 0.001");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("result").at("ansatz") == "1rsb");
  CHECK(j.at("verified") == true);
  CHECK(j.at("rejected").size() == 1);
}

TEST_CASE("pure 3-spin has no certified two-step intersection") {
  const auto r = run("solve 1:3 --ansatz 2rsb");
  CHECK(r.code == 2);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("error").at("kind") == "NoSignChange");
  CHECK(j.at("error").at("rejected").size() >= 1);
}

TEST_CASE("certify") {
  const auto r = run("certify 5/6:3,1/6:16 --rect 0.824,0.828,1.54,1.64 --grid-step 0.001");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("verdict") == "Certified2RSB");
  CHECK(j.at("numerical_certificate") == true);

  CHECK(run("certify 5/7:3,2/7:16 --rect 0.743,0.743,3.17,3.25").code == 1);
}

TEST_CASE("energy emits a tight duality gap") {
  const auto r = run("energy 5/7:3,2/7:16 --grid-step 0.001");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("dual_gap").get<double>() <= 1e-9);
  CHECK(j.at("Q").get<double>() == doctest::Approx(1.99983092).epsilon(1e-6));
  CHECK(j.at("ground_state_energy").get<double>() < 0.0);
}

TEST_CASE("scan produces ordered CSV with the threshold column") {
  const auto r = run("scan --s 3 --p 16 --lambda-grid 0.15:0.35:0.1 --grid-step 0.001");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "s,p,lambda,class,ansatz,q,z1,z2,delta,energy,certified,lambda_star,status");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    CHECK(line.find("7/39") != std::string::npos);
    CHECK(line.rfind("3,16,", 0) == 0);
  }
  CHECK(rows == 3);
}

TEST_CASE("identical inputs give byte-identical output") {
  const std::string cmd = "energy 5/6:3,1/6:16 --grid-step 0.001";
  const auto a = run(cmd);
  const auto b = run(cmd);
  CHECK(a.out == b.out);
  const std::string scan_cmd = "scan --s 3 --p 16 --lambda-grid 0.2:0.3:0.05 --grid-step 0.001";
  const auto sa = run(scan_cmd);
  const auto sb = run(scan_cmd + " --parallel");
  CHECK(sa.out == sb.out);
}
