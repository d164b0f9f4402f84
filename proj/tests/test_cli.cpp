#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sfr/io.hpp"

namespace {

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "schmidt-frontier-cli-tests";
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const std::filesystem::path& capture) {
  std::string cmd = std::string(SFR_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("theorem-table passes at the default tolerance for a two-qubit family") {
  auto out = scratch() / "table.txt";
  CHECK(run_cli("theorem-table --spectrum 0.8,0.2", out) == 0);
  std::string text = slurp(out);
  CHECK(text.find("max discrepancy") != std::string::npos);
  CHECK(text.find("beta_tilde_minus") != std::string::npos);
}

TEST_CASE("an unnormalized spectrum is a usage error with exit code 64") {
  auto out = scratch() / "bad_spectrum.txt";
  CHECK(run_cli("theorem-table --spectrum 0.5,0.4", out) == 64);
  CHECK(slurp(out).find("sums to") != std::string::npos);
}

TEST_CASE("usage problems exit with code 64 and help exits clean") {
  auto out = scratch() / "usage.txt";
  CHECK(run_cli("intervals --no-such-flag", out) == 64);
  CHECK(run_cli("intervals --spectrum 0.8,0.2 --k 5", out) == 64);
  CHECK(run_cli("intervals", out) == 64);  // no family source given
  CHECK(run_cli("--help", out) == 0);
}

TEST_CASE("interval CSV output for a projection family is byte-stable") {
  auto out = scratch() / "proj.csv";
  CHECK(run_cli("intervals --projection-d 1 --m 2 --n 2 --k 2 --format csv", out) == 0);
  CHECK(slurp(out) ==
        "family,m,n,k,beta_tilde_minus,beta_minus,sigma_minus,sigma_tilde_minus,"
        "sigma_plus,sigma_tilde_plus,beta_plus,beta_tilde_plus\n"
        "pure 2x2 family,2,2,2,-0.333333333333,-0.333333333333,-0.333333333333,"
        "-0.333333333333,1,1,1,1\n");
}

TEST_CASE("interval JSON output parses and contains all four cones") {
  auto out = scratch() / "iso.json";
  CHECK(run_cli("intervals --spectrum 0.25,0.25,0.25,0.25 --format json --gamma", out) == 0);
  sfr::ojson j = sfr::ojson::parse(slurp(out));
  CHECK(j["cones"].size() == 4);
  CHECK(j["gamma"]["isotropic"] == true);
  CHECK(j["gamma"]["note"].is_string());  // Werner-family itemization
}

TEST_CASE("emitted certificates round-trip through the JSON reader and re-verify") {
  auto out = scratch() / "cert.json";
  CHECK(run_cli("certify --spectrum 0.5,0.3,0.2 --target sigma-plus --format json", out) == 0);
  sfr::ojson j = sfr::ojson::parse(slurp(out));
  CHECK(j["verified"] == true);
  sfr::ProductDecomposition dec = sfr::decomposition_from_json(j);
  CHECK(sfr::verify_decomposition(dec).ok());

  CHECK(run_cli("certify --spectrum 0.5,0.3,0.2 --target beta-witness", out) == 0);
  CHECK(sfr::ojson::parse(slurp(out))["verified"] == true);
}

TEST_CASE("witness subcommand verifies the default pair") {
  auto out = scratch() / "witness.json";
  CHECK(run_cli("witness --spectrum 0.5,0.3,0.2 --format json", out) == 0);
  sfr::ojson j = sfr::ojson::parse(slurp(out));
  CHECK(j["verified"] == true);
  CHECK(j["min_rank2_expectation"].get<double>() < -1e-3);
  CHECK(std::abs(j["hyperplane_residual"].get<double>()) < 1e-9);
}

TEST_CASE("repeated runs are byte-for-byte identical") {
  auto a = scratch() / "run_a.json", b = scratch() / "run_b.json";
  std::string args = "intervals --spectrum 0.5,0.3,0.2 --format json --seed 3";
  CHECK(run_cli(args, a) == 0);
  CHECK(run_cli(args, b) == 0);
  std::string sa = slurp(a), sb = slurp(b);
  CHECK(sa == sb);
  CHECK(!sa.empty());
}

TEST_CASE("pairing reports the partner across the closed-form dual pair") {
  auto out = scratch() / "pairing.txt";
  CHECK(run_cli("pairing --spectrum 0.5,0.3,0.2 --nu -0.2857142857142857 --lambda 0.4375",
                out) == 0);
  std::string text = slurp(out);
  CHECK(text.find("orthogonal partner") != std::string::npos);
  CHECK(text.find("0.4375") != std::string::npos);
}
