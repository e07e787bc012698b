#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "rotorpair/dataset.hpp"

using rotorpair::Dataset;
using rotorpair::read_csv;
using rotorpair::read_json;

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(ROTORPAIR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.output.append(buf.data(), n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

Dataset parse_csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

}  // namespace

TEST_CASE("cli: single-shot spectrum prints a csv table") {
  const RunResult r = run_cli("spectrum --omega 2 --theta-t 0");
  REQUIRE(r.code == 0);
  const Dataset ds = parse_csv(r.output);
  REQUIRE(ds.find_meta("rotorpair_version") != nullptr);
  const int gap = ds.column_index("gap01_over_B");
  REQUIRE(gap >= 0);
  CHECK(ds.rows.size() == 1);
  CHECK(ds.rows[0][gap] == doctest::Approx(1.75).epsilon(0.006));
}

TEST_CASE("cli: repeated runs are byte-identical") {
  const std::string cmd =
      "pair --sweep coupling_over_B:0:3:40 --omega 2 --theta-t 90";
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  REQUIRE(a.code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("generated_at") == std::string::npos);

  const RunResult fig_a = run_cli("figure 3 --points 11 --output cli_tmp_detA");
  const RunResult fig_b = run_cli("figure 3 --points 11 --output cli_tmp_detB");
  REQUIRE(fig_a.code == 0);
  REQUIRE(fig_b.code == 0);
  for (const char* panel : {"fig3a.csv", "fig3b.csv", "fig3c.csv", "fig3d.csv"}) {
    std::ifstream fa(std::filesystem::path("cli_tmp_detA") / panel);
    std::ifstream fb(std::filesystem::path("cli_tmp_detB") / panel);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    REQUIRE(sa.str().size() > 0);
    CHECK(sa.str() == sb.str());
  }
  std::filesystem::remove_all("cli_tmp_detA");
  std::filesystem::remove_all("cli_tmp_detB");
}

TEST_CASE("cli: timestamp flag adds the comment line") {
  const RunResult r = run_cli("spectrum --omega 2 --timestamp");
  REQUIRE(r.code == 0);
  CHECK(r.output.find("# generated_at = ") != std::string::npos);
}

TEST_CASE("cli: guard rejection exits 3") {
  const RunResult r = run_cli("factors --omega 0");
  CHECK(r.code == 3);
}

TEST_CASE("cli: invalid arguments exit 2") {
  CHECK(run_cli("spectrum --no-such-flag").code == 2);
  CHECK(run_cli("spectrum --m-max 0").code == 2);
  CHECK(run_cli("nonsense").code == 2);
  CHECK(run_cli("pair --sweep omega_over_B:0:4:10 --omega 2").code == 2);
  CHECK(run_cli("pair --sweep bogus_axis:0:4:10").code == 2);
  CHECK(run_cli("figure 9").code == 2);
  CHECK(run_cli("locate crossing").code == 2);
}

TEST_CASE("cli: missing feature exits 4") {
  const RunResult r = run_cli(
      "locate crossing --levels 1,4 --sweep coupling_over_B:0:5 "
      "--omega 2 --theta-t 0");
  CHECK(r.code == 4);
}

TEST_CASE("cli: locate reproduces the coupling-crossing anchor") {
  const RunResult r = run_cli(
      "locate crossing --levels 1,2 --sweep coupling_over_B:0:5 "
      "--omega 2 --theta-t 90");
  REQUIRE(r.code == 0);
  const Dataset ds = parse_csv(r.output);
  CHECK(ds.rows[0][0] == doctest::Approx(2.9).epsilon(0.018));
}

TEST_CASE("cli: json output mirrors the csv dataset") {
  const RunResult csv = run_cli("concurrence --omega 2 --coupling 0.8");
  const RunResult json =
      run_cli("concurrence --omega 2 --coupling 0.8 --format json");
  REQUIRE(csv.code == 0);
  REQUIRE(json.code == 0);
  const Dataset a = parse_csv(csv.output);
  std::istringstream jin(json.output);
  const Dataset b = read_json(jin);
  REQUIRE(a.columns == b.columns);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t c = 0; c < a.columns.size(); ++c)
    CHECK(a.rows[0][c] == doctest::Approx(b.rows[0][c]).epsilon(1e-15));
}

TEST_CASE("cli: figure writes one parseable file per panel") {
  const RunResult r = run_cli("figure 2 --points 11 --output cli_tmp_fig");
  REQUIRE(r.code == 0);
  for (const char* name : {"fig2a.csv", "fig2b.csv", "fig2c.csv"}) {
    const std::filesystem::path path = std::filesystem::path("cli_tmp_fig") / name;
    REQUIRE(std::filesystem::exists(path));
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    const Dataset ds = parse_csv(text.str());
    CHECK(ds.rows.size() > 0);
    CHECK(ds.find_meta("figure") != nullptr);
  }
  std::filesystem::remove_all("cli_tmp_fig");
}

TEST_CASE("cli: convert reports the reduced couplings") {
  const RunResult r = run_cli(
      "convert --dipole-moment 1 --field 1 --separation 10 "
      "--rotational-constant 1");
  REQUIRE(r.code == 0);
  const Dataset ds = parse_csv(r.output);
  CHECK(ds.rows[0][0] == doctest::Approx(0.0168).epsilon(2e-3));
  CHECK(ds.rows[0][1] == doctest::Approx(0.00503).epsilon(2e-3));
}

TEST_CASE("cli: thermal honors the temperature list") {
  const RunResult r = run_cli(
      "thermal --omega 2 --coupling 0.8 --temperature 0 --temperature 0.5");
  REQUIRE(r.code == 0);
  const Dataset ds = parse_csv(r.output);
  REQUIRE(ds.columns.size() == 2);
  CHECK(ds.columns[0] == "C_thermal_kT_0");
  CHECK(ds.columns[1] == "C_thermal_kT_0.5");
  CHECK(ds.rows[0][0] >= ds.rows[0][1] - 1e-12);
}

TEST_CASE("cli: output file and directory override") {
  std::filesystem::remove_all("cli_tmp_out");
  const RunResult direct =
      run_cli("spectrum --omega 2 --output cli_tmp_out/direct.csv");
  REQUIRE(direct.code == 0);
  CHECK(std::filesystem::exists("cli_tmp_out/direct.csv"));

  const std::string cmd = std::string("ROTORPAIR_OUTPUT_DIR=cli_tmp_out ") +
                          ROTORPAIR_CLI_PATH +
                          " spectrum --omega 2 --output via_env.csv 2>/dev/null";
  const int code = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(code) == 0);
  CHECK(std::filesystem::exists("cli_tmp_out/via_env.csv"));
  std::filesystem::remove_all("cli_tmp_out");
}
