// End-to-end tests for the command-line tool. CTest passes the binary path as
// the first argument; every invocation goes through the shell with output
// captured to a scratch directory.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

std::string g_cli;
fs::path g_dir;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path cap = g_dir / ("capture" + std::to_string(counter++) + ".txt");
  std::string cmd = "'" + g_cli + "' " + args + " > '" + cap.string() + "' 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  std::ifstream in(cap);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

Json run_json(const std::string& args) {
  RunResult r = run_cli(args + " --format structured");
  REQUIRE(r.exit_code == 0);
  return Json::parse(r.output);
}

std::string path_of(const char* name) { return (g_dir / name).string(); }

std::string shq(const std::string& p) { return "'" + p + "'"; }

// Emit a specification document and return its quoted path.
std::string gen_file(const std::string& gen_args, const char* name) {
  std::string p = path_of(name);
  RunResult r = run_cli("gen " + gen_args + " --out " + shq(p));
  REQUIRE(r.exit_code == 0);
  REQUIRE(fs::exists(p));
  return shq(p);
}

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json strip_elapsed(Json j) {
  j.erase("elapsed_ms");
  return j;
}

}  // namespace

TEST_CASE("help, missing arguments, and unreadable input exit with code 1 or 0") {
  RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("Subcommands") != std::string::npos);
  CHECK(help.output.find("pontryagin") != std::string::npos);

  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("decompose").exit_code == 1);

  RunResult missing = run_cli("decompose " + shq(path_of("missing.json")));
  CHECK(missing.exit_code == 1);
  CHECK(missing.output.find("cannot open") != std::string::npos);

  std::ofstream(path_of("broken.json")) << "not json";
  RunResult broken = run_cli("decompose " + shq(path_of("broken.json")));
  CHECK(broken.exit_code == 1);
  CHECK(broken.output.find("not valid JSON") != std::string::npos);

  CHECK(run_cli("gen --type nosuch").exit_code == 1);
  CHECK(run_cli("selfcheck --sizes bogus").exit_code == 1);
}

TEST_CASE("generator output is deterministic and decompose reports the known invariants") {
  std::string a = path_of("det_a.json"), b = path_of("det_b.json");
  REQUIRE(run_cli("gen --type random --dim 5 --seed 11 --out " + shq(a)).exit_code == 0);
  REQUIRE(run_cli("gen --type random --dim 5 --seed 11 --out " + shq(b)).exit_code == 0);
  CHECK(slurp(a) == slurp(b));

  std::string cp2 = gen_file("--type cp2", "cp2.json");
  RunResult text = run_cli("decompose " + cp2);
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("scalar_curvature: 24") != std::string::npos);
  CHECK(text.output.find("weyl_norm: 96") != std::string::npos);
  CHECK(text.output.find("weyl_zero: false") != std::string::npos);

  Json d = run_json("decompose " + cp2);
  CHECK(d["command"] == "decompose");
  CHECK(d["mode"] == "rational");
  CHECK(d["decomposition"]["scalar_curvature"] == "24");
  CHECK(d["decomposition"]["ricci"][0] == Json::array({"6", "0", "0", "0"}));
  CHECK(d["decomposition"]["traceless_ricci"][2] == Json::array({"0", "0", "0", "0"}));
  CHECK(d["decomposition"]["schouten"][1] == Json::array({"0", "1", "0", "0"}));
}

TEST_CASE("pontryagin agrees across routes, vanishes on the zero tensor, and is stable across reruns") {
  std::string cp2 = gen_file("--type cp2", "p_cp2.json");
  Json p = run_json("pontryagin " + cp2);
  REQUIRE(p["forms"].size() == 1);
  const Json& f = p["forms"][0];
  CHECK(f["k"] == 1);
  CHECK(f["routes_agree"] == true);
  CHECK(f["two_pi_exponent"] == 2);
  CHECK(f["zero"] == false);
  CHECK(f["degree_exceeds_dim"] == false);
  REQUIRE(f["form"]["coefficients"].size() == 1);
  CHECK(f["form"]["coefficients"][0]["subset"] == Json::array({1, 2, 3, 4}));
  CHECK(f["form"]["coefficients"][0]["value"] == "24");

  std::string zero = path_of("zero.json");
  std::ofstream(zero) << R"({"dimension":4,"signs":[-1,1,1,1],"mode":"rational","components":[]})";
  Json z = run_json("pontryagin " + shq(zero));
  CHECK(z["forms"][0]["zero"] == true);
  CHECK(z["forms"][0]["form"]["coefficients"][0]["value"] == "0");

  // Reports are identical across runs except for the timing field.
  std::string r5 = gen_file("--type random --dim 5 --seed 11", "p_r5.json");
  CHECK(strip_elapsed(run_json("pontryagin " + r5)) == strip_elapsed(run_json("pontryagin " + r5)));

  std::string out = path_of("p_out.json");
  REQUIRE(run_cli("pontryagin " + cp2 + " --format structured --out " + shq(out)).exit_code == 0);
  CHECK(Json::parse(slurp(out))["command"] == "pontryagin");
}

TEST_CASE("float64 routes agree at the default tolerance and a zero tolerance flags the rounding gap") {
  std::string r5 = gen_file("--type random --dim 5 --seed 9", "f_r5.json");
  Json ok = run_json("pontryagin " + r5 + " --mode float64");
  CHECK(ok["mode"] == "float64");
  CHECK(ok["forms"][0]["routes_agree"] == true);

  RunResult strict = run_cli("pontryagin " + r5 + " --mode float64 --tolerance 0");
  CHECK(strict.exit_code == 3);
  CHECK(strict.output.find("routes disagree") != std::string::npos);
}

TEST_CASE("petrov reports type, spectrum, Jordan blocks, and the spectral vanishing check") {
  std::string pd = gen_file("--type petrov --petrov-type D --eigen 2", "petrov_d.json");
  Json p = run_json("petrov " + pd);
  CHECK(p["petrov"]["type"] == "D");
  CHECK(p["petrov"]["spectrum"] == "allReal");
  CHECK(p["petrov"]["used_float_fallback"] == false);
  REQUIRE(p["petrov"]["jordan_blocks"].size() == 3);
  for (const Json& b : p["petrov"]["jordan_blocks"]) CHECK(b["size"] == 1);
  CHECK(p["spectrum_vanishing"]["applicable"] == true);
  CHECK(p["spectrum_vanishing"]["p1_zero"] == true);
  CHECK(p["spectrum_vanishing"]["consistent"] == true);

  // Classification acts on the Weyl part: constant curvature is type O.
  std::string cc = gen_file("--type constant --kappa 1", "petrov_cc.json");
  CHECK(run_json("petrov " + cc)["petrov"]["type"] == "O");

  // Wrong signature or dimension is a precondition failure.
  std::string eu = gen_file("--type constant --kappa 1 --signature euclidean", "petrov_eu.json");
  CHECK(run_cli("petrov " + eu).exit_code == 2);
  std::string r5 = gen_file("--type random --dim 5 --seed 1", "petrov_r5.json");
  CHECK(run_cli("petrov " + r5).exit_code == 2);
}

TEST_CASE("em splits by parity and rejects malformed axes") {
  std::string even = gen_file("--type random-even --seed 7", "em_even.json");
  Json e = run_json("em " + even + " --axis 1,0,0,0");
  CHECK(e["parity"] == "even");
  CHECK(e["even_part"]["zero"] == false);
  CHECK(e["even_part"]["commutation_sign"] == 1);
  CHECK(e["odd_part"]["zero"] == true);
  CHECK(e["evidence"]["component_route"] == true);
  CHECK(e["evidence"]["pullback_route"] == true);

  std::string odd = gen_file("--type random-odd --seed 7", "em_odd.json");
  Json o = run_json("em " + odd + " --axis 1,0,0,0");
  CHECK(o["parity"] == "odd");
  CHECK(o["even_part"]["zero"] == true);
  CHECK(o["odd_part"]["commutation_sign"] == -1);

  CHECK(run_cli("em " + even).exit_code == 1);                   // axis is required
  CHECK(run_cli("em " + even + " --axis 1,0,0").exit_code == 1); // wrong length
}

TEST_CASE("certify produces exact-zero certificates and enforces the dimension precondition") {
  std::string even = gen_file("--type random-even --seed 7", "cert_even.json");
  Json c = run_json("certify " + even);
  CHECK(c["parity"] == "even");
  CHECK(c["all_zero"] == true);
  REQUIRE(c["certificates"].size() == 1);
  const Json& cert = c["certificates"][0];
  CHECK(cert["alpha"] == Json::array({1}));
  CHECK(cert["witness"] == "0");
  CHECK(cert["two_pi_exponent"] == 2);
  CHECK(cert["preconditions"]["theta_determinant"] == -1);
  CHECK(cert["preconditions"]["theta_is_involution"] == true);
  CHECK(cert["preconditions"]["parity_definite"] == true);

  // Dimension 8 certifies every partition of 2.
  std::string e8 = gen_file("--type random-even --dim 8 --seed 2", "cert_e8.json");
  Json c8 = run_json("certify " + e8);
  REQUIRE(c8["certificates"].size() == 2);
  CHECK(c8["certificates"][0]["alpha"] == Json::array({2}));
  CHECK(c8["certificates"][1]["alpha"] == Json::array({1, 1}));
  CHECK(c8["certificates"][0]["two_pi_exponent"] == 4);
  CHECK(c8["all_zero"] == true);

  // Dimension 6 admits no partition with 4 |alpha| = n.
  std::string r6 = gen_file("--type random --dim 6 --seed 3", "cert_r6.json");
  CHECK(run_cli("certify " + r6).exit_code == 2);
}

TEST_CASE("certify --gen batches instances deterministically") {
  Json batch = run_json("certify --gen random-even --count 3 --seed 5");
  CHECK(batch["generator"] == "random-even");
  CHECK(batch["all_zero"] == true);
  REQUIRE(batch["instances"].size() == 3);
  for (const Json& inst : batch["instances"]) {
    CHECK(inst["certificates"][0]["all_zero"] == true);
    CHECK(inst["certificates"][0]["witness"] == "0");
  }
  CHECK(strip_elapsed(run_json("certify --gen random-odd --count 2 --seed 8")) ==
        strip_elapsed(run_json("certify --gen random-odd --count 2 --seed 8")));
}

TEST_CASE("topology evaluates connected-sum invariants and verdicts") {
  Json t = run_json("topology 'T4 # T4 # CP2 # CP2'");
  CHECK(t["chi"] == 0);
  CHECK(t["sigma"] == 2);
  CHECK(t["p1_integral"] == 6);
  CHECK(t["lorentz_metric_exists"] == true);
  CHECK(t["parity_obstructed"] == true);
  CHECK(t["verdict"] == "Lorentzian yes; globally PE/PM no");
  CHECK(t["summands"] == Json::array({"T4", "T4", "CP2", "CP2"}));

  CHECK(run_json("topology CP2")["verdict"] == "Lorentzian no");
  CHECK(run_json("topology T4")["verdict"] == "no obstruction");

  RunResult text = run_cli("topology 'S4 # CP2'");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("verdict:") != std::string::npos);

  CHECK(run_cli("topology K5").exit_code == 1);
}

TEST_CASE("selfcheck runs the acceptance battery") {
  RunResult r = run_cli("selfcheck --sizes quick");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("selfcheck: 8/8 criteria passed") != std::string::npos);
  for (int i = 1; i <= 8; ++i) {
    std::string needle = "criterion " + std::to_string(i) + " (";
    CHECK(r.output.find(needle) != std::string::npos);
  }
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <curvcert-binary> [doctest options]\n", argv[0]);
    return 2;
  }
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() / ("curvcert-cli-" + std::to_string(::getpid()));
  fs::create_directories(g_dir);
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  int rc = ctx.run();
  std::error_code ec;
  fs::remove_all(g_dir, ec);
  return rc;
}
