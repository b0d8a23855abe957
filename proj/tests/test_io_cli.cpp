#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sphcond/io.hpp"
#include "sphcond/sampling.hpp"

using namespace sphcond;

#ifndef SPHCOND_CLI_PATH
#define SPHCOND_CLI_PATH "sphcond"
#endif

namespace {

std::string tmp_path(const std::string& name) { return std::string("/tmp/sphcond_test_") + name; }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SPHCOND_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string run_cli_capture(const std::string& args) {
  const std::string out = tmp_path("stdout.txt");
  const std::string cmd = std::string(SPHCOND_CLI_PATH) + " " + args + " >" + out + " 2>/dev/null";
  (void)std::system(cmd.c_str());
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_timestamps(std::string text) {
  // drop the generated_at line; everything else must be bit-identical
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("generated_at") == std::string::npos) out << line << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("pointset csv round trip with sidecar") {
  const PointSet mcc = gen_mcc();
  const std::string path = tmp_path("mcc.csv");
  save_pointset(mcc, path);
  const PointSet back = load_pointset(path);
  REQUIRE(back.size() == mcc.size());
  CHECK(back.convention == mcc.convention);
  CHECK(back.labels == mcc.labels);
  for (std::size_t i = 0; i < mcc.size(); ++i) {
    CHECK(back.directions[i].theta ==
          doctest::Approx(mcc.directions[i].theta).epsilon(1e-11));
    CHECK(back.directions[i].phi == doctest::Approx(mcc.directions[i].phi).epsilon(1e-11));
  }
}

TEST_CASE("csv without sidecar defaults to from_z") {
  const std::string path = tmp_path("bare.csv");
  {
    std::ofstream out(path);
    out << "theta,phi\n0.5,1.0\n1.5,2.0\n";
  }
  std::remove((tmp_path("bare") + ".json").c_str());
  const PointSet ps = load_pointset(path);
  CHECK(ps.convention == Convention::FromZAxis);
  CHECK(ps.size() == 2);
  CHECK(!ps.has_labels());
}

TEST_CASE("sha256 known vector") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("cli: gen writes files and reports counts") {
  const std::string csv = tmp_path("gen_fib.csv");
  REQUIRE(run_cli("gen fibonacci --q 25 -o " + csv) == 0);
  const PointSet ps = load_pointset(csv);
  CHECK(ps.size() == 25);

  REQUIRE(run_cli("gen tdesign --name T5Q12 -o " + tmp_path("gen_t.csv")) == 0);
  CHECK(load_pointset(tmp_path("gen_t.csv")).size() == 12);

  REQUIRE(run_cli("gen mcc -o " + tmp_path("gen_mcc.csv")) == 0);
  CHECK(load_pointset(tmp_path("gen_mcc.csv")).size() == 625);
}

TEST_CASE("cli: bad input exits 3") {
  CHECK(run_cli("gen tdesign --name NOPE -o " + tmp_path("x.csv")) == 3);
  CHECK(run_cli("analyze --points /nonexistent.csv --order 2") == 4);
}

TEST_CASE("cli: infeasible optimization exits 2") {
  const std::string csv = tmp_path("few.csv");
  REQUIRE(run_cli("gen fibonacci --q 10 -o " + csv) == 0);
  // Q' = 2 < P = 4 can never reach full rank
  CHECK(run_cli("optimize --points " + csv + " --order 1 --q-prime 2 --solver exact -o " +
                tmp_path("tr.json")) == 2);
}

TEST_CASE("cli: determinism of seeded runs (timestamps excluded)") {
  const std::string csv = tmp_path("det.csv");
  REQUIRE(run_cli("gen fibonacci --q 40 --folded -o " + csv) == 0);
  const std::string args = "--seed 7 optimize --points " + csv +
                           " --order 1 --q-prime 12 --solver local --restarts 2 --max-iters 2000 -o " +
                           tmp_path("det_trace.json");
  const std::string a = run_cli_capture(args);
  const std::string b = run_cli_capture(args);
  REQUIRE(!a.empty());
  CHECK(strip_timestamps(a) == strip_timestamps(b));
}

TEST_CASE("cli: dmeasure emits the documented keys") {
  const std::string csv = tmp_path("dm.csv");
  REQUIRE(run_cli("gen tdesign --name T2Q4 -o " + csv) == 0);
  const std::string out = run_cli_capture("dmeasure --points " + csv);
  CHECK(out.find("\"d\"") != std::string::npos);
  CHECK(out.find("\"nu\"") != std::string::npos);
  CHECK(out.find("\"q\"") != std::string::npos);
}

TEST_CASE("cli: seed env var overrides the flag") {
  const std::string csv = tmp_path("envseed.csv");
  REQUIRE(run_cli("gen fibonacci --q 30 --folded -o " + csv) == 0);
  const std::string base = "optimize --points " + csv +
                           " --order 1 --q-prime 10 --solver local --restarts 1 --max-iters 500 -o " +
                           tmp_path("envseed.json");
  const std::string with_env =
      "SPHCOND_SEED=99 " + std::string(SPHCOND_CLI_PATH) + " --seed 1 " + base + " 2>/dev/null";
  const std::string out_file = tmp_path("env_out.txt");
  (void)std::system((with_env + " >" + out_file).c_str());
  std::ifstream in(out_file);
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("\"seed\": 99") != std::string::npos);
}
