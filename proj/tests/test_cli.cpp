#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = fs::temp_directory_path() / "sslab_cli_tests";

int run(const std::string& args) {
  const std::string cmd = std::string(SSLAB_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name) : path(kScratch / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
};

}  // namespace

TEST_CASE("decay rerun is byte identical and starts at survival 1") {
  ScratchDir a("decay_a"), b("decay_b");
  const std::string args = "decay --tmax 50 --nt 101 --seed 9";
  REQUIRE(run(args + " --out " + a.path.string()) == 0);
  REQUIRE(run(args + " --out " + b.path.string()) == 0);
  const std::string csv = slurp(a.path / "decay.csv");
  CHECK(csv == slurp(b.path / "decay.csv"));
  CHECK(slurp(a.path / "diagnostics.txt") == slurp(b.path / "diagnostics.txt"));
  CHECK(csv.substr(0, csv.find('\n') + 1) == "t,S\n");
  // first row is t = 0 with S = 1 up to rounding in the last ulp
  std::istringstream rows(csv.substr(csv.find('\n') + 1));
  std::string first_row;
  std::getline(rows, first_row);
  REQUIRE(first_row.substr(0, 2) == "0,");
  CHECK(std::abs(std::stod(first_row.substr(2)) - 1.0) < 1e-12);
}

TEST_CASE("catmap outputs are independent of thread count") {
  ScratchDir a("cat_a"), b("cat_b"), c("cat_c");
  const std::string args = "catmap --preset fig3-5 --seed 7 --n-points 100";
  REQUIRE(run(args + " --threads 1 --out " + a.path.string()) == 0);
  REQUIRE(run(args + " --threads 4 --out " + b.path.string()) == 0);
  REQUIRE(run(args + " --threads 3 --out " + c.path.string()) == 0);
  CHECK(slurp(a.path / "snapshots.csv") == slurp(b.path / "snapshots.csv"));
  CHECK(slurp(a.path / "entropy.csv") == slurp(b.path / "entropy.csv"));
  CHECK(slurp(a.path / "snapshots.csv") == slurp(c.path / "snapshots.csv"));
  CHECK(slurp(a.path / "acceptance.txt") == slurp(b.path / "acceptance.txt"));
}

TEST_CASE("seed changes Monte Carlo outputs") {
  ScratchDir a("seed_a"), b("seed_b");
  REQUIRE(run("catmap --seed 1 --n-points 50 --out " + a.path.string()) == 0);
  REQUIRE(run("catmap --seed 2 --n-points 50 --out " + b.path.string()) == 0);
  CHECK(slurp(a.path / "snapshots.csv") != slurp(b.path / "snapshots.csv"));
}

TEST_CASE("kicks selfavg rerun is byte identical") {
  ScratchDir a("kick_a"), b("kick_b");
  const std::string args =
      "kicks --mode selfavg --repeats 2000 --seed 33";
  REQUIRE(run(args + " --out " + a.path.string()) == 0);
  REQUIRE(run(args + " --out " + b.path.string()) == 0);
  CHECK(slurp(a.path / "selfavg.txt") == slurp(b.path / "selfavg.txt"));
}

TEST_CASE("special preset writes spectrum and traces") {
  ScratchDir a("spec_a"), b("spec_b");
  const std::string args = "special --preset fig2 --nt 33";
  REQUIRE(run(args + " --out " + a.path.string()) == 0);
  REQUIRE(run(args + " --out " + b.path.string()) == 0);
  CHECK(slurp(a.path / "spectrum.csv") == slurp(b.path / "spectrum.csv"));
  CHECK(slurp(a.path / "trace.csv") == slurp(b.path / "trace.csv"));
  const std::string manifest = slurp(a.path / "manifest.txt");
  CHECK(manifest.find("preset=fig2") != std::string::npos);
  CHECK(manifest.find("t0=16") != std::string::npos);
}

TEST_CASE("fields preset writes profile and estimates") {
  ScratchDir a("field_a"), b("field_b");
  const std::string args = "fields --preset field-profile --ny 41";
  REQUIRE(run(args + " --out " + a.path.string()) == 0);
  REQUIRE(run(args + " --out " + b.path.string()) == 0);
  CHECK(slurp(a.path / "profile.csv") == slurp(b.path / "profile.csv"));
  const std::string csv = slurp(a.path / "profile.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "y,Bx,By,Bz,dBx_dx");
  CHECK(slurp(a.path / "estimates.txt").find("B_delta_t_Ts=1.137") !=
        std::string::npos);
}

TEST_CASE("angle-scan preset reports the sorted optimum") {
  ScratchDir a("angle");
  REQUIRE(run("kicks --preset angle-scan --out " + a.path.string()) == 0);
  const std::string opt = slurp(a.path / "optimum.txt");
  CHECK(opt.find("theta_star_deg=48.18") != std::string::npos);
}

TEST_CASE("config file values are honored and echoed in the manifest") {
  ScratchDir a("cfg");
  {
    std::ofstream cfg(a.path / "run.cfg");
    cfg << "tmax=25\nnt=51\nseed=77\n";
  }
  REQUIRE(run("decay --config " + (a.path / "run.cfg").string() + " --out " +
              a.path.string()) == 0);
  const std::string manifest = slurp(a.path / "manifest.txt");
  CHECK(manifest.find("tmax=25") != std::string::npos);
  CHECK(manifest.find("nt=51") != std::string::npos);
  CHECK(manifest.find("seed=77") != std::string::npos);
  // command line overrides the file
  REQUIRE(run("decay --config " + (a.path / "run.cfg").string() +
              " --nt 11 --out " + a.path.string()) == 0);
  CHECK(slurp(a.path / "manifest.txt").find("nt=11") != std::string::npos);
}

TEST_CASE("unknown keys and flags are rejected") {
  ScratchDir a("bad");
  {
    std::ofstream cfg(a.path / "bad.cfg");
    cfg << "no_such_parameter=1\n";
  }
  CHECK(run("decay --config " + (a.path / "bad.cfg").string() + " --out " +
            a.path.string()) != 0);
  CHECK(run("decay --no-such-flag 1 --out " + a.path.string()) != 0);
  CHECK(run("decay --preset fig99 --out " + a.path.string()) == 2);
}

TEST_CASE("error classes map to distinct exit codes") {
  ScratchDir a("err");
  // validation error
  CHECK(run("special --variant bogus --out " + a.path.string()) == 2);
  // resource exhaustion: impossible final box under a tiny budget
  CHECK(run("catmap --fw 0.0001 --fh 0.0001 --budget 20000 --out " +
            a.path.string()) == 4);
}
