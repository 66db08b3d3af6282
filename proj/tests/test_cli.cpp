#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

#ifndef ISOMONO_CLI
#error "ISOMONO_CLI must name the built executable"
#endif

namespace {

// removed again when the process exits
struct ScratchDir {
  fs::path path;
  ScratchDir() : path(fs::temp_directory_path() / ("isomono_cli_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path scratch() {
  static const ScratchDir dir;
  return dir.path;
}

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Run run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  ++counter;
  fs::path out = scratch() / ("out" + std::to_string(counter)), err = scratch() / ("err" + std::to_string(counter));
  std::string cmd = env + (env.empty() ? "" : " ") + "'" + std::string(ISOMONO_CLI) + "' " + args + " >'" + out.string() +
                    "' 2>'" + err.string() + "'";
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

json strip_timing(json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST_CASE("orbit reports the pure orbit size", "[cli]") {
  Run r = run("orbit rho1 --pure");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["command"] == "orbit");
  CHECK(j["results"]["size"] == 4);
  CHECK(j["results"]["status"] == "Closed");
  CHECK(j.contains("inputs"));
  CHECK(j.contains("checks"));
  CHECK(j.contains("timing"));
}

TEST_CASE("orbit sizes for the extended action and the trivial tuple", "[cli]") {
  Run e = run("orbit rho3 --extended");
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["results"]["size"] == 120);
  Run i = run("orbit identity --pure");
  REQUIRE(i.code == 0);
  CHECK(json::parse(i.out)["results"]["size"] == 1);
}

TEST_CASE("cutoff exits with code 2", "[cli]") {
  Run r = run("orbit rho1 --extended --cutoff 10");
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["results"]["status"] == "Cutoff");
  Run env = run("orbit rho1 --pure", "ISOMONO_CUTOFF=3");
  CHECK(env.code == 2);
  CHECK(run("orbit rho1 --pure", "ISOMONO_CUTOFF=zero").code == 3);
}

TEST_CASE("usage and parse errors exit with code 3", "[cli]") {
  CHECK(run("orbit rho1 --at u=1/0").code == 3);
  CHECK(run("orbit rho1 --at u").code == 3);
  CHECK(run("orbit rho9").code == 3);
  CHECK(run("orbit rho1 --pure --extended").code == 3);
  CHECK(run("verify nonsense").code == 3);
  CHECK(run("compare family:rho1 family:rho2 --subst u=s+1").code == 3);
  CHECK(run("compare family:rho1 family:rho2 --expect Maybe").code == 3);
  CHECK(run("").code == 3);
  Run missing = run("orbit --tuple '" + (scratch() / "absent.json").string() + "'");
  CHECK(missing.code == 3);
  CHECK_FALSE(missing.err.empty());
}

TEST_CASE("orbit files feed compare", "[cli]") {
  fs::path o2 = scratch() / "rho2_ext.json";
  REQUIRE(run("orbit rho2 --extended --out '" + o2.string() + "'").code == 0);
  REQUIRE(fs::exists(o2));

  Run member = run("compare '" + o2.string() + "' family:rho3 --subst u=-s,v=s --expect Member");
  CHECK(member.code == 0);
  CHECK(json::parse(member.out)["results"]["relation"] == "Member");
  CHECK(json::parse(member.out)["results"]["witnesses"].size() == 1);

  Run disjoint = run("compare '" + o2.string() + "' family:rho3 --subst u=s,v=s");
  CHECK(disjoint.code == 0);
  CHECK(json::parse(disjoint.out)["results"]["relation"] == "Disjoint");

  Run mismatch = run("compare '" + o2.string() + "' family:rho3 --subst u=s,v=s --expect Member");
  CHECK(mismatch.code == 1);

  Run equal = run("compare '" + o2.string() + "' '" + o2.string() + "' --expect Equal");
  CHECK(equal.code == 0);
}

TEST_CASE("tuple files seed an orbit", "[cli]") {
  fs::path t = scratch() / "tuple.json";
  std::ofstream(t) << R"({"name": "diag", "matrices": [["u","0","0","u^-1"],["v","0","0","v^-1"],["1","1","0","1"],["1","0","1","1"]]})";
  Run r = run("orbit --tuple '" + t.string() + "' --pure");
  CHECK(r.code != 3);
  CHECK(json::parse(r.out)["inputs"]["seed"] == "diag");
  fs::path bad = scratch() / "bad.json";
  std::ofstream(bad) << R"({"matrices": [["2","0","0","1"],["1","0","0","1"],["1","0","0","1"],["1","0","0","1"]]})";
  CHECK(run("orbit --tuple '" + bad.string() + "'").code == 3);
}

TEST_CASE("verify suites report pass and fail through the exit code", "[cli]") {
  Run res = run("verify residues");
  CHECK(res.code == 0);
  CHECK(json::parse(res.out)["results"]["residues"]["fail"] == 0);

  // the case-1 connection is not flat
  Run flat = run("verify flatness");
  CHECK(flat.code == 1);
  CHECK(json::parse(flat.out)["results"]["flatness"]["fail"].get<int>() > 0);

  // printed-data discrepancies are warnings on stderr, not failures
  Run garnier = run("verify garnier --at l0=1/3,l1=2");
  CHECK(garnier.code == 0);
  CHECK(garnier.err.find("warning") != std::string::npos);
  CHECK(run("verify garnier --at a=1,c=3").code == 3);
  CHECK(run("verify all").code == 1);
}

TEST_CASE("reports are deterministic apart from timing", "[cli]") {
  fs::path a = scratch() / "r1.json", b = scratch() / "r2.json";
  REQUIRE(run("verify restriction --report '" + a.string() + "'").code != 3);
  REQUIRE(run("verify restriction --report '" + b.string() + "'").code != 3);
  CHECK(strip_timing(json::parse(slurp(a))) == strip_timing(json::parse(slurp(b))));
  Run x = run("orbit rho4 --extended"), y = run("orbit rho4 --extended");
  CHECK(strip_timing(json::parse(x.out)) == strip_timing(json::parse(y.out)));
}
