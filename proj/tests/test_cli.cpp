// Process-level checks of the command-line surface. Skipped unless the
// KFUSE_CLI environment variable points at the built binary (ctest sets it).

#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const char* cli_path() { return std::getenv("KFUSE_CLI"); }

int run(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string dir = "/tmp/kfuse_cli_test";

}  // namespace

TEST_CASE("cli exit codes and screen reproducibility") {
  if (!cli_path()) {
    MESSAGE("KFUSE_CLI not set; skipping process-level CLI checks");
    return;
  }
  REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);

  CHECK(run("--help > /dev/null") == 0);
  CHECK(run("definitely-not-a-subcommand") == 2);
  CHECK(run("oracle-kg --rho 0.5 > /dev/null") == 2);     // missing --G
  CHECK(run("oracle-kg --rho 1.5 --G 3 > /dev/null") == 2);
  CHECK(run("screen --input " + dir + "/nope.csv --out " + dir + "/o.csv") == 1);

  const std::string cat = dir + "/m7.csv";
  REQUIRE(run("simulate --model 7 --n 100 --p 12 --seed 5 --out " + cat +
              " > /dev/null") == 0);
  CHECK(run("screen --input " + cat + " --response y --kind categorical "
            "--method sis --out " + dir + "/o.csv") == 2);
  CHECK(run("screen --input " + cat + " --response y --kind categorical "
            "--method fused --dn 500 --out " + dir + "/o.csv") == 2);

  // sidecar metadata exists and names the model
  const std::string meta = slurp(cat + ".meta.json");
  CHECK(meta.find("\"model\": \"7\"") != std::string::npos);
  CHECK(meta.find("\"response_kind\": \"categorical\"") != std::string::npos);

  // diagnostics output formats
  REQUIRE(run("oracle-kg --rho 0 --G 4 > " + dir + "/okg.txt") == 0);
  CHECK(slurp(dir + "/okg.txt") == "0\n");
  REQUIRE(run("c1-check --cov identity --beta 1,-1 --p 10 > " + dir + "/c1.txt") == 0);
  const std::string c1 = slurp(dir + "/c1.txt");
  CHECK(c1.find("S = {1,2}") != std::string::npos);
  CHECK(c1.find("margin = 1") != std::string::npos);
  REQUIRE(run("c1-check --cov ar --rho 0.7 --beta 0.8x10 --p 100 > " + dir +
              "/c1ar.txt") == 0);
  CHECK(slurp(dir + "/c1ar.txt").find("ar_bound = 10") != std::string::npos);

  // same invocation twice: byte-identical ranking files
  const std::string cont = dir + "/m1.csv";
  REQUIRE(run("simulate --model 1a --n 120 --p 40 --seed 9 --out " + cont +
              " > /dev/null") == 0);
  REQUIRE(run("screen --input " + cont + " --response y --kind continuous "
              "--method fused --method rcs --out " + dir + "/s1.csv > /dev/null") == 0);
  REQUIRE(run("screen --input " + cont + " --response y --kind continuous "
              "--method fused --method rcs --out " + dir + "/s2.csv > /dev/null") == 0);
  const std::string s1 = slurp(dir + "/s1.csv");
  CHECK(!s1.empty());
  CHECK(s1 == slurp(dir + "/s2.csv"));
}
