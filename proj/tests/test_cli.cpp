#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(FFL_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf{};
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string doc(const std::string& rel) {
  return std::string(FFL_REPO_ROOT) + "/" + rel;
}

}  // namespace

TEST_CASE("validate reports passing axioms with exit 0") {
  RunResult r = run("validate " + doc("examples/exm21.ffl"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("pass") != std::string::npos);
}

TEST_CASE("analyze emits the expected facts for the running example") {
  RunResult r = run("--format json analyze " + doc("examples/exm21.ffl"));
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["fix"] == nlohmann::json({"-3", "-1", "1", "3", "18"}));
  CHECK(j["rho"] == "6");
  bool has_e6 = false;
  for (const auto& e : j["gap"]["ellipses"])
    if (e["figure"] == "E_6(-1,1)") {
      has_e6 = true;
      CHECK(e["members"] == nlohmann::json({"-3", "3"}));
      CHECK(e["certified"] == true);
    }
  CHECK(has_e6);
}

TEST_CASE("verify resolves parameters from the document and passes") {
  RunResult r = run("verify " + doc("examples/exm21.ffl"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("pass") != std::string::npos);
}

TEST_CASE("verify accepts explicit flags, overriding the document") {
  RunResult r = run("--format json verify " + doc("examples/exm21.ffl") +
                    " --theorem ellipse --foci=-1,1 --zeta linear:1/2 --a 1/2");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["status"] == "pass");
  CHECK(j["params"]["a"] == "1/2");
  CHECK(j["conclusion"]["oracle_confirmed"] == true);
}

TEST_CASE("verify exits 1 when a condition fails") {
  RunResult r = run("verify " + doc("examples/exm23.ffl") + " --foci=-3,3");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("fail") != std::string::npos);
}

TEST_CASE("verify exits 1 when the theorem is not applicable") {
  // A one-line document with the identity map: rho is undefined.
  std::string path = std::string(FFL_REPO_ROOT) + "/build/identity_tmp.ffl";
  std::ofstream out(path);
  out << "[space]\nkind = metric\npoints = 0 1\nsource = builtin:abs-metric\n"
         "[map]\nmap = 0:0 1:1\n[zeta]\nzeta = linear:1/2\n"
         "[verify]\ntheorem = circle\ncenter = 0\n";
  out.close();
  RunResult r = run("verify " + path);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("not-applicable") != std::string::npos);
}

TEST_CASE("parse errors exit 2") {
  std::string path = std::string(FFL_REPO_ROOT) + "/build/broken_tmp.ffl";
  std::ofstream out(path);
  out << "[space]\nkind = metric\npoints = 0 1\nsource = builtin:abs-metric\n"
         "[map]\nmap = 0:0 1:7\n";
  out.close();
  RunResult r = run("verify " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("parse error") != std::string::npos);
  RunResult missing = run("analyze /nonexistent.ffl");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("usage errors exit 2") {
  RunResult r = run("verify " + doc("examples/exm21.ffl") + " --theorem phi-circle");
  CHECK(r.exit_code == 2);
  RunResult unknown = run("frobnicate");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("scan prints the violation count and exits 0 when clean") {
  RunResult r = run("scan --seed 9 --instances 10 --max-n 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0 soundness violations") != std::string::npos);
}

TEST_CASE("scan output is byte-identical for a fixed seed") {
  std::string args = "--format json scan --seed 31 --instances 8 --max-n 5";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("demo subcommand passes") {
  RunResult r = run("demo-ellipse --samples 500");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);
}

TEST_CASE("json reports are stable against the golden files") {
  for (const std::string name : {"exm21_verify", "exm22_verify", "exm23_verify",
                                 "exm23b_verify"}) {
    std::string source = name.substr(0, name.find('_'));
    RunResult r = run("--format json verify " + doc("examples/" + source + ".ffl"));
    REQUIRE(r.exit_code == 0);
    std::ifstream golden(doc("tests/golden/" + name + ".json"));
    REQUIRE(golden.good());
    std::string expected((std::istreambuf_iterator<char>(golden)),
                         std::istreambuf_iterator<char>());
    CHECK(r.output == expected);
  }
}

TEST_CASE("validate reports an axiom violation with exit 1") {
  std::string path = std::string(FFL_REPO_ROOT) + "/build/badmetric_tmp.ffl";
  std::ofstream out(path);
  out << "[space]\nkind = metric\npoints = 0 1 2\nsource = table\n"
         "row = 0 1 3\nrow = 1 0 1\nrow = 3 1 0\n[map]\nmap = 0:0 1:1 2:2\n";
  out.close();
  RunResult r = run("validate " + path);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("triangle-inequality") != std::string::npos);
  CHECK(r.output.find("FAIL") != std::string::npos);
  // The same document is a parse error for subcommands needing a valid space.
  RunResult a = run("analyze " + path);
  CHECK(a.exit_code == 2);
}

TEST_CASE("remaining verify routes are wired: ze, phi-circle, uniqueness") {
  RunResult ze = run("verify " + doc("examples/exm21.ffl") +
                     " --theorem ze-contraction --foci -1,1");
  CHECK(ze.exit_code == 0);
  RunResult phi = run("verify " + doc("examples/exm21.ffl") +
                      " --theorem phi-circle --center 3 --r 6");
  CHECK(phi.exit_code == 0);
  // E_6(-1,1) is fixed but not all of Fix(f): uniqueness must fail.
  RunResult uniq_fail = run("verify " + doc("examples/exm21.ffl") +
                            " --theorem uniqueness --figure \"ellipse -1 1 6\"");
  CHECK(uniq_fail.exit_code == 1);
  std::string path = std::string(FFL_REPO_ROOT) + "/build/uniq_tmp.ffl";
  std::ofstream out(path);
  out << "[space]\nkind = metric\npoints = 0 1 2\nsource = builtin:abs-metric\n"
         "[map]\nmap = 0:0 1:1 2:1\n[zeta]\nzeta = linear:2/3\n"
         "[verify]\ntheorem = uniqueness\nfigure = ellipse 0 1 1\na = 0\n";
  out.close();
  RunResult uniq_pass = run("verify " + path);
  CHECK(uniq_pass.exit_code == 0);
  RunResult identity = run("verify " + path + " --theorem identity");
  CHECK(identity.exit_code == 1);  // f is not the identity
}
