#include "tfnp/instance_io.hpp"
#include "tfnp/problems.hpp"

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace tfnp;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(TFNP_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tfnp_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    auto p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

const char* kCounter = "problem iter-with-source\n"
                       "source=00\n"
                       "circuit S inputs=2 outputs=2\n"
                       "g0 = INPUT 0\n"
                       "g1 = INPUT 1\n"
                       "g2 = OR g0 g1\n"
                       "g3 = NOT g1\n"
                       "g4 = OR g0 g3\n"
                       "output 0 = g2\n"
                       "output 1 = g4\n"
                       "end\n";

} // namespace

TEST_CASE("gen is deterministic and emits well-formed instances") {
  for (const char* kind : {"iter", "iter-with-source", "sod", "sod-with-source", "eol"}) {
    const std::string args = std::string("gen --kind ") + kind + " --n 3 --m 2 --seed 7";
    auto a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto inst = parse_instance(a.out);
    CHECK(kind_name(kind_of(inst)) == kind);
    CHECK(well_formed(inst));
  }
  CHECK(run("gen --kind iter --n 3 --seed 7").out != run("gen --kind iter --n 3 --seed 8").out);
}

TEST_CASE("verify, solve and reduce") {
  TempDir tmp;
  // S(x) = x + 1 saturating: 00 -> 01 -> 10 -> 11 -> 11.
  auto file = tmp.write("counter.tfnp", kCounter);
  CHECK(run("verify " + file + " --candidate 10").code == 0);
  CHECK(run("verify " + file + " --candidate 01").code == 1);
  CHECK(run("verify " + file + " --candidate 0").code == 3);
  auto solved = run("solve " + file);
  CHECK(solved.code == 0);
  CHECK(solved.out == "10\n");
  CHECK(run("solve --exhaustive " + file).out == "10\n");
  for (const char* to : {"iter", "sod", "sod-with-source"}) {
    auto r = run("reduce " + file + " --to " + to);
    CHECK(r.code == 0);
    CHECK(r.out.find("(verified)") != std::string::npos);
  }
  CHECK(run("reduce " + file + " --to eol").code == 3);
}

TEST_CASE("dsr-run") {
  TempDir tmp;
  auto file = tmp.write("counter.tfnp", kCounter);
  auto r = run("dsr-run " + file + " --mode poly-blowup --trace");
  CHECK(r.code == 0);
  CHECK(r.out.find("query depth=1") != std::string::npos);
  CHECK(r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1) == "10\n");
  CHECK(run("dsr-run " + file + " --inject-fault echo-query").code == 2);
  CHECK(run("dsr-run " + file + " --mode poly-blowup --inject-fault pad-query").code == 2);
  CHECK(run("dsr-run " + file + " --mode sideways").code == 3);
}

TEST_CASE("compiled fixture") {
  auto walk = run("walk --problem fixture:recursive-combine --x 0110");
  CHECK(walk.code == 0);
  CHECK(walk.out.find("step=0 pi=1 ") != std::string::npos);
  CHECK(walk.out.find("sink after 29 steps, solution") != std::string::npos);
  CHECK(walk.out.find("(verified)") != std::string::npos);
  auto compiled = run("compile-pls --x 0110");
  CHECK(compiled.code == 0);
  CHECK(compiled.out.find("path length 30") != std::string::npos);
  auto svl = run("svl-check --x 011");
  CHECK(svl.code == 0);
  CHECK(svl.out.find("promise holds") != std::string::npos);
  CHECK(run("walk --problem fixture:unknown --x 01").code == 3);
  CHECK(run("walk").code == 3);
}

TEST_CASE("self-hosted ITER program") {
  TempDir tmp;
  auto file = tmp.write("counter.tfnp", kCounter);
  auto walk = run("walk --instance " + file);
  CHECK(walk.code == 0);
  CHECK(walk.out.find("solution 10 (verified)") != std::string::npos);
  auto unique = tmp.write("two.tfnp", "problem iter-with-source\nsource=00\ncircuit S inputs=2 outputs=2\n"
                                      "g0 = INPUT 0\ng1 = CONST 1\noutput 0 = g0\noutput 1 = g1\nend\n");
  CHECK(run("svl-check --instance " + unique).code == 1);
}

TEST_CASE("factor") {
  CHECK(run("factor 91").out == "7\n");
  CHECK(run("factor 97").out == "prime\n");
  auto r = run("factor 12 --all --via-oracle");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("2 3 4 6\n", 0) == 0);
  CHECK(r.out.find("# oracle calls:") != std::string::npos);
  CHECK(run("factor 1").code == 3);
  CHECK(run("factor").code == 3);
}

TEST_CASE("malformed input") {
  TempDir tmp;
  auto bad = tmp.write("bad.tfnp", "problem iter\ncircuit S inputs=1 outputs=1\ng0 = INPUT 0\noutput 0 = g7\nend\n");
  CHECK(run("verify " + bad + " --candidate 0").code == 3);
  CHECK(run("verify /nonexistent/file --candidate 0").code == 3);
  CHECK(run("frobnicate").code == 3);
}
