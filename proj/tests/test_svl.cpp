#include "tfnp/errors.hpp"
#include "tfnp/fixtures.hpp"
#include "tfnp/generate.hpp"
#include "tfnp/iter_program.hpp"
#include "tfnp/state_table.hpp"
#include "tfnp/svl.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace tfnp;

namespace {

std::vector<BitString> walk(const StateLayout& layout, const BitString& x) {
  std::vector<BitString> path{initial_state(layout, x)};
  while (!is_sink(layout, path.back())) path.push_back(successor(layout, path.back(), x));
  return path;
}

} // namespace

TEST_CASE("path length") {
  recursive_combine::Program prog;
  for (std::size_t n = 1; n <= 40; ++n) CHECK(big_pi(prog, n) == (PathIndex(1) << (n + 1)) - 2);
  auto three = [](std::size_t) -> std::size_t { return 3; };
  PathIndex expect = 2;
  for (std::size_t n = 2; n <= 30; ++n) {
    expect = 3 * expect + 2;
    CHECK(big_pi(three, n) == expect);
  }
}

TEST_CASE("position counts steps and both forms agree") {
  recursive_combine::Program prog;
  for (std::size_t n = 1; n <= 5; ++n) {
    StateLayout layout(prog, n);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      auto x = BitString::from_uint(v, n);
      auto path = walk(layout, x);
      for (std::size_t i = 0; i < path.size(); ++i) {
        CHECK(position(layout, path[i]) == PathIndex(i + 1));
        CHECK(position_closed(layout, path[i]) == PathIndex(i + 1));
        CHECK(position_checked(layout, path[i], x) == PathIndex(i + 1));
      }
      CHECK(position(layout, path.back()) == big_pi(prog, n));
    }
  }
}

TEST_CASE("position rejects invalid states") {
  recursive_combine::Program prog;
  StateLayout layout(prog, 3);
  auto s = walk(layout, BitString::parse("010")).back();
  CHECK_THROWS_AS(position_checked(layout, s, BitString::parse("011")), std::domain_error);
}

TEST_CASE("compiled SVL instance") {
  recursive_combine::Program prog;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto x = BitString::from_uint(std::uint64_t{1} << (n - 1), n);
    auto svl = compile_svl(prog, x, n);
    CHECK(svl.target == big_pi(prog, n));
    StateLayout layout(prog, n);
    auto path = walk(layout, x);
    CHECK(svl.source == path.front());
    for (std::size_t i = 0; i < path.size(); ++i) {
      CHECK(svl.verifier(path[i], PathIndex(i + 1)));
      CHECK_FALSE(svl.verifier(path[i], PathIndex(i + 2)));
    }
    auto report = check_promise(svl, 1000);
    CHECK(report.holds);
    CHECK_FALSE(report.partial);
    CHECK(report.indices_checked == path.size());
    CHECK(report.samples_checked >= 10 * path.size());
    CHECK(verify_solution(ProblemInstance{svl}, path.back()));
  }
}

TEST_CASE("budget limits the promise check") {
  recursive_combine::Program prog;
  auto svl = compile_svl(prog, BitString::parse("0110"), 4);
  auto report = check_promise(svl, 5);
  CHECK(report.holds);
  CHECK(report.partial);
  CHECK(report.indices_checked == 5);
}

TEST_CASE("several solutions break the promise") {
  // 00 -> 01 -> 01 and 10 -> 11 -> 11: both 00 and 10 solve it.
  auto inst = iter_from_table({1, 1, 3, 3}, 2, 0);
  IterProgram prog(inst);
  auto report = check_promise(compile_svl(prog, prog.encode(inst), 2), 1000);
  CHECK_FALSE(report.holds);
  CHECK(report.violation_index.has_value());
  CHECK_FALSE(report.detail.empty());
}
