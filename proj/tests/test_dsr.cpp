#include "oracles.hpp"

#include "tfnp/dsr.hpp"
#include "tfnp/errors.hpp"
#include "tfnp/generate.hpp"
#include "tfnp/solvers.hpp"

#include <doctest.h>

#include <random>

using namespace tfnp;

namespace {

BitString bits(const char* s) { return BitString::parse(s); }

constexpr ProblemKind kDsrKinds[] = {ProblemKind::iter, ProblemKind::iter_with_source, ProblemKind::sod,
                                     ProblemKind::sod_with_source};

// Records every query and answers it exhaustively.
class RecordingOracle : public Oracle {
public:
  BitString solve(const ProblemInstance& q) override {
    queries.push_back(q);
    return solve_exhaustive(q);
  }
  std::vector<ProblemInstance> queries;
};

} // namespace

TEST_CASE("half restrictions") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    auto t = random_table(n, n, rng);
    Circuit s = synthesize(n, n, t, "S");
    auto lo = oracle::table(lower_half(s));
    auto hi = oracle::table(upper_half(s));
    for (std::uint64_t x = 0; x < half; ++x) {
      // Bit 0 is the leading bit of the string, i.e. the most significant.
      CHECK(lo[x] == (t[x] & (half - 1)));
      const std::uint64_t img = t[half + x];
      CHECK(hi[x] == ((img & half) ? (img & (half - 1)) : 0));
    }
  }
}

TEST_CASE("freezing below a threshold") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 3, m = 2 + rng() % 2;
    auto s = random_table(n, n, rng), v = random_table(n, m, rng);
    auto g = make_sod(synthesize(n, n, s, "S"), synthesize(n, m, v, "V"));
    const std::uint64_t thr = rng() % (std::uint64_t{1} << m);
    Circuit f = freeze_below(g.graph, m, BitString::from_uint(thr, m));
    REQUIRE(f.output_count() == n + m - 1);
    auto fs = oracle::table(successor_part(f, m - 1)), fv = oracle::table(valuation_part(f, m - 1));
    for (std::uint64_t x = 0; x < s.size(); ++x) {
      CHECK(fs[x] == (v[x] >= thr ? s[x] : x));
      CHECK(fv[x] == (v[x] & ((std::uint64_t{1} << (m - 1)) - 1)));
    }
  }
}

TEST_CASE("ITER-with-source on the saturating counter") {
  auto inst = iter_from_table({1, 2, 3, 3}, 2, 0);
  RecordingOracle o;
  CHECK(dsr_iter_with_source(inst, o) == bits("10"));
  for (const auto& q : o.queries) CHECK(dimension(q) == 1);
}

TEST_CASE("algorithms are correct against an adversarial oracle") {
  std::mt19937_64 rng(23);
  AdversarialOracle adversary(99);
  for (int trial = 0; trial < 200; ++trial)
    for (auto kind : kDsrKinds) {
      auto inst = generate_instance(kind, 1 + rng() % 4, 1 + rng() % 3, rng);
      CHECK(verify_solution(inst, dsr_solve(inst, adversary)));
    }
}

TEST_CASE("at most two queries, each of smaller dimension") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 200; ++trial)
    for (auto kind : kDsrKinds) {
      auto inst = generate_instance(kind, 2 + rng() % 3, 1 + rng() % 3, rng);
      RecordingOracle o;
      dsr_solve(inst, o);
      CHECK(o.queries.size() <= 2);
      for (const auto& q : o.queries) {
        const auto d = dims_of(inst), e = dims_of(q);
        CHECK(e.inputs <= d.inputs);
        CHECK(e.outputs <= d.outputs);
        CHECK(e.inputs + e.outputs < d.inputs + d.outputs);
      }
    }
}

TEST_CASE("monitored recursion on every 2-bit instance") {
  for (std::uint64_t code = 0; code < 256; ++code) {
    FunctionTable t(4);
    for (std::size_t x = 0; x < 4; ++x) t[x] = (code >> (2 * x)) & 3;
    const IterInstance plain{synthesize(2, 2, t, "S")};
    if (well_formed(plain)) CHECK(verify_solution(plain, run_dsr(plain, MonitorMode::poly_blowup).solution));
    for (std::uint64_t s = 0; s < 4; ++s) {
      ProblemInstance with = iter_from_table(t, 2, s);
      if (well_formed(with)) CHECK(verify_solution(with, run_dsr(with, MonitorMode::poly_blowup).solution));
    }
  }
}

TEST_CASE("monitored recursion on random instances") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial)
    for (auto kind : kDsrKinds) {
      auto inst = generate_instance(kind, 3 + rng() % 2, 1 + rng() % 3, rng);
      for (auto mode : {MonitorMode::circuit_dsr, MonitorMode::poly_blowup}) {
        auto run = run_dsr(inst, mode);
        CHECK(verify_solution(inst, run.solution));
        CHECK(run.max_depth <= dimension(inst) + dims_of(inst).outputs);
        for (const auto& e : run.trace) CHECK(e.depth >= 1);
      }
    }
}

TEST_CASE("monitor rejects oversized and excess queries") {
  std::mt19937_64 rng(26);
  auto root = generate_instance(ProblemKind::iter, 3, 0, rng);
  auto small = generate_instance(ProblemKind::iter, 2, 0, rng);
  SelfOracle self;

  SUBCASE("same dimension") {
    Monitor m(self, MonitorMode::circuit_dsr);
    m.set_root(root);
    CHECK_THROWS_AS(m.solve(root), MonitorViolation);
  }
  SUBCASE("third query") {
    Monitor m(self, MonitorMode::circuit_dsr);
    m.set_root(root);
    m.solve(small);
    m.solve(small);
    CHECK_THROWS_AS(m.solve(small), MonitorViolation);
  }
  SUBCASE("padding breaks the size bound") {
    Monitor m(self, MonitorMode::poly_blowup);
    m.set_root(root);
    CHECK_THROWS_AS(m.solve(pad_instance(small, 1000)), MonitorViolation);
    Monitor loose(self, MonitorMode::circuit_dsr);
    loose.set_root(root);
    CHECK_NOTHROW(loose.solve(pad_instance(small, 1000)));
  }
  SUBCASE("larger encoded size in d.s.r. mode") {
    Monitor m(self, MonitorMode::dsr);
    m.set_root(small);
    CHECK_THROWS_AS(m.solve(pad_instance(small, 1)), MonitorViolation);
  }
}

TEST_CASE("injected faults are caught") {
  std::mt19937_64 rng(27);
  int exercised = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = generate_instance(ProblemKind::iter_with_source, 4, 0, rng);
    if (run_dsr(inst, MonitorMode::poly_blowup).trace.empty()) continue;
    ++exercised;
    CHECK_THROWS_AS(run_dsr(inst, MonitorMode::poly_blowup, 2, Fault::echo_query), MonitorViolation);
    CHECK_THROWS_AS(run_dsr(inst, MonitorMode::poly_blowup, 2, Fault::pad_query), MonitorViolation);
  }
  CHECK(exercised > 0);
}

TEST_CASE("mode and fault names") {
  for (auto m : {MonitorMode::dsr, MonitorMode::circuit_dsr, MonitorMode::poly_blowup})
    CHECK(parse_mode(mode_name(m)) == m);
  CHECK_FALSE(parse_mode("fast").has_value());
  CHECK(parse_fault("echo-query") == Fault::echo_query);
  CHECK(parse_fault("pad-query") == Fault::pad_query);
  CHECK(parse_fault("none") == Fault::none);
}

TEST_CASE("End-of-Line is not handled") {
  std::mt19937_64 rng(28);
  SelfOracle self;
  CHECK_THROWS(dsr_solve(generate_instance(ProblemKind::eol, 2, 0, rng), self));
}
