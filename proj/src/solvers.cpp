#include "tfnp/solvers.hpp"

#include "tfnp/errors.hpp"

namespace tfnp {

namespace {

void check_bound(std::size_t n, std::size_t bound) {
  if (n > bound || n >= 64)
    throw RefusalError("exhaustive search over " + std::to_string(n) + " bits exceeds the bound of " +
                       std::to_string(bound));
}

} // namespace

BitString successor_of(const ProblemInstance& inst, const BitString& v) {
  if (auto* i = std::get_if<IterInstance>(&inst)) return evaluate(i->successor, v);
  if (auto* i = std::get_if<IterWithSourceInstance>(&inst)) return evaluate(i->successor, v);
  if (auto* i = std::get_if<SodInstance>(&inst)) return evaluate(i->graph, v).slice(0, v.size());
  if (auto* i = std::get_if<SodWithSourceInstance>(&inst)) return evaluate(i->graph, v).slice(0, v.size());
  if (auto* i = std::get_if<EolInstance>(&inst)) return evaluate(i->successor, v);
  return std::get<SvlInstance>(inst).successor(v);
}

BitString solve_path(const ProblemInstance& inst, std::optional<std::uint64_t> budget) {
  const std::size_t n = dimension(inst);
  const std::uint64_t steps = budget ? *budget : (n >= 63 ? UINT64_MAX : std::uint64_t{1} << n);
  BitString v = source_of(inst);
  for (std::uint64_t i = 0; i <= steps; ++i) {
    if (verify_solution(inst, v)) return v;
    v = successor_of(inst, v);
  }
  throw MalformedInstance("no solution on the source path within " + std::to_string(steps) + " steps");
}

BitString solve_path(const ImplicitSodInstance& inst, std::uint64_t budget) {
  BitString v = inst.source;
  for (std::uint64_t i = 0; i <= budget; ++i) {
    if (verify_solution(inst, v)) return v;
    v = inst.successor(v);
  }
  throw MalformedInstance("no solution on the source path within " + std::to_string(budget) + " steps");
}

BitString solve_exhaustive(const ProblemInstance& inst, std::size_t bound) {
  const std::size_t n = dimension(inst);
  check_bound(n, bound);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    auto v = BitString::from_uint(x, n);
    if (verify_solution(inst, v)) return v;
  }
  throw MalformedInstance("instance has no solution");
}

std::vector<BitString> all_solutions(const ProblemInstance& inst, std::size_t bound) {
  const std::size_t n = dimension(inst);
  check_bound(n, bound);
  std::vector<BitString> found;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    auto v = BitString::from_uint(x, n);
    if (verify_solution(inst, v)) found.push_back(std::move(v));
  }
  return found;
}

} // namespace tfnp
