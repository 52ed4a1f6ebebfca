#include "tfnp/svl.hpp"

#include "tfnp/errors.hpp"

#include <random>
#include <stdexcept>
#include <unordered_set>

namespace tfnp {

PathIndex big_pi(const std::function<std::size_t(std::size_t)>& p, std::size_t n) {
  if (n == 0) throw std::domain_error("path length is defined for n >= 1");
  PathIndex pi = 2;
  for (std::size_t d = 2; d <= n; ++d) pi = PathIndex(p(d)) * pi + 2;
  return pi;
}

PathIndex big_pi(const DsrProgram& program, std::size_t n) {
  return big_pi([&program](std::size_t d) { return program.query_count(d); }, n);
}

namespace {

struct Deepest {
  std::size_t occupied = 0;
  bool open = false;
};

Deepest inspect(const StateLayout& layout, const BitString& s, std::size_t level) {
  Deepest d;
  while (d.occupied < layout.cells(level)) {
    auto cell = layout.read(s, level, d.occupied);
    if (!cell) throw std::domain_error("state is not canonically encoded");
    if (!cell->x) break;
    d.open = !cell->y;
    ++d.occupied;
  }
  return d;
}

PathIndex offset(const StateLayout& layout, const BitString& s, std::size_t level) {
  const std::size_t below = level + 1;
  if (below >= layout.levels() || layout.cells(below) == 0) return 0;
  auto d = inspect(layout, s, below);
  if (d.occupied == 0) return 0;
  const PathIndex sub = big_pi(layout.program(), layout.level_dimension(below));
  if (!d.open) return PathIndex(d.occupied) * sub;
  return 1 + PathIndex(d.occupied - 1) * sub + offset(layout, s, below);
}

} // namespace

PathIndex position(const StateLayout& layout, const BitString& s) {
  if (is_sink(layout, s)) return big_pi(layout.program(), layout.dimension());
  return 1 + offset(layout, s, 0);
}

PathIndex position_closed(const StateLayout& layout, const BitString& s) {
  if (is_sink(layout, s)) return big_pi(layout.program(), layout.dimension());
  PathIndex pi = 1;
  for (std::size_t level = 1; level < layout.levels(); ++level) {
    auto d = inspect(layout, s, level);
    const std::size_t answered = d.open ? d.occupied - 1 : d.occupied;
    pi += PathIndex(answered) * big_pi(layout.program(), layout.level_dimension(level)) + (d.open ? 1 : 0);
  }
  return pi;
}

PathIndex position_checked(const StateLayout& layout, const BitString& s, const BitString& x) {
  if (!is_valid(layout, s, x)) throw std::domain_error("position is undefined for invalid states");
  return position(layout, s);
}

SvlInstance compile_svl(const DsrProgram& program, const BitString& x, std::size_t n) {
  StateLayout layout(program, n);
  SvlInstance inst;
  inst.successor = SuccessorOracle(layout.total_bits(), [layout, x](const BitString& s) {
    return successor(layout, s, x);
  });
  inst.source = initial_state(layout, x);
  inst.target = big_pi(program, n);
  inst.verifier = [layout, x](const BitString& s, const PathIndex& i) {
    return s.size() == layout.total_bits() && is_valid(layout, s, x) && position(layout, s) == i;
  };
  return inst;
}

PromiseReport check_promise(const SvlInstance& inst, std::uint64_t budget, std::size_t min_samples,
                            std::uint64_t seed) {
  PromiseReport report;
  std::uint64_t length = budget;
  if (inst.target < PathIndex(budget)) length = static_cast<std::uint64_t>(inst.target);
  else report.partial = inst.target > PathIndex(budget);

  std::vector<BitString> path;
  path.reserve(length);
  BitString v = inst.source;
  for (std::uint64_t i = 0; i < length; ++i) {
    path.push_back(v);
    if (i + 1 < length) v = inst.successor(v);
  }

  std::mt19937_64 rng(seed);
  const std::size_t width = inst.source.size();
  auto fail = [&](std::uint64_t i, std::string why) {
    report.holds = false;
    report.violation_index = i;
    report.detail = std::move(why);
    return report;
  };

  for (std::uint64_t i = 1; i <= length; ++i) {
    const BitString& here = path[i - 1];
    ++report.indices_checked;
    if (!inst.verifier(here, PathIndex(i))) return fail(i, "path vertex " + std::to_string(i) + " does not verify");

    std::unordered_set<BitString> samples;
    for (std::size_t k = 0; k < width; ++k) {
      BitString flipped = here;
      flipped.set(k, !here[k]);
      samples.insert(std::move(flipped));
    }
    const std::size_t stride = std::max<std::size_t>(1, path.size() / 32);
    for (std::size_t j = (i - 1) % stride; j < path.size(); j += stride)
      if (j != i - 1) samples.insert(path[j]);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t tries = 0; samples.size() < min_samples && tries < 64 * min_samples; ++tries) {
      BitString r = BitString::zeros(width);
      for (std::size_t k = 0; k < width; ++k) r.set(k, coin(rng));
      if (r != here) samples.insert(std::move(r));
    }
    samples.erase(here);
    for (const auto& other : samples) {
      ++report.samples_checked;
      if (inst.verifier(other, PathIndex(i)))
        return fail(i, "off-path string " + other.to_string() + " verifies at index " + std::to_string(i));
    }
  }
  return report;
}

} // namespace tfnp
