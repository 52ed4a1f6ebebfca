#include "tfnp/problems.hpp"

#include "tfnp/errors.hpp"

#include <array>
#include <numeric>

namespace tfnp {

namespace {
thread_local std::size_t g_successor_evaluations = 0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

BitString step(const Circuit& s, const BitString& x) {
  ++g_successor_evaluations;
  return evaluate(s, x);
}

struct SodStep {
  BitString next;
  BitString value;
};

SodStep sod_step(const Circuit& graph, std::size_t value_bits, const BitString& x) {
  ++g_successor_evaluations;
  BitString out = evaluate(graph, x);
  const std::size_t n = graph.input_count();
  return {out.slice(0, n), out.slice(n, value_bits)};
}

bool sod_solution(const Circuit& graph, std::size_t value_bits, const BitString& v) {
  auto here = sod_step(graph, value_bits, v);
  if (here.next == v) return false;
  auto there = sod_step(graph, value_bits, here.next);
  if (there.next == here.next) return true;
  return there.value <= here.value;
}

bool iter_solution(const Circuit& s, const BitString& v) {
  auto u = step(s, v);
  if (!(u > v)) return false;
  return step(s, u) <= u;
}

void expect_width(const BitString& x, std::size_t n) {
  if (x.size() != n)
    throw ArityError("candidate has " + std::to_string(x.size()) + " bits, instance needs " + std::to_string(n));
}

bool square(const Circuit& c) { return c.input_count() == c.output_count(); }

} // namespace

SuccessorOracle::SuccessorOracle(Circuit c) : width_(c.input_count()) {
  if (!square(c)) throw ArityError("successor circuit must map n bits to n bits");
  next_ = [circuit = std::move(c)](const BitString& x) { return evaluate(circuit, x); };
}

BitString SuccessorOracle::operator()(const BitString& x) const {
  if (x.size() != width_) throw ArityError("successor oracle expects " + std::to_string(width_) + " bits");
  ++g_successor_evaluations;
  return next_(x);
}

std::size_t successor_evaluations() noexcept { return g_successor_evaluations; }

ProblemKind kind_of(const ProblemInstance& inst) { return static_cast<ProblemKind>(inst.index()); }

std::string_view kind_name(ProblemKind k) {
  static constexpr std::array<std::string_view, 6> names{"iter", "iter-with-source", "sod",
                                                         "sod-with-source", "eol", "svl"};
  return names[static_cast<std::size_t>(k)];
}

std::optional<ProblemKind> parse_kind(std::string_view name) {
  for (int k = 0; k < 6; ++k)
    if (kind_name(static_cast<ProblemKind>(k)) == name) return static_cast<ProblemKind>(k);
  return std::nullopt;
}

SodInstance make_sod(const Circuit& successor, const Circuit& valuation) {
  if (!square(successor)) throw ArityError("successor circuit must map n bits to n bits");
  if (valuation.input_count() != successor.input_count()) throw ArityError("valuation reads a different width");
  Circuit graph = stack(successor, valuation);
  graph.set_name("G");
  return {std::move(graph), valuation.output_count()};
}

SodWithSourceInstance make_sod(const Circuit& successor, const Circuit& valuation, BitString source) {
  auto g = make_sod(successor, valuation);
  return {std::move(g.graph), g.value_bits, std::move(source)};
}

std::size_t state_bits(const SodInstance& s) { return s.graph.input_count(); }

Circuit successor_part(const Circuit& graph, std::size_t value_bits) {
  std::vector<std::size_t> keep(graph.output_count() - value_bits);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  Circuit c = project(graph, keep);
  c.set_name("S");
  return c;
}

Circuit valuation_part(const Circuit& graph, std::size_t value_bits) {
  std::vector<std::size_t> keep(value_bits);
  std::iota(keep.begin(), keep.end(), graph.output_count() - value_bits);
  Circuit c = project(graph, keep);
  c.set_name("V");
  return c;
}

std::size_t dimension(const ProblemInstance& inst) {
  return std::visit(overloaded{
                        [](const IterInstance& i) { return i.successor.input_count(); },
                        [](const IterWithSourceInstance& i) { return i.successor.input_count(); },
                        [](const SodInstance& i) { return i.graph.input_count(); },
                        [](const SodWithSourceInstance& i) { return i.graph.input_count(); },
                        [](const EolInstance& i) { return i.successor.input_count(); },
                        [](const SvlInstance& i) { return i.successor.width(); },
                    },
                    inst);
}

BitString source_of(const ProblemInstance& inst) {
  return std::visit(overloaded{
                        [](const IterWithSourceInstance& i) { return i.source; },
                        [](const SodWithSourceInstance& i) { return i.source; },
                        [](const SvlInstance& i) { return i.source; },
                        [&](const auto&) { return BitString::zeros(dimension(inst)); },
                    },
                    inst);
}

InstanceDims dims_of(const ProblemInstance& inst) {
  return std::visit(overloaded{
                        [](const IterInstance& i) {
                          auto s = i.successor.size();
                          return InstanceDims{i.successor.input_count(), i.successor.output_count(), s, s};
                        },
                        [](const IterWithSourceInstance& i) {
                          auto s = i.successor.size();
                          return InstanceDims{i.successor.input_count(), i.successor.output_count(), s,
                                              s + i.source.size()};
                        },
                        [](const SodInstance& i) {
                          auto s = i.graph.size();
                          return InstanceDims{i.graph.input_count(), i.graph.output_count(), s, s};
                        },
                        [](const SodWithSourceInstance& i) {
                          auto s = i.graph.size();
                          return InstanceDims{i.graph.input_count(), i.graph.output_count(), s, s + i.source.size()};
                        },
                        [](const EolInstance& i) {
                          auto s = i.successor.size() + i.predecessor.size();
                          return InstanceDims{i.successor.input_count(),
                                              i.successor.output_count() + i.predecessor.output_count(), s, s};
                        },
                        [](const SvlInstance& i) {
                          return InstanceDims{i.successor.width(), i.successor.width(), 0, 0};
                        },
                    },
                    inst);
}

bool well_formed(const ProblemInstance& inst) {
  try {
    return std::visit(
        overloaded{
            [](const IterInstance& i) {
              const auto& s = i.successor;
              if (!square(s)) return false;
              auto z = BitString::zeros(s.input_count());
              return evaluate(s, z) > z;
            },
            [](const IterWithSourceInstance& i) {
              const auto& s = i.successor;
              if (!square(s) || i.source.size() != s.input_count()) return false;
              return evaluate(s, i.source) > i.source;
            },
            [](const SodInstance& i) {
              const auto n = i.graph.input_count();
              if (i.value_bits == 0 || i.graph.output_count() != n + i.value_bits) return false;
              auto z = BitString::zeros(n);
              return evaluate(i.graph, z).slice(0, n) != z;
            },
            [](const SodWithSourceInstance& i) {
              const auto n = i.graph.input_count();
              if (i.value_bits == 0 || i.graph.output_count() != n + i.value_bits || i.source.size() != n)
                return false;
              return evaluate(i.graph, i.source).slice(0, n) != i.source;
            },
            [](const EolInstance& i) {
              if (!square(i.successor) || !square(i.predecessor) ||
                  i.successor.input_count() != i.predecessor.input_count())
                return false;
              auto z = BitString::zeros(i.successor.input_count());
              return evaluate(i.successor, z) != z && evaluate(i.predecessor, z) == z;
            },
            [](const SvlInstance& i) {
              return i.target >= 1 && i.source.size() == i.successor.width() && i.verifier &&
                     i.verifier(i.source, PathIndex(1));
            },
        },
        inst);
  } catch (const ArityError&) {
    return false;
  }
}

bool verify_solution(const ProblemInstance& inst, const BitString& v) {
  expect_width(v, dimension(inst));
  return std::visit(overloaded{
                        [&](const IterInstance& i) { return iter_solution(i.successor, v); },
                        [&](const IterWithSourceInstance& i) { return iter_solution(i.successor, v); },
                        [&](const SodInstance& i) { return sod_solution(i.graph, i.value_bits, v); },
                        [&](const SodWithSourceInstance& i) { return sod_solution(i.graph, i.value_bits, v); },
                        [&](const EolInstance& i) {
                          auto next = step(i.successor, v);
                          if (evaluate(i.predecessor, next) != v) return true; // v has no outgoing edge
                          if (v.is_zero()) return false;
                          return step(i.successor, evaluate(i.predecessor, v)) != v; // no incoming edge
                        },
                        [&](const SvlInstance& i) { return i.verifier(v, i.target); },
                    },
                    inst);
}

bool verify_solution(const ImplicitSodInstance& inst, const BitString& v) {
  expect_width(v, inst.successor.width());
  auto u = inst.successor(v);
  if (u == v) return false;
  auto w = inst.successor(u);
  if (w == u) return true;
  return inst.valuation(u) <= inst.valuation(v);
}

} // namespace tfnp
