#include "tfnp/reductions.hpp"

#include "tfnp/errors.hpp"
#include "tfnp/gadgets.hpp"

#include <deque>
#include <map>

namespace tfnp {

using namespace gadgets;

namespace {

std::function<BitString(const BitString&)> identity_pullback() {
  return [](const BitString& v) { return v; };
}

Lit equal_wires(Circuit& c, std::span<const GateId> a, std::span<const GateId> b) {
  Lit all = Lit::of(true);
  for (std::size_t k = 0; k < a.size(); ++k) {
    Lit x = wire(c, a[k]), y = wire(c, b[k]);
    Lit differ = lit_or(c, lit_and(c, x, lit_not(c, y)), lit_and(c, lit_not(c, x), y));
    all = lit_and(c, all, lit_not(c, differ));
  }
  return all;
}

} // namespace

ReductionResult iter_to_sod(const IterInstance& inst) {
  const Circuit& s = inst.successor;
  const std::size_t n = s.input_count();
  Circuit g = s;
  auto x = inputs_of(g);
  auto sx = s.outputs();
  Lit up = greater_than(g, sx, x);
  std::vector<GateId> outs;
  for (std::size_t k = 0; k < n; ++k) outs.push_back(materialize(g, lit_mux(g, up, wire(g, sx[k]), Lit::of(x[k]))));
  outs.insert(outs.end(), sx.begin(), sx.end());
  g.set_outputs(std::move(outs));
  g.set_name("G");
  return {SodInstance{prune(g), n}, identity_pullback()};
}

ReductionResult sod_to_iter(const SodInstance& inst) {
  const Circuit& graph = inst.graph;
  const std::size_t n = graph.input_count(), m = inst.value_bits;
  const auto zero = BitString::zeros(n);
  const auto at_zero = evaluate(graph, zero);
  const auto v0 = at_zero.slice(n, m);
  const auto vs0 = evaluate(graph, at_zero.slice(0, n)).slice(n, m);

  if (vs0 < v0) {
    // V drops on the first edge, so 0^n already solves the instance.
    auto trivial = constant_circuit(m + n, BitString::ones(m + n));
    return {IterWithSourceInstance{std::move(trivial), BitString::zeros(m + n)},
            [n](const BitString&) { return BitString::zeros(n); }};
  }

  Circuit t(m + n, "S");
  auto ins = inputs_of(t);
  std::span<const GateId> y(ins.data(), m), x(ins.data() + m, n);
  auto gx = embed(t, graph, x);
  std::span<const GateId> sx(gx.data(), n), vx(gx.data() + n, m);
  auto gsx = embed(t, graph, sx);
  std::span<const GateId> vsx(gsx.data() + n, m);

  Lit on_path = equal_wires(t, y, vx);
  std::vector<GateId> outs;
  for (std::size_t k = 0; k < m; ++k) outs.push_back(materialize(t, lit_mux(t, on_path, wire(t, vsx[k]), Lit::of(y[k]))));
  for (std::size_t k = 0; k < n; ++k) outs.push_back(materialize(t, lit_mux(t, on_path, wire(t, sx[k]), Lit::of(x[k]))));
  t.set_outputs(std::move(outs));

  ProblemInstance original = inst;
  auto pullback = [original, n, m](const BitString& w) {
    auto x = w.slice(m, n);
    if (verify_solution(original, x)) return x;
    auto sx = evaluate(std::get<SodInstance>(original).graph, x).slice(0, n);
    if (verify_solution(original, sx)) return sx;
    throw ContractViolation("sod_to_iter pullback: neither x nor S(x) solves the source instance");
  };
  return {IterWithSourceInstance{prune(t), v0 + zero}, pullback};
}

ReductionResult add_source(const IterInstance& inst) {
  const std::size_t n = inst.successor.input_count();
  return {IterWithSourceInstance{inst.successor, BitString::zeros(n)}, identity_pullback()};
}

ReductionResult add_source(const SodInstance& inst) {
  const std::size_t n = inst.graph.input_count();
  return {SodWithSourceInstance{inst.graph, inst.value_bits, BitString::zeros(n)}, identity_pullback()};
}

ReductionResult drop_source(const IterWithSourceInstance& inst) {
  const std::size_t n = inst.successor.input_count();
  const auto zero = BitString::zeros(n);
  if (inst.source == zero || evaluate(inst.successor, zero) > zero)
    return {IterInstance{inst.successor}, identity_pullback()};
  Circuit s = override_on_match(inst.successor, zero, inst.source);
  s.set_name(inst.successor.name());
  return {IterInstance{std::move(s)}, identity_pullback()};
}

ReductionResult drop_source(const SodWithSourceInstance& inst) {
  const std::size_t n = inst.graph.input_count();
  const auto zero = BitString::zeros(n);
  const auto at_zero = evaluate(inst.graph, zero);
  if (inst.source == zero || at_zero.slice(0, n) != zero)
    return {SodInstance{inst.graph, inst.value_bits}, identity_pullback()};

  Circuit g;
  if (!evaluate(inst.graph, inst.source).slice(0, n).is_zero())
    g = redirect_on_match(inst.graph, zero, inst.source); // 0^n behaves exactly like s
  else
    g = override_on_match(inst.graph, zero, inst.source + at_zero.slice(n, inst.value_bits));
  g.set_name(inst.graph.name());
  auto source = inst.source;
  return {SodInstance{std::move(g), inst.value_bits},
          [source](const BitString& v) { return v.is_zero() ? source : v; }};
}

ReductionResult reduce(const ProblemInstance& inst, ProblemKind to) {
  using K = ProblemKind;
  using Step = ReductionResult (*)(const ProblemInstance&);
  static const std::multimap<K, std::pair<K, Step>> edges{
      {K::iter, {K::sod, [](const ProblemInstance& i) { return iter_to_sod(std::get<IterInstance>(i)); }}},
      {K::iter, {K::iter_with_source, [](const ProblemInstance& i) { return add_source(std::get<IterInstance>(i)); }}},
      {K::iter_with_source,
       {K::iter, [](const ProblemInstance& i) { return drop_source(std::get<IterWithSourceInstance>(i)); }}},
      {K::sod, {K::iter_with_source, [](const ProblemInstance& i) { return sod_to_iter(std::get<SodInstance>(i)); }}},
      {K::sod, {K::sod_with_source, [](const ProblemInstance& i) { return add_source(std::get<SodInstance>(i)); }}},
      {K::sod_with_source,
       {K::sod, [](const ProblemInstance& i) { return drop_source(std::get<SodWithSourceInstance>(i)); }}},
  };

  const K from = kind_of(inst);
  std::map<K, std::pair<K, Step>> came_from;
  std::deque<K> frontier{from};
  while (!frontier.empty() && !came_from.count(to)) {
    K k = frontier.front();
    frontier.pop_front();
    auto [lo, hi] = edges.equal_range(k);
    for (auto it = lo; it != hi; ++it) {
      K next = it->second.first;
      if (next == from || came_from.count(next)) continue;
      came_from[next] = {k, it->second.second};
      frontier.push_back(next);
    }
  }
  if (from == to) return {inst, identity_pullback()};
  if (!came_from.count(to))
    throw std::invalid_argument(std::string("no reduction from ") + std::string(kind_name(from)) + " to " +
                                std::string(kind_name(to)));

  std::vector<Step> chain;
  for (K k = to; k != from; k = came_from[k].first) chain.insert(chain.begin(), came_from[k].second);
  ReductionResult result{inst, identity_pullback()};
  for (Step step : chain) {
    auto next = step(result.target);
    result.target = std::move(next.target);
    result.pullback = [outer = result.pullback, inner = next.pullback](const BitString& w) { return outer(inner(w)); };
  }
  return result;
}

} // namespace tfnp
