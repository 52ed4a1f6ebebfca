#include "tfnp/dsr.hpp"

#include "tfnp/errors.hpp"
#include "tfnp/gadgets.hpp"
#include "tfnp/solvers.hpp"

#include <sstream>

namespace tfnp {

using namespace gadgets;

namespace {

const BitString one_bit = BitString::parse("1");
const BitString zero_bit = BitString::parse("0");

BitString step(const Circuit& s, const BitString& x) { return evaluate(s, x); }

BitString expect_solution(const ProblemInstance& inst, BitString v, const char* where) {
  if (!verify_solution(inst, v))
    throw ContractViolation(std::string(where) + ": derived candidate " + v.to_string() + " is not a solution");
  return v;
}

std::size_t power(std::size_t base, unsigned exponent) {
  std::size_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

struct Split {
  BitString next;
  BitString value;
};

Split at(const Circuit& graph, std::size_t value_bits, const BitString& x) {
  auto out = evaluate(graph, x);
  const std::size_t n = graph.input_count();
  return {out.slice(0, n), out.slice(n, value_bits)};
}

// V has a single bit: either s solves the instance, or V(s) = 0 < V(S(s)) = 1
// and S(s) is a sink or cannot climb further.
BitString sod_single_value_bit(const ProblemInstance& self, const Circuit& graph, const BitString& s) {
  if (verify_solution(self, s)) return s;
  return expect_solution(self, at(graph, 1, s).next, "sink-of-dag base case");
}

} // namespace

BitString checked_query(Oracle& oracle, const ProblemInstance& query) {
  BitString answer = oracle.solve(query);
  if (answer.size() != dimension(query) || !verify_solution(query, answer))
    throw ContractViolation("oracle answered " + answer.to_string() + ", which does not solve the " +
                            std::string(kind_name(kind_of(query))) + " query");
  return answer;
}

Circuit lower_half(const Circuit& successor) {
  Circuit c = restrict_output(restrict_input(successor, 0, false), 0);
  c.set_name(successor.name());
  return c;
}

Circuit upper_half(const Circuit& successor) {
  Circuit c = restrict_input(successor, 0, true);
  const auto outs = c.outputs();
  Lit lead = wire(c, outs[0]);
  std::vector<GateId> masked;
  for (std::size_t k = 1; k < outs.size(); ++k) masked.push_back(materialize(c, lit_and(c, lead, wire(c, outs[k]))));
  c.set_outputs(std::move(masked));
  c = prune(c);
  c.set_name(successor.name());
  return c;
}

Circuit freeze_below(const Circuit& graph, std::size_t value_bits, const BitString& threshold) {
  const std::size_t n = graph.input_count();
  Circuit c = graph;
  auto x = inputs_of(c);
  auto s = output_range(graph, 0, n);
  auto v = output_range(graph, n, value_bits);
  Lit climbing = at_least_constant(c, v, threshold);
  std::vector<GateId> outs;
  for (std::size_t k = 0; k < n; ++k) outs.push_back(materialize(c, lit_mux(c, climbing, wire(c, s[k]), Lit::of(x[k]))));
  outs.insert(outs.end(), v.begin() + 1, v.end());
  c.set_outputs(std::move(outs));
  c = prune(c);
  c.set_name(graph.name());
  return c;
}

BitString dsr_iter_with_source(const IterWithSourceInstance& inst, Oracle& oracle) {
  const Circuit& S = inst.successor;
  const BitString& s = inst.source;
  const ProblemInstance self = inst;
  const std::size_t n = S.input_count();
  if (!well_formed(self)) throw MalformedInstance("ITER-with-source instance requires S(s) > s");
  if (n == 1) return solve_exhaustive(self);

  auto finish_upper = [&](const BitString& sigma) {
    BitString z = checked_query(oracle, IterWithSourceInstance{upper_half(S), sigma.without(0)});
    return expect_solution(self, one_bit + z, "dsr_iter_with_source");
  };
  if (s[0]) return finish_upper(s);

  BitString sigma;
  BitString next = step(S, s);
  if (next[0]) {
    if (verify_solution(self, s)) return s;
    sigma = next;
  } else {
    BitString w = checked_query(oracle, IterWithSourceInstance{lower_half(S), s.without(0)});
    BitString v = zero_bit + w;
    if (verify_solution(self, v)) return v;
    BitString u = step(S, v);
    if (u[0]) {
      sigma = u;
    } else {
      if (verify_solution(self, u)) return u;
      sigma = step(S, u);
    }
  }
  if (!sigma[0] || !(step(S, sigma) > sigma))
    throw ContractViolation("dsr_iter_with_source: no climbing point in the upper half");
  return finish_upper(sigma);
}

BitString dsr_iter(const IterInstance& inst, Oracle& oracle) {
  const Circuit& S = inst.successor;
  const ProblemInstance self = inst;
  const std::size_t n = S.input_count();
  if (!well_formed(self)) throw MalformedInstance("ITER instance requires S(0) > 0");
  if (n == 1) return solve_exhaustive(self);

  const BitString zero = BitString::zeros(n);
  BitString sigma;
  BitString next = step(S, zero);
  if (next[0]) {
    if (verify_solution(self, zero)) return zero;
    sigma = next;
  } else {
    BitString w = checked_query(oracle, IterInstance{lower_half(S)});
    BitString v = zero_bit + w;
    if (verify_solution(self, v)) return v;
    BitString u = step(S, v);
    if (u[0]) {
      sigma = u;
    } else {
      if (verify_solution(self, u)) return u;
      sigma = step(S, u);
    }
  }
  if (!sigma[0] || !(step(S, sigma) > sigma)) throw ContractViolation("dsr_iter: no climbing point in the upper half");

  const BitString tail = sigma.without(0);
  Circuit upper = redirect_on_match(upper_half(S), BitString::zeros(n - 1), tail);
  upper.set_name(S.name());
  BitString z = checked_query(oracle, IterInstance{std::move(upper)});
  if (z.is_zero()) return expect_solution(self, sigma, "dsr_iter");
  return expect_solution(self, one_bit + z, "dsr_iter");
}

BitString dsr_sod_with_source(const SodWithSourceInstance& inst, Oracle& oracle) {
  const Circuit& G = inst.graph;
  const std::size_t n = G.input_count(), m = inst.value_bits;
  const ProblemInstance self = inst;
  if (!well_formed(self)) throw MalformedInstance("Sink-of-DAG-with-source instance requires S(s) != s");
  if (m == 1) return sod_single_value_bit(self, G, inst.source);

  BitString w = checked_query(oracle, SodWithSourceInstance{restrict_output(G, n), m - 1, inst.source});
  if (verify_solution(self, w)) return w;
  BitString sigma = at(G, m, w).next;
  if (verify_solution(self, sigma)) return sigma;
  const BitString threshold = at(G, m, sigma).value;
  if (!threshold[0]) throw ContractViolation("dsr_sod_with_source: false solution did not reach the upper value half");

  BitString z = checked_query(oracle, SodWithSourceInstance{freeze_below(G, m, threshold), m - 1, sigma});
  return expect_solution(self, z, "dsr_sod_with_source");
}

BitString dsr_sod(const SodInstance& inst, Oracle& oracle) {
  const Circuit& G = inst.graph;
  const std::size_t n = G.input_count(), m = inst.value_bits;
  const ProblemInstance self = inst;
  if (!well_formed(self)) throw MalformedInstance("Sink-of-DAG instance requires S(0) != 0");
  const BitString zero = BitString::zeros(n);
  if (m == 1) return sod_single_value_bit(self, G, zero);

  BitString w = checked_query(oracle, SodInstance{restrict_output(G, n), m - 1});
  if (verify_solution(self, w)) return w;
  BitString sigma = at(G, m, w).next;
  if (verify_solution(self, sigma)) return sigma;
  BitString threshold = at(G, m, sigma).value;
  if (!threshold[0]) throw ContractViolation("dsr_sod: false solution did not reach the upper value half");

  // 0^n already climbs at least as high as sigma: start the frozen walk there.
  const BitString v0 = at(G, m, zero).value;
  if (v0 >= threshold) {
    BitString z = checked_query(oracle, SodInstance{freeze_below(G, m, v0), m - 1});
    return expect_solution(self, z, "dsr_sod");
  }

  Circuit frozen = redirect_on_match(freeze_below(G, m, threshold), zero, sigma);
  frozen.set_name(G.name());
  BitString z = checked_query(oracle, SodInstance{std::move(frozen), m - 1});
  if (z.is_zero()) return expect_solution(self, sigma, "dsr_sod");
  return expect_solution(self, z, "dsr_sod");
}

BitString dsr_solve(const ProblemInstance& inst, Oracle& oracle) {
  if (auto* i = std::get_if<IterInstance>(&inst)) return dsr_iter(*i, oracle);
  if (auto* i = std::get_if<IterWithSourceInstance>(&inst)) return dsr_iter_with_source(*i, oracle);
  if (auto* i = std::get_if<SodInstance>(&inst)) return dsr_sod(*i, oracle);
  if (auto* i = std::get_if<SodWithSourceInstance>(&inst)) return dsr_sod_with_source(*i, oracle);
  throw std::invalid_argument(std::string("no downward self-reduction for ") + std::string(kind_name(kind_of(inst))));
}

BitString SelfOracle::solve(const ProblemInstance& query) {
  if (dimension(query) <= base_) return solve_exhaustive(query);
  return dsr_solve(query, recursion_ ? *recursion_ : *this);
}

BitString AdversarialOracle::solve(const ProblemInstance& query) {
  auto all = all_solutions(query);
  if (all.empty()) throw MalformedInstance("query has no solution");
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return all[pick(rng_)];
}

std::string_view mode_name(MonitorMode mode) {
  switch (mode) {
  case MonitorMode::dsr: return "dsr";
  case MonitorMode::circuit_dsr: return "circuit-dsr";
  case MonitorMode::poly_blowup: return "poly-blowup";
  }
  return "?";
}

std::optional<MonitorMode> parse_mode(std::string_view name) {
  for (auto m : {MonitorMode::dsr, MonitorMode::circuit_dsr, MonitorMode::poly_blowup})
    if (mode_name(m) == name) return m;
  return std::nullopt;
}

void Monitor::set_root(const ProblemInstance& root) {
  stack_.assign(1, Frame{dims_of(root), 0});
  trace_.clear();
  max_depth_ = 0;
}

void Monitor::check(const Frame& parent, const InstanceDims& q) const {
  const auto& p = parent.dims;
  std::ostringstream why;
  if (parent.queries >= 2) why << "third query from one instance";
  if (mode_ == MonitorMode::dsr) {
    if (q.encoded_size >= p.encoded_size)
      why << "query size " << q.encoded_size << " is not below parent size " << p.encoded_size;
  } else {
    if (q.inputs > p.inputs || q.outputs > p.outputs || q.inputs + q.outputs >= p.inputs + p.outputs)
      why << "query (n=" << q.inputs << ", m=" << q.outputs << ") does not shrink parent (n=" << p.inputs
          << ", m=" << p.outputs << ")";
    if (mode_ == MonitorMode::poly_blowup) {
      const std::size_t allowed = p.circuit_size + power(p.inputs * p.outputs, exponent_);
      if (q.circuit_size > allowed)
        why << "query size " << q.circuit_size << " exceeds parent size " << p.circuit_size << " + ("
            << p.inputs << "*" << p.outputs << ")^" << exponent_ << " = " << allowed;
    }
  }
  if (!why.str().empty()) throw MonitorViolation(std::string(mode_name(mode_)) + ": " + why.str());
}

BitString Monitor::solve(const ProblemInstance& query) {
  if (stack_.empty()) throw std::logic_error("Monitor::set_root must be called before solving");
  const InstanceDims dims = dims_of(query);
  check(stack_.back(), dims);
  ++stack_.back().queries;
  stack_.push_back(Frame{dims, 0});
  const std::size_t depth = stack_.size() - 1;
  max_depth_ = std::max(max_depth_, depth);
  struct Pop {
    std::vector<Frame>& s;
    ~Pop() { s.pop_back(); }
  } pop{stack_};
  BitString answer = inner_.solve(query);
  trace_.push_back(TraceEntry{depth, kind_of(query), dims, answer});
  return answer;
}

std::optional<Fault> parse_fault(std::string_view name) {
  if (name == "none") return Fault::none;
  if (name == "echo-query") return Fault::echo_query;
  if (name == "pad-query") return Fault::pad_query;
  return std::nullopt;
}

ProblemInstance pad_instance(const ProblemInstance& inst, std::size_t pairs) {
  auto pad = [pairs](Circuit c) {
    auto outs = c.outputs();
    GateId g = outs.at(0);
    for (std::size_t i = 0; i < pairs; ++i) g = c.add_not(c.add_not(g));
    outs[0] = g;
    c.set_outputs(std::move(outs));
    return c;
  };
  ProblemInstance out = inst;
  if (auto* i = std::get_if<IterInstance>(&out)) i->successor = pad(i->successor);
  else if (auto* i = std::get_if<IterWithSourceInstance>(&out)) i->successor = pad(i->successor);
  else if (auto* i = std::get_if<SodInstance>(&out)) i->graph = pad(i->graph);
  else if (auto* i = std::get_if<SodWithSourceInstance>(&out)) i->graph = pad(i->graph);
  else if (auto* i = std::get_if<EolInstance>(&out)) i->successor = pad(i->successor);
  return out;
}

BitString FaultyOracle::solve(const ProblemInstance& query) {
  if (fired_ || fault_ == Fault::none) return next_.solve(query);
  fired_ = true;
  if (fault_ == Fault::echo_query) return next_.solve(root_);
  return next_.solve(pad_instance(query, padding_));
}

DsrRun run_dsr(const ProblemInstance& root, MonitorMode mode, unsigned exponent, Fault fault, std::size_t base) {
  SelfOracle self(base);
  Monitor monitor(self, mode, exponent);
  self.recurse_through(&monitor);
  monitor.set_root(root);
  const auto dims = dims_of(root);
  const std::size_t padding = dims.circuit_size + power(dims.inputs * dims.outputs, exponent + 1);
  FaultyOracle top(monitor, fault, root, padding);
  DsrRun run;
  run.solution = dimension(root) <= base ? solve_exhaustive(root) : dsr_solve(root, top);
  if (!verify_solution(root, run.solution)) throw ContractViolation("run_dsr produced a non-solution");
  run.trace = monitor.trace();
  run.max_depth = monitor.max_depth();
  return run;
}

} // namespace tfnp
