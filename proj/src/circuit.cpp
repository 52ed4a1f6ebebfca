#include "tfnp/circuit.hpp"

#include "tfnp/errors.hpp"

#include <algorithm>
#include <optional>

namespace tfnp {

void Circuit::check_ref(GateId g) const {
  if (g >= gates_.size())
    throw IndexError("gate reference g" + std::to_string(g) + " does not point to an earlier gate");
}

GateId Circuit::add_gate(const Gate& g) {
  switch (g.kind) {
  case GateKind::input:
    if (g.a >= inputs_) throw IndexError("input index " + std::to_string(g.a) + " out of range");
    break;
  case GateKind::constant:
    if (g.a > 1) throw std::invalid_argument("constant gate value must be 0 or 1");
    break;
  case GateKind::negation: check_ref(g.a); break;
  case GateKind::conjunction:
  case GateKind::disjunction:
    check_ref(g.a);
    check_ref(g.b);
    break;
  }
  Gate stored = g;
  if (stored.fanin() < 2) stored.b = 0;
  gates_.push_back(stored);
  return static_cast<GateId>(gates_.size() - 1);
}

GateId Circuit::add_input(std::uint32_t k) { return add_gate({GateKind::input, k, 0}); }
GateId Circuit::add_constant(bool value) { return add_gate({GateKind::constant, value ? 1U : 0U, 0}); }
GateId Circuit::add_not(GateId a) { return add_gate({GateKind::negation, a, 0}); }
GateId Circuit::add_and(GateId a, GateId b) { return add_gate({GateKind::conjunction, a, b}); }
GateId Circuit::add_or(GateId a, GateId b) { return add_gate({GateKind::disjunction, a, b}); }

void Circuit::add_output(GateId g) {
  check_ref(g);
  outputs_.push_back(g);
}

void Circuit::set_outputs(std::vector<GateId> outs) {
  for (auto g : outs) check_ref(g);
  outputs_ = std::move(outs);
}

GateId Circuit::input_gate(std::uint32_t k) {
  for (std::size_t g = 0; g < gates_.size(); ++g)
    if (gates_[g].kind == GateKind::input && gates_[g].a == k) return static_cast<GateId>(g);
  return add_input(k);
}

std::size_t Circuit::size() const noexcept {
  std::size_t logic = 0;
  std::size_t wires = outputs_.size() + inputs_;
  for (const auto& g : gates_) {
    if (g.is_logic()) ++logic;
    wires += g.fanin();
  }
  return logic + wires;
}

namespace {

template <class Value>
void forward(const Circuit& c, std::vector<Value>& values, auto&& input_value) {
  const auto& gates = c.gates();
  values.resize(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.kind) {
    case GateKind::input: values[i] = input_value(g.a); break;
    case GateKind::constant: values[i] = static_cast<Value>(g.a); break;
    case GateKind::negation: values[i] = !values[g.a]; break;
    case GateKind::conjunction: values[i] = values[g.a] && values[g.b]; break;
    case GateKind::disjunction: values[i] = values[g.a] || values[g.b]; break;
    }
  }
}

} // namespace

BitString evaluate(const Circuit& c, const BitString& x) {
  if (x.size() != c.input_count())
    throw ArityError("circuit expects " + std::to_string(c.input_count()) + " input bits, got " +
                     std::to_string(x.size()));
  std::vector<std::uint8_t> values;
  forward(c, values, [&](std::uint32_t k) -> std::uint8_t { return x[k] ? 1 : 0; });
  BitString out(c.output_count());
  for (std::size_t j = 0; j < c.output_count(); ++j) out.set(j, values[c.outputs()[j]] != 0);
  return out;
}

std::uint64_t evaluate_word(const Circuit& c, std::uint64_t x) {
  const std::size_t n = c.input_count();
  const std::size_t m = c.output_count();
  if (n > 64 || m > 64) throw ArityError("evaluate_word needs at most 64 inputs and outputs");
  thread_local std::vector<std::uint8_t> values;
  forward(c, values, [&](std::uint32_t k) -> std::uint8_t { return (x >> (n - 1 - k)) & 1U; });
  std::uint64_t out = 0;
  for (auto g : c.outputs()) out = (out << 1) | values[g];
  return out;
}

std::vector<std::uint32_t> layers(const Circuit& c) {
  const auto& gates = c.gates();
  std::vector<std::uint32_t> layer(gates.size(), 1);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (g.fanin() >= 1) layer[i] = layer[g.a] + 1;
    if (g.fanin() == 2) layer[i] = std::max(layer[i], layer[g.b] + 1);
  }
  return layer;
}

namespace {

/// Where an old gate ended up after propagation: a folded constant or a gate
/// of the new circuit.
struct Slot {
  std::optional<bool> constant;
  GateId id = 0;
};

GateId materialize(Circuit& out, const Slot& s, std::optional<GateId> (&rails)[2]) {
  if (!s.constant) return s.id;
  auto& rail = rails[*s.constant ? 1 : 0];
  if (!rail) rail = out.add_constant(*s.constant);
  return *rail;
}

} // namespace

Circuit restrict_input(const Circuit& c, std::size_t i, bool b) {
  if (i >= c.input_count())
    throw IndexError("input index " + std::to_string(i) + " out of range for " +
                     std::to_string(c.input_count()) + " inputs");
  const auto& gates = c.gates();
  const auto layer = layers(c);
  std::uint32_t depth = 0;
  for (auto l : layer) depth = std::max(depth, l);
  std::vector<std::vector<GateId>> by_layer(depth + 1);
  for (std::size_t g = 0; g < gates.size(); ++g) by_layer[layer[g]].push_back(static_cast<GateId>(g));

  Circuit out(c.input_count() - 1, c.name());
  std::vector<Slot> slot(gates.size());
  for (const auto& bucket : by_layer) {
    for (GateId g : bucket) {
      const Gate& gate = gates[g];
      Slot& s = slot[g];
      switch (gate.kind) {
      case GateKind::input:
        if (gate.a == i)
          s.constant = b;
        else
          s.id = out.add_input(gate.a > i ? gate.a - 1 : gate.a);
        break;
      case GateKind::constant: s.constant = gate.a != 0; break;
      case GateKind::negation:
        if (slot[gate.a].constant)
          s.constant = !*slot[gate.a].constant;
        else
          s.id = out.add_not(slot[gate.a].id);
        break;
      case GateKind::conjunction:
      case GateKind::disjunction: {
        const bool is_and = gate.kind == GateKind::conjunction;
        const Slot& l = slot[gate.a];
        const Slot& r = slot[gate.b];
        if (l.constant && r.constant) {
          s.constant = is_and ? (*l.constant && *r.constant) : (*l.constant || *r.constant);
        } else if (l.constant || r.constant) {
          const bool value = l.constant ? *l.constant : *r.constant;
          const Slot& other = l.constant ? r : l;
          // AND: 0 dominates, 1 passes through. OR: 1 dominates, 0 passes through.
          if (value != is_and)
            s.constant = value;
          else
            s = other;
        } else {
          s.id = is_and ? out.add_and(l.id, r.id) : out.add_or(l.id, r.id);
        }
        break;
      }
      }
    }
  }
  std::optional<GateId> rails[2];
  std::vector<GateId> outs;
  outs.reserve(c.output_count());
  for (auto o : c.outputs()) outs.push_back(materialize(out, slot[o], rails));
  out.set_outputs(std::move(outs));
  return out;
}

Circuit prune(const Circuit& c) {
  const auto& gates = c.gates();
  std::vector<bool> live(gates.size(), false);
  for (auto o : c.outputs()) live[o] = true;
  for (std::size_t g = gates.size(); g-- > 0;) {
    if (gates[g].kind == GateKind::input) live[g] = true;
    if (!live[g]) continue;
    if (gates[g].fanin() >= 1) live[gates[g].a] = true;
    if (gates[g].fanin() == 2) live[gates[g].b] = true;
  }
  Circuit out(c.input_count(), c.name());
  std::vector<GateId> remap(gates.size(), 0);
  for (std::size_t g = 0; g < gates.size(); ++g) {
    if (!live[g]) continue;
    Gate copy = gates[g];
    if (copy.fanin() >= 1) copy.a = remap[copy.a];
    if (copy.fanin() == 2) copy.b = remap[copy.b];
    remap[g] = out.add_gate(copy);
  }
  std::vector<GateId> outs;
  for (auto o : c.outputs()) outs.push_back(remap[o]);
  out.set_outputs(std::move(outs));
  return out;
}

Circuit restrict_output(const Circuit& c, std::size_t j) {
  if (c.output_count() < 2) throw IndexError("cannot restrict the only output of a circuit");
  if (j >= c.output_count())
    throw IndexError("output index " + std::to_string(j) + " out of range for " +
                     std::to_string(c.output_count()) + " outputs");
  Circuit tmp = c;
  auto outs = c.outputs();
  outs.erase(outs.begin() + static_cast<std::ptrdiff_t>(j));
  tmp.set_outputs(std::move(outs));
  return prune(tmp);
}

namespace {

/// Append the gates of `src` to `dst`, routing src's INPUT k to `inputs[k]`.
/// Returns the remap table.
std::vector<GateId> splice(Circuit& dst, const Circuit& src, std::span<const GateId> inputs) {
  std::vector<GateId> remap(src.gate_count(), 0);
  for (std::size_t g = 0; g < src.gate_count(); ++g) {
    Gate copy = src.gates()[g];
    if (copy.kind == GateKind::input) {
      remap[g] = inputs[copy.a];
      continue;
    }
    if (copy.fanin() >= 1) copy.a = remap[copy.a];
    if (copy.fanin() == 2) copy.b = remap[copy.b];
    remap[g] = dst.add_gate(copy);
  }
  return remap;
}

std::vector<GateId> input_gates(Circuit& c) {
  std::vector<GateId> ins(c.input_count());
  for (std::size_t k = 0; k < c.input_count(); ++k) ins[k] = c.input_gate(static_cast<std::uint32_t>(k));
  return ins;
}

} // namespace

std::vector<GateId> embed(Circuit& host, const Circuit& c, std::span<const GateId> inputs) {
  if (inputs.size() != c.input_count()) throw ArityError("embed: input count mismatch");
  auto remap = splice(host, c, inputs);
  std::vector<GateId> outs;
  for (auto o : c.outputs()) outs.push_back(remap[o]);
  return outs;
}

Circuit compose(const Circuit& outer, const Circuit& inner) {
  if (inner.output_count() != outer.input_count())
    throw ArityError("compose: inner produces " + std::to_string(inner.output_count()) +
                     " bits, outer consumes " + std::to_string(outer.input_count()));
  Circuit out(inner.input_count(), outer.name());
  auto ins = input_gates(out);
  auto inner_map = splice(out, inner, ins);
  std::vector<GateId> mid;
  for (auto o : inner.outputs()) mid.push_back(inner_map[o]);
  auto outer_map = splice(out, outer, mid);
  std::vector<GateId> outs;
  for (auto o : outer.outputs()) outs.push_back(outer_map[o]);
  out.set_outputs(std::move(outs));
  return prune(out);
}

Circuit stack(const Circuit& a, const Circuit& b) {
  if (a.input_count() != b.input_count()) throw ArityError("stack: circuits read different input widths");
  Circuit out(a.input_count(), a.name());
  auto ins = input_gates(out);
  auto am = splice(out, a, ins);
  auto bm = splice(out, b, ins);
  std::vector<GateId> outs;
  for (auto o : a.outputs()) outs.push_back(am[o]);
  for (auto o : b.outputs()) outs.push_back(bm[o]);
  out.set_outputs(std::move(outs));
  return out;
}

Circuit project(const Circuit& c, std::span<const std::size_t> outputs) {
  Circuit tmp = c;
  std::vector<GateId> outs;
  for (auto j : outputs) {
    if (j >= c.output_count()) throw IndexError("project: output index out of range");
    outs.push_back(c.outputs()[j]);
  }
  tmp.set_outputs(std::move(outs));
  return prune(tmp);
}

Circuit identity_circuit(std::size_t n) {
  Circuit c(n, "id");
  for (std::size_t k = 0; k < n; ++k) c.add_output(c.add_input(static_cast<std::uint32_t>(k)));
  return c;
}

Circuit constant_circuit(std::size_t n, const BitString& value) {
  Circuit c(n, "const");
  for (std::size_t k = 0; k < n; ++k) c.add_input(static_cast<std::uint32_t>(k));
  std::optional<GateId> rails[2];
  for (std::size_t j = 0; j < value.size(); ++j) {
    auto& rail = rails[value[j] ? 1 : 0];
    if (!rail) rail = c.add_constant(value[j]);
    c.add_output(*rail);
  }
  return c;
}

} // namespace tfnp
