#pragma once

#include "tfnp/bitstring.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tfnp {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { input, constant, negation, conjunction, disjunction };

/// One node of a circuit. `a` holds the input index for `input` gates and the
/// value for `constant` gates; otherwise `a`/`b` reference earlier gates.
struct Gate {
  GateKind kind = GateKind::constant;
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  std::size_t fanin() const noexcept {
    switch (kind) {
    case GateKind::negation: return 1;
    case GateKind::conjunction:
    case GateKind::disjunction: return 2;
    default: return 0;
    }
  }
  bool is_logic() const noexcept { return fanin() > 0; }
  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Acyclic Boolean circuit over {INPUT, CONST, NOT, AND, OR}.
///
/// Gates are stored in topological order: every reference points to a
/// strictly earlier gate, which the builder methods enforce.
class Circuit {
public:
  Circuit() = default;
  explicit Circuit(std::size_t inputs, std::string name = "c") : inputs_(inputs), name_(std::move(name)) {}

  std::size_t input_count() const noexcept { return inputs_; }
  std::size_t output_count() const noexcept { return outputs_.size(); }
  std::size_t gate_count() const noexcept { return gates_.size(); }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const Gate& gate(GateId g) const { return gates_.at(g); }
  const std::vector<GateId>& outputs() const noexcept { return outputs_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  GateId add_input(std::uint32_t k);
  GateId add_constant(bool value);
  GateId add_not(GateId a);
  GateId add_and(GateId a, GateId b);
  GateId add_or(GateId a, GateId b);
  GateId add_gate(const Gate& g);

  void add_output(GateId g);
  void set_outputs(std::vector<GateId> outs);

  /// First INPUT gate reading bit k, adding one if none exists.
  GateId input_gate(std::uint32_t k);

  /// Cost measure: logic gates + fan-in wires + output wires + one terminal
  /// wire per primary input. CONST gates are free rails.
  std::size_t size() const noexcept;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.inputs_ == b.inputs_ && a.gates_ == b.gates_ && a.outputs_ == b.outputs_;
  }

private:
  void check_ref(GateId g) const;

  std::size_t inputs_ = 0;
  std::vector<Gate> gates_;
  std::vector<GateId> outputs_;
  std::string name_ = "c";
};

/// Forward evaluation. Throws ArityError when |x| != input_count().
BitString evaluate(const Circuit& c, const BitString& x);

/// Word-level evaluation for circuits with at most 64 inputs and outputs;
/// bit k of the argument is input k counted from the most significant end.
std::uint64_t evaluate_word(const Circuit& c, std::uint64_t x);

/// Layer of every gate: inputs and constants sit in layer 1, every other gate
/// one above its deepest operand.
std::vector<std::uint32_t> layers(const Circuit& c);

/// C^{i->b}: fix input i (0-based) to b, fold the constant forward and drop
/// the input. The result has one input fewer.
Circuit restrict_input(const Circuit& c, std::size_t i, bool b);

/// C_{\j}: drop output j (0-based) and delete gates that no longer reach any
/// output. Requires at least two outputs.
Circuit restrict_output(const Circuit& c, std::size_t j);

/// Delete every non-input gate that does not reach an output.
Circuit prune(const Circuit& c);

/// outer(inner(x)). inner.output_count() must equal outer.input_count().
Circuit compose(const Circuit& outer, const Circuit& inner);

/// Copy c's gates into host with input k wired to inputs[k]; returns the
/// host gates carrying c's outputs.
std::vector<GateId> embed(Circuit& host, const Circuit& c, std::span<const GateId> inputs);

/// Circuit on the shared inputs whose outputs are a's followed by b's.
Circuit stack(const Circuit& a, const Circuit& b);

/// Keep only the listed outputs (in that order) and prune.
Circuit project(const Circuit& c, std::span<const std::size_t> outputs);

/// n-bit identity circuit.
Circuit identity_circuit(std::size_t n);

/// Circuit with n inputs whose outputs are the constant bits of `value`.
Circuit constant_circuit(std::size_t n, const BitString& value);

} // namespace tfnp
