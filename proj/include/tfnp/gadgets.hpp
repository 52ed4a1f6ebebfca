#pragma once

#include "tfnp/circuit.hpp"

#include <optional>
#include <span>

namespace tfnp::gadgets {

/// A wire during gadget construction: either a known constant or a gate.
/// Building with literals folds hardcoded values away instead of emitting
/// CONST gates.
struct Lit {
  std::optional<bool> constant;
  GateId id = 0;

  static Lit of(GateId g) { return {std::nullopt, g}; }
  static Lit of(bool v) { return {v, 0}; }
};

/// Literal for an existing gate; CONST gates become known constants.
Lit wire(const Circuit& c, GateId g);

Lit lit_not(Circuit& c, Lit a);
Lit lit_and(Circuit& c, Lit a, Lit b);
Lit lit_or(Circuit& c, Lit a, Lit b);
/// sel ? if_true : if_false
Lit lit_mux(Circuit& c, Lit sel, Lit if_true, Lit if_false);
GateId materialize(Circuit& c, Lit l);

/// 1 iff every bit is 0.
Lit all_zero(Circuit& c, std::span<const GateId> bits);

/// 1 iff bits == value (compare-to-constant).
Lit equals_constant(Circuit& c, std::span<const GateId> bits, const BitString& value);

/// 1 iff bits, read as an unsigned number, is >= threshold.
Lit at_least_constant(Circuit& c, std::span<const GateId> bits, const BitString& threshold);

/// 1 iff a > b lexicographically (equal widths).
Lit greater_than(Circuit& c, std::span<const GateId> a, std::span<const GateId> b);

/// C(r(x)) where r(match) = target and r(x) = x otherwise.
Circuit redirect_on_match(const Circuit& c, const BitString& match, const BitString& target);

/// x == match ? value : C(x).
Circuit override_on_match(const Circuit& c, const BitString& match, const BitString& value);

/// Outputs of C restricted to [first, first+count).
std::vector<GateId> output_range(const Circuit& c, std::size_t first, std::size_t count);

/// INPUT gates 0..n-1, created if absent.
std::vector<GateId> inputs_of(Circuit& c);

} // namespace tfnp::gadgets
