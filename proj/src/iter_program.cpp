#include "tfnp/iter_program.hpp"

#include "tfnp/dsr.hpp"
#include "tfnp/errors.hpp"
#include "tfnp/solvers.hpp"

#include <bit>

namespace tfnp {

namespace {

constexpr std::size_t kind_bits = 3;

struct NeedQuery {
  IterWithSourceInstance query;
};

// Serves recorded answers in order and stops the algorithm at the first
// query without one.
class ReplayOracle : public Oracle {
public:
  explicit ReplayOracle(std::span<const Answered> answered) : answered_(answered) {}
  BitString solve(const ProblemInstance& query) override {
    if (used_ < answered_.size()) return answered_[used_++].solution;
    throw NeedQuery{std::get<IterWithSourceInstance>(query)};
  }

private:
  std::span<const Answered> answered_;
  std::size_t used_ = 0;
};

void put(BitString& out, std::size_t& at, std::uint64_t value, std::size_t width) {
  for (std::size_t k = 0; k < width; ++k) out.set(at + k, (value >> (width - 1 - k)) & 1U);
  at += width;
}

std::uint64_t take(const BitString& in, std::size_t& at, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < width; ++k) v = (v << 1) | (in[at + k] ? 1U : 0U);
  at += width;
  return v;
}

} // namespace

IterProgram::IterProgram(const IterWithSourceInstance& root)
    : IterProgram(root.successor.input_count(), root.successor.gate_count()) {}

IterProgram::IterProgram(std::size_t root_dimension, std::size_t root_gate_capacity)
    : n_root_(root_dimension), g_root_(root_gate_capacity) {
  if (n_root_ == 0) throw ArityError("root dimension must be positive");
  ref_bits_ = static_cast<std::size_t>(std::bit_width(std::max(gate_capacity(1), n_root_)));
}

std::size_t IterProgram::gate_capacity(std::size_t dim) const {
  if (dim == 0 || dim > n_root_) throw IndexError("dimension outside 1.." + std::to_string(n_root_));
  return g_root_ + (n_root_ - dim) * (n_root_ + 1);
}

std::size_t IterProgram::instance_width(std::size_t dim) const {
  return (ref_bits_ + 1) + gate_capacity(dim) * (kind_bits + 2 * ref_bits_) + dim * (ref_bits_ + 1);
}

BitString IterProgram::encode(const IterWithSourceInstance& inst) const {
  const Circuit& c = inst.successor;
  const std::size_t d = c.input_count();
  if (c.output_count() != d || inst.source.size() != d) throw ArityError("encode: not an ITER-with-source instance");
  const std::size_t capacity = gate_capacity(d);
  if (c.gate_count() > capacity)
    throw SizingError("circuit with " + std::to_string(c.gate_count()) + " gates exceeds the " +
                      std::to_string(capacity) + " slots of dimension " + std::to_string(d));
  BitString out = BitString::zeros(instance_width(d));
  std::size_t at = 0;
  put(out, at, c.gate_count(), ref_bits_ + 1);
  for (std::size_t g = 0; g < capacity; ++g) {
    if (g >= c.gate_count()) {
      at += kind_bits + 2 * ref_bits_;
      continue;
    }
    const Gate& gate = c.gates()[g];
    put(out, at, static_cast<std::uint64_t>(gate.kind), kind_bits);
    put(out, at, gate.a, ref_bits_);
    put(out, at, gate.fanin() == 2 ? gate.b : 0, ref_bits_);
  }
  for (auto o : c.outputs()) put(out, at, o, ref_bits_);
  for (std::size_t k = 0; k < d; ++k) out.set(at++, inst.source[k]);
  return out;
}

std::optional<IterWithSourceInstance> IterProgram::decode(const BitString& x) const {
  std::size_t d = 0;
  for (std::size_t dim = 1; dim <= n_root_; ++dim)
    if (instance_width(dim) == x.size()) d = dim;
  if (d == 0) return std::nullopt;

  const std::size_t capacity = gate_capacity(d);
  std::size_t at = 0;
  const std::uint64_t count = take(x, at, ref_bits_ + 1);
  if (count > capacity) return std::nullopt;
  Circuit c(d, "S");
  try {
    for (std::size_t g = 0; g < capacity; ++g) {
      const std::uint64_t kind = take(x, at, kind_bits);
      const std::uint64_t a = take(x, at, ref_bits_);
      const std::uint64_t b = take(x, at, ref_bits_);
      if (g >= count) {
        if (kind || a || b) return std::nullopt;
        continue;
      }
      if (kind > static_cast<std::uint64_t>(GateKind::disjunction)) return std::nullopt;
      Gate gate{static_cast<GateKind>(kind), static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
      if (gate.fanin() < 2 && b != 0) return std::nullopt;
      if (gate.kind == GateKind::input && a >= d) return std::nullopt;
      if (gate.kind == GateKind::constant && a > 1) return std::nullopt;
      c.add_gate(gate);
    }
    for (std::size_t j = 0; j < d; ++j) {
      const std::uint64_t o = take(x, at, ref_bits_);
      if (o >= count) return std::nullopt;
      c.add_output(static_cast<GateId>(o));
    }
  } catch (const IndexError&) {
    return std::nullopt;
  }
  return IterWithSourceInstance{std::move(c), x.slice(at, d)};
}

BitString IterProgram::next_query(const BitString& x, std::span<const Answered> answered) const {
  auto inst = decode(x);
  if (!inst) throw ContractViolation("next_query: malformed instance encoding");
  const std::size_t d = inst->successor.input_count();
  if (d < 2) throw ContractViolation("dimension-1 instances make no queries");
  ReplayOracle replay(answered);
  try {
    dsr_iter_with_source(*inst, replay);
  } catch (const NeedQuery& need) {
    return encode(need.query);
  }
  return encode(IterWithSourceInstance{constant_circuit(d - 1, BitString::ones(d - 1)), BitString::zeros(d - 1)});
}

BitString IterProgram::finalize(const BitString& x, std::span<const Answered> answered) const {
  auto inst = decode(x);
  if (!inst) throw ContractViolation("finalize: malformed instance encoding");
  if (inst->successor.input_count() == 1) return solve_exhaustive(*inst);
  ReplayOracle replay(answered);
  try {
    return dsr_iter_with_source(*inst, replay);
  } catch (const NeedQuery&) {
    throw ContractViolation("finalize called before every query was answered");
  }
}

bool IterProgram::verify(const BitString& x, const BitString& y) const {
  auto inst = decode(x);
  if (!inst || y.size() != inst->successor.input_count()) return false;
  return verify_solution(*inst, y);
}

} // namespace tfnp
