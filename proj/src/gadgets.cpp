#include "tfnp/gadgets.hpp"

#include "tfnp/errors.hpp"

namespace tfnp::gadgets {

Lit wire(const Circuit& c, GateId g) {
  const Gate& gate = c.gate(g);
  if (gate.kind == GateKind::constant) return Lit::of(gate.a != 0);
  return Lit::of(g);
}

Lit lit_not(Circuit& c, Lit a) {
  if (a.constant) return Lit::of(!*a.constant);
  return Lit::of(c.add_not(a.id));
}

Lit lit_and(Circuit& c, Lit a, Lit b) {
  if (a.constant) return *a.constant ? b : Lit::of(false);
  if (b.constant) return *b.constant ? a : Lit::of(false);
  if (a.id == b.id) return a;
  return Lit::of(c.add_and(a.id, b.id));
}

Lit lit_or(Circuit& c, Lit a, Lit b) {
  if (a.constant) return *a.constant ? Lit::of(true) : b;
  if (b.constant) return *b.constant ? Lit::of(true) : a;
  if (a.id == b.id) return a;
  return Lit::of(c.add_or(a.id, b.id));
}

Lit lit_mux(Circuit& c, Lit sel, Lit if_true, Lit if_false) {
  if (sel.constant) return *sel.constant ? if_true : if_false;
  if (if_true.constant && if_false.constant) {
    if (*if_true.constant == *if_false.constant) return if_true;
    return *if_true.constant ? sel : lit_not(c, sel);
  }
  if (if_true.constant) return *if_true.constant ? lit_or(c, sel, if_false) : lit_and(c, lit_not(c, sel), if_false);
  if (if_false.constant)
    return *if_false.constant ? lit_or(c, lit_not(c, sel), if_true) : lit_and(c, sel, if_true);
  return lit_or(c, lit_and(c, sel, if_true), lit_and(c, lit_not(c, sel), if_false));
}

GateId materialize(Circuit& c, Lit l) {
  if (!l.constant) return l.id;
  return c.add_constant(*l.constant);
}

Lit all_zero(Circuit& c, std::span<const GateId> bits) {
  Lit any = Lit::of(false);
  for (auto b : bits) any = lit_or(c, any, wire(c, b));
  return lit_not(c, any);
}

Lit equals_constant(Circuit& c, std::span<const GateId> bits, const BitString& value) {
  if (bits.size() != value.size()) throw ArityError("equals_constant: width mismatch");
  Lit ones = Lit::of(true);
  Lit any_zero_bit_set = Lit::of(false);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (value[k])
      ones = lit_and(c, ones, wire(c, bits[k]));
    else
      any_zero_bit_set = lit_or(c, any_zero_bit_set, wire(c, bits[k]));
  }
  return lit_and(c, ones, lit_not(c, any_zero_bit_set));
}

Lit at_least_constant(Circuit& c, std::span<const GateId> bits, const BitString& threshold) {
  if (bits.size() != threshold.size()) throw ArityError("at_least_constant: width mismatch");
  Lit ge = Lit::of(true); // empty suffixes are equal
  for (std::size_t k = bits.size(); k-- > 0;) {
    if (threshold[k])
      ge = lit_and(c, wire(c, bits[k]), ge);
    else
      ge = lit_or(c, wire(c, bits[k]), ge);
  }
  return ge;
}

Lit greater_than(Circuit& c, std::span<const GateId> a, std::span<const GateId> b) {
  if (a.size() != b.size()) throw ArityError("greater_than: width mismatch");
  Lit gt = Lit::of(false);
  for (std::size_t k = a.size(); k-- > 0;) {
    Lit ak = wire(c, a[k]);
    Lit not_bk = lit_not(c, wire(c, b[k]));
    Lit here = lit_and(c, ak, not_bk);
    Lit not_below = lit_or(c, ak, not_bk);
    gt = lit_or(c, here, lit_and(c, not_below, gt));
  }
  return gt;
}

std::vector<GateId> output_range(const Circuit& c, std::size_t first, std::size_t count) {
  if (first + count > c.output_count()) throw IndexError("output_range out of bounds");
  return {c.outputs().begin() + static_cast<std::ptrdiff_t>(first),
          c.outputs().begin() + static_cast<std::ptrdiff_t>(first + count)};
}

std::vector<GateId> inputs_of(Circuit& c) {
  std::vector<GateId> ins(c.input_count());
  for (std::size_t k = 0; k < ins.size(); ++k) ins[k] = c.input_gate(static_cast<std::uint32_t>(k));
  return ins;
}

Circuit redirect_on_match(const Circuit& c, const BitString& match, const BitString& target) {
  const std::size_t n = c.input_count();
  if (match.size() != n || target.size() != n) throw ArityError("redirect_on_match: width mismatch");
  Circuit r(n, "redirect");
  auto x = inputs_of(r);
  Lit hit = equals_constant(r, x, match);
  for (std::size_t k = 0; k < n; ++k) {
    // On a hit x_k == match_k, so only positions where target differs need logic.
    Lit out = Lit::of(x[k]);
    if (target[k] != match[k]) out = target[k] ? lit_or(r, hit, out) : lit_and(r, lit_not(r, hit), out);
    r.add_output(materialize(r, out));
  }
  return compose(c, r);
}

Circuit override_on_match(const Circuit& c, const BitString& match, const BitString& value) {
  if (match.size() != c.input_count() || value.size() != c.output_count())
    throw ArityError("override_on_match: width mismatch");
  Circuit out = c;
  auto x = inputs_of(out);
  Lit hit = equals_constant(out, x, match);
  std::vector<GateId> outs;
  for (std::size_t j = 0; j < c.output_count(); ++j)
    outs.push_back(materialize(out, lit_mux(out, hit, Lit::of(value[j]), wire(out, c.outputs()[j]))));
  out.set_outputs(std::move(outs));
  return prune(out);
}

} // namespace tfnp::gadgets
