#include "tfnp/synthesis.hpp"

#include "tfnp/errors.hpp"
#include "tfnp/gadgets.hpp"

#include <map>
#include <string>

namespace tfnp {

namespace {

class Shannon {
public:
  Shannon(Circuit& c, std::vector<GateId> inputs) : c_(c), inputs_(std::move(inputs)) {}

  gadgets::Lit build(std::size_t var, const std::string& column) {
    if (column.find('1') == std::string::npos) return gadgets::Lit::of(false);
    if (column.find('0') == std::string::npos) return gadgets::Lit::of(true);
    auto key = std::make_pair(var, column);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::size_t half = column.size() / 2;
    auto low = build(var + 1, column.substr(0, half));
    auto high = build(var + 1, column.substr(half));
    gadgets::Lit out;
    if (low.constant == high.constant && (low.constant || low.id == high.id))
      out = low;
    else
      out = gadgets::lit_mux(c_, gadgets::Lit::of(inputs_[var]), high, low);
    memo_.emplace(std::move(key), out);
    return out;
  }

private:
  Circuit& c_;
  std::vector<GateId> inputs_;
  std::map<std::pair<std::size_t, std::string>, gadgets::Lit> memo_;
};

} // namespace

Circuit synthesize(std::size_t n, std::size_t m, std::span<const std::uint64_t> table, std::string name) {
  if (n > 20 || m > 64) throw RefusalError("synthesize: function tables are limited to 20 inputs and 64 outputs");
  if (table.size() != (std::size_t{1} << n)) throw ArityError("synthesize: table must have 2^n entries");
  Circuit c(n, std::move(name));
  auto inputs = gadgets::inputs_of(c);
  Shannon shannon(c, inputs);
  std::vector<GateId> outs;
  std::optional<GateId> rails[2];
  for (std::size_t j = 0; j < m; ++j) {
    std::string column(table.size(), '0');
    for (std::size_t x = 0; x < table.size(); ++x)
      if ((table[x] >> (m - 1 - j)) & 1U) column[x] = '1';
    auto lit = shannon.build(0, column);
    if (lit.constant) {
      auto& rail = rails[*lit.constant ? 1 : 0];
      if (!rail) rail = c.add_constant(*lit.constant);
      outs.push_back(*rail);
    } else {
      outs.push_back(lit.id);
    }
  }
  c.set_outputs(std::move(outs));
  return c;
}

FunctionTable truth_table(const Circuit& c) {
  if (c.input_count() > 20) throw RefusalError("truth_table: too many inputs");
  FunctionTable t(std::size_t{1} << c.input_count());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = evaluate_word(c, x);
  return t;
}

FunctionTable random_table(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  FunctionTable t(std::size_t{1} << n);
  const std::uint64_t mask = m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
  for (auto& v : t) v = rng() & mask;
  return t;
}

Circuit random_circuit(std::size_t n, std::size_t m, std::size_t logic_gates, std::mt19937_64& rng) {
  Circuit c(n, "rand");
  for (std::size_t k = 0; k < n; ++k) c.add_input(static_cast<std::uint32_t>(k));
  auto pick = [&] { return static_cast<GateId>(rng() % c.gate_count()); };
  for (std::size_t g = 0; g < logic_gates; ++g) {
    if (c.gate_count() == 0) {
      c.add_constant(rng() & 1U);
      continue;
    }
    switch (rng() % 10) {
    case 0: c.add_constant(rng() & 1U); break;
    case 1:
    case 2: c.add_not(pick()); break;
    case 3:
    case 4:
    case 5: c.add_and(pick(), pick()); break;
    default: c.add_or(pick(), pick()); break;
    }
  }
  if (c.gate_count() == 0) c.add_constant(false);
  for (std::size_t j = 0; j < m; ++j) c.add_output(pick());
  return c;
}

} // namespace tfnp
