#include "tfnp/netlist.hpp"

#include "tfnp/errors.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tfnp {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

bool parse_number(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_key(std::string_view word, std::string_view key, std::uint64_t& out) {
  if (word.size() <= key.size() + 1 || word.substr(0, key.size()) != key || word[key.size()] != '=')
    return false;
  return parse_number(word.substr(key.size() + 1), out);
}

} // namespace

Circuit parse_netlist(std::string_view text, std::size_t first_line) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  {
    std::size_t pos = 0;
    std::size_t number = first_line;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      auto line = text.substr(pos, end - pos);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      if (!split_words(line).empty()) lines.emplace_back(number, line);
      pos = end + 1;
      ++number;
    }
  }
  if (lines.empty()) throw ParseError(first_line, "empty netlist");

  // Every id defined anywhere, to tell forward references from dangling ones.
  std::unordered_set<std::uint64_t> defined_later;
  for (auto& [number, line] : lines) {
    auto w = split_words(line);
    std::uint64_t id = 0;
    if (!w.empty() && w[0].size() > 1 && w[0][0] == 'g' && parse_number(w[0].substr(1), id)) defined_later.insert(id);
  }

  auto header = split_words(lines.front().second);
  std::uint64_t n = 0, m = 0;
  if (header.size() != 4 || header[0] != "circuit" || !parse_key(header[2], "inputs", n) ||
      !parse_key(header[3], "outputs", m))
    throw ParseError(lines.front().first, "expected 'circuit <name> inputs=<n> outputs=<m>'");

  Circuit c(n, std::string(header[1]));
  std::unordered_map<std::uint64_t, GateId> ids;
  std::vector<std::optional<GateId>> outs(m);

  auto ref = [&](std::size_t line, std::string_view word) -> GateId {
    std::uint64_t id = 0;
    if (word.size() < 2 || word[0] != 'g' || !parse_number(word.substr(1), id))
      throw ParseError(line, "expected gate reference, got '" + std::string(word) + "'");
    auto it = ids.find(id);
    if (it != ids.end()) return it->second;
    if (defined_later.count(id)) throw ParseError(line, "forward reference to g" + std::to_string(id));
    throw ParseError(line, "dangling reference to undefined g" + std::to_string(id));
  };

  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto [number, line] = lines[li];
    auto w = split_words(line);
    if (w[0] == "output") {
      std::uint64_t j = 0;
      if (w.size() != 4 || w[2] != "=" || !parse_number(w[1], j))
        throw ParseError(number, "expected 'output <j> = g<id>'");
      if (j >= m) throw ParseError(number, "output index " + std::to_string(j) + " out of range");
      if (outs[j]) throw ParseError(number, "output " + std::to_string(j) + " assigned twice");
      outs[j] = ref(number, w[3]);
      continue;
    }
    std::uint64_t id = 0;
    if (w.size() < 3 || w[0].size() < 2 || w[0][0] != 'g' || !parse_number(w[0].substr(1), id) || w[1] != "=")
      throw ParseError(number, "malformed gate line '" + std::string(line) + "'");
    if (ids.count(id)) throw ParseError(number, "gate g" + std::to_string(id) + " defined twice");
    auto op = w[2];
    auto arity = [&](std::size_t k) {
      if (w.size() != 3 + k) throw ParseError(number, std::string(op) + " takes " + std::to_string(k) + " operand(s)");
    };
    GateId g = 0;
    try {
      if (op == "INPUT") {
        arity(1);
        std::uint64_t k = 0;
        if (!parse_number(w[3], k)) throw ParseError(number, "bad input index");
        if (k >= n) throw ParseError(number, "input index " + std::to_string(k) + " out of range");
        g = c.add_input(static_cast<std::uint32_t>(k));
      } else if (op == "CONST") {
        arity(1);
        if (w[3] != "0" && w[3] != "1") throw ParseError(number, "CONST takes 0 or 1");
        g = c.add_constant(w[3] == "1");
      } else if (op == "NOT") {
        arity(1);
        g = c.add_not(ref(number, w[3]));
      } else if (op == "AND") {
        arity(2);
        g = c.add_and(ref(number, w[3]), ref(number, w[4]));
      } else if (op == "OR") {
        arity(2);
        g = c.add_or(ref(number, w[3]), ref(number, w[4]));
      } else {
        throw ParseError(number, "unknown gate type '" + std::string(op) + "'");
      }
    } catch (const IndexError& e) {
      throw ParseError(number, e.what());
    }
    ids.emplace(id, g);
  }
  std::vector<GateId> final_outs;
  for (std::size_t j = 0; j < m; ++j) {
    if (!outs[j]) throw ParseError(lines.back().first, "output " + std::to_string(j) + " never assigned");
    final_outs.push_back(*outs[j]);
  }
  c.set_outputs(std::move(final_outs));
  return c;
}

std::string emit_netlist(const Circuit& c) {
  std::ostringstream os;
  os << "circuit " << c.name() << " inputs=" << c.input_count() << " outputs=" << c.output_count() << '\n';
  for (std::size_t g = 0; g < c.gate_count(); ++g) {
    const Gate& gate = c.gates()[g];
    os << 'g' << g << " = ";
    switch (gate.kind) {
    case GateKind::input: os << "INPUT " << gate.a; break;
    case GateKind::constant: os << "CONST " << gate.a; break;
    case GateKind::negation: os << "NOT g" << gate.a; break;
    case GateKind::conjunction: os << "AND g" << gate.a << " g" << gate.b; break;
    case GateKind::disjunction: os << "OR g" << gate.a << " g" << gate.b; break;
    }
    os << '\n';
  }
  for (std::size_t j = 0; j < c.output_count(); ++j) os << "output " << j << " = g" << c.outputs()[j] << '\n';
  return os.str();
}

} // namespace tfnp
