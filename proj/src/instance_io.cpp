#include "tfnp/instance_io.hpp"

#include "tfnp/errors.hpp"
#include "tfnp/netlist.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tfnp {

namespace {

std::string_view trim(std::string_view s) {
  auto hash = s.find('#');
  if (hash != std::string_view::npos) s = s.substr(0, hash);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Envelope {
  std::optional<ProblemKind> kind;
  std::optional<BitString> source;
  std::map<std::string, Circuit> blocks;
};

Envelope read_envelope(std::string_view text) {
  Envelope env;
  std::size_t pos = 0, number = 0;
  std::string block;
  std::size_t block_start = 0;
  bool in_block = false;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    auto line = trim(raw);
    if (in_block) {
      if (line == "end") {
        Circuit c = parse_netlist(block, block_start);
        std::string name = c.name();
        if (!env.blocks.emplace(name, std::move(c)).second)
          throw ParseError(block_start, "duplicate circuit block '" + name + "'");
        in_block = false;
        block.clear();
      } else {
        block.append(raw).push_back('\n');
      }
      continue;
    }
    if (line.empty()) continue;
    if (line.starts_with("problem ")) {
      auto name = trim(line.substr(8));
      env.kind = parse_kind(name);
      if (!env.kind) throw ParseError(number, "unknown problem kind '" + std::string(name) + "'");
    } else if (line.starts_with("source=")) {
      try {
        env.source = BitString::parse(line.substr(7));
      } catch (const std::invalid_argument&) {
        throw ParseError(number, "malformed source bits");
      }
    } else if (line.starts_with("circuit ")) {
      in_block = true;
      block_start = number;
      block.append(raw).push_back('\n');
    } else {
      throw ParseError(number, "unexpected line '" + std::string(line) + "'");
    }
  }
  if (in_block) throw ParseError(block_start, "circuit block without 'end'");
  if (!env.kind) throw ParseError(1, "missing 'problem <kind>' line");
  return env;
}

const Circuit& block(const Envelope& env, const std::string& name) {
  auto it = env.blocks.find(name);
  if (it == env.blocks.end()) throw ParseError(1, "missing circuit block '" + name + "'");
  return it->second;
}

BitString source(const Envelope& env) {
  if (!env.source) throw ParseError(1, "missing 'source=<bits>' line");
  return *env.source;
}

void append_block(std::ostringstream& out, Circuit c, const std::string& name) {
  c.set_name(name);
  out << emit_netlist(c) << "end\n";
}

} // namespace

ProblemInstance parse_instance(std::string_view text) {
  Envelope env = read_envelope(text);
  switch (*env.kind) {
  case ProblemKind::iter: return IterInstance{block(env, "S")};
  case ProblemKind::iter_with_source: return IterWithSourceInstance{block(env, "S"), source(env)};
  case ProblemKind::sod: return make_sod(block(env, "S"), block(env, "V"));
  case ProblemKind::sod_with_source: return make_sod(block(env, "S"), block(env, "V"), source(env));
  case ProblemKind::eol: return EolInstance{block(env, "S"), block(env, "P")};
  case ProblemKind::svl: break;
  }
  throw ParseError(1, "svl instances have no file form");
}

std::string emit_instance(const ProblemInstance& inst) {
  std::ostringstream out;
  out << "problem " << kind_name(kind_of(inst)) << '\n';
  if (auto* i = std::get_if<IterInstance>(&inst)) {
    append_block(out, i->successor, "S");
  } else if (auto* i = std::get_if<IterWithSourceInstance>(&inst)) {
    out << "source=" << i->source.to_string() << '\n';
    append_block(out, i->successor, "S");
  } else if (auto* i = std::get_if<SodInstance>(&inst)) {
    append_block(out, successor_part(i->graph, i->value_bits), "S");
    append_block(out, valuation_part(i->graph, i->value_bits), "V");
  } else if (auto* i = std::get_if<SodWithSourceInstance>(&inst)) {
    out << "source=" << i->source.to_string() << '\n';
    append_block(out, successor_part(i->graph, i->value_bits), "S");
    append_block(out, valuation_part(i->graph, i->value_bits), "V");
  } else if (auto* i = std::get_if<EolInstance>(&inst)) {
    append_block(out, i->successor, "S");
    append_block(out, i->predecessor, "P");
  } else {
    throw std::invalid_argument("svl instances have no file form");
  }
  return out.str();
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_instance(text.str());
}

} // namespace tfnp
