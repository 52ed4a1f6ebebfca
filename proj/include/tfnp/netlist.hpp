#pragma once

#include "tfnp/circuit.hpp"

#include <string>
#include <string_view>

namespace tfnp {

/// Parse the line-oriented netlist format:
///
///     circuit <name> inputs=<n> outputs=<m>
///     g<id> = INPUT <k> | CONST <0|1> | NOT g<a> | AND g<a> g<b> | OR g<a> g<b>
///     output <j> = g<id>
///
/// '#' starts a comment. Errors carry the 1-based line number, offset by
/// `first_line - 1` when the text is embedded in a larger file.
Circuit parse_netlist(std::string_view text, std::size_t first_line = 1);

std::string emit_netlist(const Circuit& c);

} // namespace tfnp
