#pragma once

#include "tfnp/problems.hpp"

#include <string>
#include <string_view>

namespace tfnp {

/// Instance files:
///
///     problem <kind>
///     source=<bits>            (with-source kinds only)
///     circuit S inputs=<n> outputs=<n>
///     ...netlist lines...
///     end
///     circuit V ...            (Sink-of-DAG kinds; P for End-of-Line)
///     end
///
/// SVL instances are procedural and have no file form.
ProblemInstance parse_instance(std::string_view text);
std::string emit_instance(const ProblemInstance& inst);

ProblemInstance load_instance(const std::string& path);

} // namespace tfnp
