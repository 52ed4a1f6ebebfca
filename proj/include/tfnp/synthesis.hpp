#pragma once

#include "tfnp/circuit.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tfnp {

/// Function table: entry x (0 <= x < 2^n) holds the m-bit output for input x.
using FunctionTable = std::vector<std::uint64_t>;

/// Multiplexer (Shannon) synthesis with structural sharing. Input 0 is the
/// root selector, so restricting it to a constant discards half the tree.
Circuit synthesize(std::size_t n, std::size_t m, std::span<const std::uint64_t> table, std::string name = "c");

/// Truth table of a circuit with at most 20 inputs and 64 outputs.
FunctionTable truth_table(const Circuit& c);

FunctionTable random_table(std::size_t n, std::size_t m, std::mt19937_64& rng);

/// Random DAG: n INPUT gates followed by `logic_gates` random NOT/AND/OR/CONST
/// gates, m outputs drawn from all gates.
Circuit random_circuit(std::size_t n, std::size_t m, std::size_t logic_gates, std::mt19937_64& rng);

} // namespace tfnp
