#pragma once

#include "tfnp/problems.hpp"
#include "tfnp/synthesis.hpp"

#include <random>

namespace tfnp {

/// Random well-formed instance: function tables drawn uniformly, resampled
/// until the guarantee holds, then synthesized into circuits. A source, when
/// the kind has one, is drawn uniformly from the points that satisfy it.
/// value_bits is used by the Sink-of-DAG kinds. Requires n <= 12.
ProblemInstance generate_instance(ProblemKind kind, std::size_t n, std::size_t value_bits, std::mt19937_64& rng);

/// Same, from explicit tables (entry x holds the image of x).
IterWithSourceInstance iter_from_table(const FunctionTable& s, std::size_t n, std::uint64_t source);
SodWithSourceInstance sod_from_tables(const FunctionTable& s, const FunctionTable& v, std::size_t n,
                                      std::size_t value_bits, std::uint64_t source);

} // namespace tfnp
