#pragma once

#include "tfnp/problems.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tfnp {

/// One application of the instance's successor.
BitString successor_of(const ProblemInstance& inst, const BitString& v);

/// Follow the successor from the source until a candidate verifies.
/// The default budget is 2^n steps; exhausting it throws MalformedInstance.
BitString solve_path(const ProblemInstance& inst, std::optional<std::uint64_t> budget = std::nullopt);
BitString solve_path(const ImplicitSodInstance& inst, std::uint64_t budget);

/// Lexicographically smallest solution. Throws RefusalError when n > bound.
BitString solve_exhaustive(const ProblemInstance& inst, std::size_t bound = 16);

/// Every solution in lexicographic order.
std::vector<BitString> all_solutions(const ProblemInstance& inst, std::size_t bound = 16);

} // namespace tfnp
