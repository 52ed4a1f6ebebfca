#pragma once

#include "tfnp/bigint.hpp"
#include "tfnp/problems.hpp"
#include "tfnp/state_table.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace tfnp {

/// Number of states on the walk of a dimension-n root, sink included:
/// Pi(1) = 2 and Pi(n) = p(n) * Pi(n-1) + 2.
PathIndex big_pi(const std::function<std::size_t(std::size_t)>& p, std::size_t n);
PathIndex big_pi(const DsrProgram& program, std::size_t n);

/// 1-based index of a valid state along the walk:
///   pi(sink) = Pi(n)
///   pi(s) = 1 + (j-1) Pi(n-1) + pi(sub)   deepest cell j on level 1 open
///   pi(s) = 1 + j Pi(n-1)                 cell j answered
PathIndex position(const StateLayout& layout, const BitString& s);

/// Sum form: 1 + sum over levels i of (answered_i * Pi(n-i) + open_i).
PathIndex position_closed(const StateLayout& layout, const BitString& s);

/// position() after checking validity; throws std::domain_error otherwise.
PathIndex position_checked(const StateLayout& layout, const BitString& s, const BitString& x);

/// SVL instance whose T-th vertex is the sink of the state-table walk. The
/// promise only holds when the program's problem has unique solutions.
SvlInstance compile_svl(const DsrProgram& program, const BitString& x, std::size_t n);

struct PromiseReport {
  bool holds = true;
  bool partial = false; ///< the budget ended the walk before index T
  std::uint64_t indices_checked = 0;
  std::uint64_t samples_checked = 0;
  std::optional<std::uint64_t> violation_index;
  std::string detail;
};

/// Walk indices 1..min(T, budget): the i-th path vertex must verify at i,
/// and off-path strings (single-bit flips, other path vertices, random
/// strings; at least min_samples per index) must not.
PromiseReport check_promise(const SvlInstance& inst, std::uint64_t budget, std::size_t min_samples = 10,
                            std::uint64_t seed = 1);

} // namespace tfnp
