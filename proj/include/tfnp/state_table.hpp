#pragma once

#include "tfnp/bigint.hpp"
#include "tfnp/bitstring.hpp"
#include "tfnp/problems.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace tfnp {

struct Answered {
  BitString query;
  BitString solution;
};

/// A downward self-reduction written as a resumable query/answer protocol.
/// An instance of dimension d makes exactly query_count(d) queries, each of
/// dimension d - 1; query_count(1) must be 0. Instances and solutions have
/// fixed widths per dimension.
class DsrProgram {
public:
  virtual ~DsrProgram() = default;

  virtual std::size_t query_count(std::size_t dim) const = 0;
  virtual std::size_t solution_width(std::size_t dim) const = 0;
  virtual std::size_t instance_width(std::size_t dim) const = 0;

  /// The query made after the answered prefix; depends only on its arguments.
  virtual BitString next_query(const BitString& x, std::span<const Answered> answered) const = 0;
  virtual BitString finalize(const BitString& x, std::span<const Answered> answered) const = 0;
  virtual bool verify(const BitString& x, const BitString& y) const = 0;
};

/// Fixed-width layout of the state table for a root of dimension n.
///
/// Level 0 holds one cell; level i >= 1 holds query_count(n - i + 1) cells of
/// dimension n - i. A cell is
///     [x present][x: instance_width][y present][y: solution_width]
/// and blank components are all zero.
class StateLayout {
public:
  struct Cell {
    std::optional<BitString> x;
    std::optional<BitString> y;
  };

  StateLayout(const DsrProgram& program, std::size_t n);

  const DsrProgram& program() const noexcept { return *program_; }
  std::size_t dimension() const noexcept { return n_; }
  std::size_t levels() const noexcept { return levels_.size(); }
  std::size_t cells(std::size_t level) const { return levels_.at(level).cells; }
  std::size_t level_dimension(std::size_t level) const { return n_ - level; }
  std::size_t total_bits() const noexcept { return total_; }
  std::size_t cell_count() const noexcept;

  /// Nullopt when the cell encoding is not canonical.
  std::optional<Cell> read(const BitString& s, std::size_t level, std::size_t j) const;
  void write(BitString& s, std::size_t level, std::size_t j, const Cell& cell) const;
  /// Blank every cell on levels >= level.
  void clear_from(BitString& s, std::size_t level) const;
  bool blank_from(const BitString& s, std::size_t level) const;

  /// Number of occupied cells per level 1..levels()-1 (zero if the table is
  /// not canonically encoded).
  std::vector<std::size_t> occupancy(const BitString& s) const;

private:
  struct Level {
    std::size_t cells = 0;
    std::size_t x_width = 0;
    std::size_t y_width = 0;
    std::size_t offset = 0;
    std::size_t cell_width() const { return x_width + y_width + 2; }
  };
  std::size_t cell_offset(std::size_t level, std::size_t j) const;

  const DsrProgram* program_;
  std::size_t n_;
  std::vector<Level> levels_;
  std::size_t total_ = 0;
};

/// s[0,1] = (x, blank); every other cell blank.
BitString initial_state(const StateLayout& layout, const BitString& x);

/// Validity of a state for root x: occupied cells form a prefix of each
/// level, every answered cell carries a verified solution, every query is the
/// one the program makes after the preceding answers, only the last occupied
/// cell of a level may be open, and an open cell's queries live on the next
/// level while everything below a closed cell is blank.
bool is_valid(const StateLayout& layout, const BitString& s, const BitString& x);

/// s[0,1] carries a solution.
bool is_sink(const StateLayout& layout, const BitString& s);

/// One step of the depth-first simulation. Invalid states and the sink map
/// to themselves.
BitString successor(const StateLayout& layout, const BitString& s, const BitString& x);

/// The solution in s[0,1], or nullopt if the root is still open.
std::optional<BitString> read_solution(const StateLayout& layout, const BitString& s);

struct CompiledPls {
  StateLayout layout;
  ImplicitSodInstance instance;
  /// Maps a Sink-of-DAG solution (the state before the sink, or the sink
  /// itself) to the program's solution for x.
  std::function<BitString(const BitString&)> extract;
  /// Bit length of a state and the bound p(n) * q(n) * |x|^2.
  std::size_t state_bits = 0;
  std::size_t size_bound = 0;
};

/// Sink-of-DAG instance over state tables: successor as above, valuation the
/// position along the walk, source the initial state.
CompiledPls compile(const DsrProgram& program, const BitString& x, std::size_t n);

} // namespace tfnp
