#include "tfnp/state_table.hpp"

#include "tfnp/errors.hpp"
#include "tfnp/svl.hpp"

namespace tfnp {

StateLayout::StateLayout(const DsrProgram& program, std::size_t n) : program_(&program), n_(n) {
  if (n == 0) throw ArityError("state tables need a root of dimension at least 1");
  if (program.query_count(1) != 0) throw std::invalid_argument("dimension-1 instances must be solved without queries");
  for (std::size_t level = 0; level < n; ++level) {
    const std::size_t dim = n - level;
    Level l;
    l.cells = level == 0 ? 1 : program.query_count(dim + 1);
    l.x_width = program.instance_width(dim);
    l.y_width = program.solution_width(dim);
    l.offset = total_;
    total_ += l.cells * l.cell_width();
    levels_.push_back(l);
  }
}

std::size_t StateLayout::cell_count() const noexcept {
  std::size_t count = 0;
  for (const auto& l : levels_) count += l.cells;
  return count;
}

std::size_t StateLayout::cell_offset(std::size_t level, std::size_t j) const {
  const Level& l = levels_.at(level);
  if (j >= l.cells) throw IndexError("state table cell out of range");
  return l.offset + j * l.cell_width();
}

std::optional<StateLayout::Cell> StateLayout::read(const BitString& s, std::size_t level, std::size_t j) const {
  const Level& l = levels_.at(level);
  std::size_t at = cell_offset(level, j);
  Cell cell;
  const bool has_x = s[at];
  BitString x = s.slice(at + 1, l.x_width);
  at += 1 + l.x_width;
  const bool has_y = s[at];
  BitString y = s.slice(at + 1, l.y_width);
  if (!has_x && (has_y || !x.is_zero())) return std::nullopt;
  if (!has_y && !y.is_zero()) return std::nullopt;
  if (has_x) cell.x = std::move(x);
  if (has_y) cell.y = std::move(y);
  return cell;
}

void StateLayout::write(BitString& s, std::size_t level, std::size_t j, const Cell& cell) const {
  const Level& l = levels_.at(level);
  std::size_t at = cell_offset(level, j);
  auto put = [&](const std::optional<BitString>& field, std::size_t width) {
    if (field && field->size() != width)
      throw SizingError("cell field of " + std::to_string(field->size()) + " bits does not fit width " +
                        std::to_string(width));
    s.set(at++, field.has_value());
    for (std::size_t k = 0; k < width; ++k) s.set(at++, field ? (*field)[k] : false);
  };
  put(cell.x, l.x_width);
  put(cell.y, l.y_width);
}

void StateLayout::clear_from(BitString& s, std::size_t level) const {
  if (level >= levels_.size()) return;
  for (std::size_t k = levels_[level].offset; k < total_; ++k) s.set(k, false);
}

bool StateLayout::blank_from(const BitString& s, std::size_t level) const {
  if (level >= levels_.size()) return true;
  for (std::size_t k = levels_[level].offset; k < total_; ++k)
    if (s[k]) return false;
  return true;
}

std::vector<std::size_t> StateLayout::occupancy(const BitString& s) const {
  std::vector<std::size_t> counts;
  for (std::size_t level = 1; level < levels_.size(); ++level) {
    std::size_t j = 0;
    while (j < levels_[level].cells) {
      auto cell = read(s, level, j);
      if (!cell || !cell->x) break;
      ++j;
    }
    counts.push_back(j);
  }
  return counts;
}

BitString initial_state(const StateLayout& layout, const BitString& x) {
  BitString s = BitString::zeros(layout.total_bits());
  layout.write(s, 0, 0, {x, std::nullopt});
  return s;
}

namespace {

struct LevelView {
  std::vector<StateLayout::Cell> cells;
  std::size_t occupied = 0;
};

std::optional<LevelView> read_level(const StateLayout& layout, const BitString& s, std::size_t level) {
  LevelView view;
  for (std::size_t j = 0; j < layout.cells(level); ++j) {
    auto cell = layout.read(s, level, j);
    if (!cell) return std::nullopt;
    view.cells.push_back(std::move(*cell));
  }
  while (view.occupied < view.cells.size() && view.cells[view.occupied].x) ++view.occupied;
  for (std::size_t j = view.occupied; j < view.cells.size(); ++j)
    if (view.cells[j].x || view.cells[j].y) return std::nullopt;
  return view;
}

// Levels below an open instance x of dimension d sitting on `level`.
bool valid_below(const StateLayout& layout, const BitString& s, std::size_t level, const BitString& x) {
  const std::size_t below = level + 1;
  if (below >= layout.levels() || layout.cells(below) == 0) return layout.blank_from(s, below);
  const DsrProgram& prog = layout.program();
  auto view = read_level(layout, s, below);
  if (!view) return false;
  if (view->occupied == 0) return layout.blank_from(s, below + 1);

  std::vector<Answered> answered;
  for (std::size_t k = 0; k < view->occupied; ++k) {
    const auto& cell = view->cells[k];
    if (*cell.x != prog.next_query(x, answered)) return false;
    const bool last = k + 1 == view->occupied;
    if (!cell.y) return last && valid_below(layout, s, below, *cell.x);
    if (!prog.verify(*cell.x, *cell.y)) return false;
    if (last) return layout.blank_from(s, below + 1);
    answered.push_back({*cell.x, *cell.y});
  }
  return false;
}

// Advance the computation of the open instance x on `level`; returns its
// solution once it finalizes.
std::optional<BitString> advance(const StateLayout& layout, BitString& s, std::size_t level, const BitString& x) {
  const DsrProgram& prog = layout.program();
  const std::size_t below = level + 1;
  if (below >= layout.levels() || layout.cells(below) == 0) return prog.finalize(x, {});
  auto view = read_level(layout, s, below);
  std::vector<Answered> answered;
  for (std::size_t k = 0; k < view->occupied && view->cells[k].y; ++k)
    answered.push_back({*view->cells[k].x, *view->cells[k].y});

  const std::size_t j = view->occupied;
  if (j == 0) {
    layout.write(s, below, 0, {prog.next_query(x, answered), std::nullopt});
    return std::nullopt;
  }
  const auto& last = view->cells[j - 1];
  if (last.y) {
    if (j == layout.cells(below)) return prog.finalize(x, answered);
    layout.write(s, below, j, {prog.next_query(x, answered), std::nullopt});
    return std::nullopt;
  }
  if (auto y = advance(layout, s, below, *last.x)) {
    layout.clear_from(s, below + 1);
    layout.write(s, below, j - 1, {*last.x, std::move(*y)});
  }
  return std::nullopt;
}

} // namespace

bool is_valid(const StateLayout& layout, const BitString& s, const BitString& x) {
  if (s.size() != layout.total_bits()) return false;
  auto root = layout.read(s, 0, 0);
  if (!root || !root->x || *root->x != x) return false;
  if (root->y) return layout.program().verify(x, *root->y) && layout.blank_from(s, 1);
  return valid_below(layout, s, 0, x);
}

bool is_sink(const StateLayout& layout, const BitString& s) {
  auto root = layout.read(s, 0, 0);
  return root && root->y;
}

std::optional<BitString> read_solution(const StateLayout& layout, const BitString& s) {
  auto root = layout.read(s, 0, 0);
  if (!root || !root->y) return std::nullopt;
  return root->y;
}

BitString successor(const StateLayout& layout, const BitString& s, const BitString& x) {
  if (!is_valid(layout, s, x) || is_sink(layout, s)) return s;
  BitString next = s;
  if (auto y = advance(layout, next, 0, x)) {
    layout.clear_from(next, 1);
    layout.write(next, 0, 0, {x, std::move(*y)});
  }
  return next;
}

CompiledPls compile(const DsrProgram& program, const BitString& x, std::size_t n) {
  StateLayout layout(program, n);
  if (x.size() != program.instance_width(n))
    throw ArityError("instance has " + std::to_string(x.size()) + " bits, dimension " + std::to_string(n) +
                     " needs " + std::to_string(program.instance_width(n)));
  CompiledPls out{layout, {}, {}, layout.total_bits(), 0};
  out.instance.successor = SuccessorOracle(layout.total_bits(), [layout, x](const BitString& s) {
    return successor(layout, s, x);
  });
  out.instance.valuation = [layout, x](const BitString& s) -> PathIndex {
    if (!is_valid(layout, s, x)) return 0;
    return position(layout, s);
  };
  out.instance.source = initial_state(layout, x);
  out.extract = [layout, x](const BitString& s) {
    if (auto y = read_solution(layout, s)) return *y;
    if (auto y = read_solution(layout, successor(layout, s, x))) return *y;
    throw ContractViolation("state is neither the sink nor its predecessor");
  };
  const std::size_t w = x.size();
  out.size_bound = program.query_count(n) * program.solution_width(n) * w * w;
  return out;
}

} // namespace tfnp
