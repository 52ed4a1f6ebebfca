#pragma once

#include "tfnp/problems.hpp"
#include "tfnp/state_table.hpp"

namespace tfnp {

/// dsr_iter_with_source as a DsrProgram over fixed-width circuit encodings.
///
/// An instance of dimension d is encoded as
///     [gate count][G(d) gate slots: kind, a, b][d output refs][d source bits]
/// where G(d) = G(root) + (n_root - d)(n_root + 1) leaves room for the gates
/// the restrictions add on each level. Unused slots are zero. Queries are
/// padded to exactly two with a constant-1^{d-1} instance with source 0.
class IterProgram : public DsrProgram {
public:
  /// Layout sized for this root instance.
  explicit IterProgram(const IterWithSourceInstance& root);
  IterProgram(std::size_t root_dimension, std::size_t root_gate_capacity);

  std::size_t root_dimension() const noexcept { return n_root_; }
  std::size_t gate_capacity(std::size_t dim) const;

  std::size_t query_count(std::size_t dim) const override { return dim >= 2 ? 2 : 0; }
  std::size_t solution_width(std::size_t dim) const override { return dim; }
  std::size_t instance_width(std::size_t dim) const override;

  /// Throws SizingError when the circuit does not fit its level.
  BitString encode(const IterWithSourceInstance& inst) const;
  std::optional<IterWithSourceInstance> decode(const BitString& x) const;

  BitString next_query(const BitString& x, std::span<const Answered> answered) const override;
  BitString finalize(const BitString& x, std::span<const Answered> answered) const override;
  bool verify(const BitString& x, const BitString& y) const override;

private:
  std::size_t n_root_;
  std::size_t g_root_;
  std::size_t ref_bits_;
};

} // namespace tfnp
