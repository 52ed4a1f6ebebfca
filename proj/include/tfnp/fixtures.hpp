#pragma once

#include "tfnp/state_table.hpp"

namespace tfnp {

/// Unique-solution test problem with a two-query downward self-reduction:
///   sol(b) = b
///   sol(x) = (sol(x[0..n-1)) XOR sol(~x[0..n-1))) || parity(x)
/// It exists to exercise the state-table machinery; it is neither hard nor
/// cheaply verifiable.
namespace recursive_combine {

/// Memoized over the prefixes of x. Throws RefusalError when |x| > bound.
BitString solution(const BitString& x, std::size_t bound = 16);

/// Direct recursion without sharing, as a cross-check.
BitString solution_naive(const BitString& x);

class Program : public DsrProgram {
public:
  std::size_t query_count(std::size_t dim) const override { return dim >= 2 ? 2 : 0; }
  std::size_t solution_width(std::size_t dim) const override { return dim; }
  std::size_t instance_width(std::size_t dim) const override { return dim; }

  /// x[0..n-1), then its complement.
  BitString next_query(const BitString& x, std::span<const Answered> answered) const override;
  BitString finalize(const BitString& x, std::span<const Answered> answered) const override;
  bool verify(const BitString& x, const BitString& y) const override;
};

} // namespace recursive_combine

} // namespace tfnp
