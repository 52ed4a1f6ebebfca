#pragma once

#include "tfnp/bigint.hpp"
#include "tfnp/bitstring.hpp"
#include "tfnp/circuit.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tfnp {

/// Deterministic, length-preserving successor function, backed either by a
/// circuit or by an arbitrary procedure.
class SuccessorOracle {
public:
  SuccessorOracle() = default;
  SuccessorOracle(std::size_t width, std::function<BitString(const BitString&)> next)
      : width_(width), next_(std::move(next)) {}
  explicit SuccessorOracle(Circuit c);

  std::size_t width() const noexcept { return width_; }
  BitString operator()(const BitString& x) const;

private:
  std::size_t width_ = 0;
  std::function<BitString(const BitString&)> next_;
};

struct IterInstance {
  Circuit successor;
};

struct IterWithSourceInstance {
  Circuit successor;
  BitString source;
};

/// Sink-of-DAG. The successor and valuation share one circuit on n inputs:
/// outputs [0, n) are S(x), outputs [n, n + value_bits) are V(x).
struct SodInstance {
  Circuit graph;
  std::size_t value_bits = 0;
};

struct SodWithSourceInstance {
  Circuit graph;
  std::size_t value_bits = 0;
  BitString source;
};

struct EolInstance {
  Circuit successor;
  Circuit predecessor;
};

/// Sink-of-Verifiable-Line: the verifier is an opaque predicate.
struct SvlInstance {
  SuccessorOracle successor;
  BitString source;
  PathIndex target;
  std::function<bool(const BitString&, const PathIndex&)> verifier;
};

using ProblemInstance =
    std::variant<IterInstance, IterWithSourceInstance, SodInstance, SodWithSourceInstance, EolInstance, SvlInstance>;

enum class ProblemKind { iter, iter_with_source, sod, sod_with_source, eol, svl };

ProblemKind kind_of(const ProblemInstance& inst);
std::string_view kind_name(ProblemKind k);
std::optional<ProblemKind> parse_kind(std::string_view name);

/// Sink-of-DAG graph from separate S (n -> n) and V (n -> m) circuits.
SodInstance make_sod(const Circuit& successor, const Circuit& valuation);
SodWithSourceInstance make_sod(const Circuit& successor, const Circuit& valuation, BitString source);

std::size_t state_bits(const SodInstance& s);
Circuit successor_part(const Circuit& graph, std::size_t value_bits);
Circuit valuation_part(const Circuit& graph, std::size_t value_bits);

/// Width of a candidate solution.
std::size_t dimension(const ProblemInstance& inst);

/// Distinguished start point: 0^n or the explicit source.
BitString source_of(const ProblemInstance& inst);

/// Circuit input/output counts and size used by the oracle monitors.
struct InstanceDims {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::size_t circuit_size = 0;
  std::size_t encoded_size = 0; ///< circuit size plus explicit source bits
};
InstanceDims dims_of(const ProblemInstance& inst);

bool well_formed(const ProblemInstance& inst);

/// Solution predicates (0-based bits, lexicographic order on strings):
///   ITER(-with-source): S(v) > v and S(S(v)) <= S(v)
///   Sink-of-DAG(-with-source): S(v) != v and (S(S(v)) == S(v) or V(S(v)) <= V(v))
///   End-of-Line: P(S(v)) != v, or v != 0^n and S(P(v)) != v
///   SVL: verifier(v, T)
/// Throws ArityError on a dimension mismatch.
bool verify_solution(const ProblemInstance& inst, const BitString& candidate);

/// Number of successor evaluations made by verify_solution on this thread.
std::size_t successor_evaluations() noexcept;

/// A Sink-of-DAG-with-source instance whose successor and valuation are
/// procedures; produced by compiling a downward self-reduction.
struct ImplicitSodInstance {
  SuccessorOracle successor;
  std::function<PathIndex(const BitString&)> valuation;
  BitString source;
};

bool verify_solution(const ImplicitSodInstance& inst, const BitString& candidate);

} // namespace tfnp
