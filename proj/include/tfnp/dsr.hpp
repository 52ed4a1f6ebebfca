#pragma once

#include "tfnp/problems.hpp"

#include <memory>
#include <random>
#include <vector>

namespace tfnp {

/// Answers search queries on strictly smaller instances.
class Oracle {
public:
  virtual ~Oracle() = default;
  virtual BitString solve(const ProblemInstance& query) = 0;
};

/// Ask the oracle and verify the answer; throws ContractViolation otherwise.
BitString checked_query(Oracle& oracle, const ProblemInstance& query);

/// Restrictions used by the ITER algorithms. The upper half masks every
/// output bit with the dropped leading bit, so points leaving the upper half
/// map to 0 instead of to a misleading suffix.
Circuit lower_half(const Circuit& successor);
Circuit upper_half(const Circuit& successor);

/// Freeze every x with V(x) < threshold and drop the leading value bit.
Circuit freeze_below(const Circuit& graph, std::size_t value_bits, const BitString& threshold);

BitString dsr_iter_with_source(const IterWithSourceInstance& inst, Oracle& oracle);
BitString dsr_iter(const IterInstance& inst, Oracle& oracle);
BitString dsr_sod_with_source(const SodWithSourceInstance& inst, Oracle& oracle);
BitString dsr_sod(const SodInstance& inst, Oracle& oracle);

/// Dispatch on the instance kind. End-of-Line and SVL are rejected.
BitString dsr_solve(const ProblemInstance& inst, Oracle& oracle);

/// Depth-first recursive solver: answers each query by running the matching
/// algorithm again. Instances of dimension <= base are solved exhaustively.
class SelfOracle : public Oracle {
public:
  explicit SelfOracle(std::size_t base = 1) : base_(base) {}
  /// Route recursive queries through another oracle (typically a monitor
  /// wrapping this one).
  void recurse_through(Oracle* oracle) { recursion_ = oracle; }
  BitString solve(const ProblemInstance& query) override;

private:
  std::size_t base_;
  Oracle* recursion_ = nullptr;
};

/// Returns a uniformly random valid solution of each query.
class AdversarialOracle : public Oracle {
public:
  explicit AdversarialOracle(std::uint64_t seed) : rng_(seed) {}
  BitString solve(const ProblemInstance& query) override;

private:
  std::mt19937_64 rng_;
};

enum class MonitorMode { dsr, circuit_dsr, poly_blowup };

std::string_view mode_name(MonitorMode mode);
std::optional<MonitorMode> parse_mode(std::string_view name);

struct TraceEntry {
  std::size_t depth = 0;
  ProblemKind kind = ProblemKind::iter;
  InstanceDims dims;
  BitString answer;
};

/// Forwards queries while enforcing the size discipline of the chosen mode
/// against the instance that issued them:
///   dsr          encoded size strictly smaller
///   circuit_dsr  inputs and outputs no larger, their sum strictly smaller
///   poly_blowup  circuit_dsr, and size <= parent size + (n*m)^c
/// At most two queries per issuing instance. Violations throw MonitorViolation.
class Monitor : public Oracle {
public:
  Monitor(Oracle& inner, MonitorMode mode, unsigned exponent = 2) : inner_(inner), mode_(mode), exponent_(exponent) {}

  void set_root(const ProblemInstance& root);
  BitString solve(const ProblemInstance& query) override;

  const std::vector<TraceEntry>& trace() const noexcept { return trace_; }
  std::size_t max_depth() const noexcept { return max_depth_; }

private:
  struct Frame {
    InstanceDims dims;
    std::size_t queries = 0;
  };

  void check(const Frame& parent, const InstanceDims& q) const;

  Oracle& inner_;
  MonitorMode mode_;
  unsigned exponent_;
  std::vector<Frame> stack_;
  std::vector<TraceEntry> trace_;
  std::size_t max_depth_ = 0;
};

enum class Fault { none, echo_query, pad_query };

std::optional<Fault> parse_fault(std::string_view name);

/// Test double that corrupts the first query it forwards: `echo_query`
/// re-asks the root instance, `pad_query` inflates the query circuit by
/// `padding` gates without changing its function.
class FaultyOracle : public Oracle {
public:
  FaultyOracle(Oracle& next, Fault fault, ProblemInstance root, std::size_t padding)
      : next_(next), fault_(fault), root_(std::move(root)), padding_(padding) {}
  BitString solve(const ProblemInstance& query) override;

private:
  Oracle& next_;
  Fault fault_;
  ProblemInstance root_;
  std::size_t padding_;
  bool fired_ = false;
};

/// Same function, with `pairs` double negations hung off output 0.
ProblemInstance pad_instance(const ProblemInstance& inst, std::size_t pairs);

struct DsrRun {
  BitString solution;
  std::vector<TraceEntry> trace;
  std::size_t max_depth = 0;
};

/// Solve with a monitored self-oracle. Throws MonitorViolation or ContractViolation.
DsrRun run_dsr(const ProblemInstance& root, MonitorMode mode, unsigned exponent = 2, Fault fault = Fault::none,
               std::size_t base = 1);

} // namespace tfnp
