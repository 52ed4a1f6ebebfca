#pragma once

#include "tfnp/problems.hpp"

#include <functional>

namespace tfnp {

/// A target instance together with the map that turns a verified target
/// solution into a solution of the original instance.
struct ReductionResult {
  ProblemInstance target;
  std::function<BitString(const BitString&)> pullback;
};

/// S'(x) = S(x) if S(x) > x, else x; V' = S. Pullback is the identity.
ReductionResult iter_to_sod(const IterInstance& inst);

/// ITER-with-source on m+n bits: S'(y||x) = V(S(x))||S(x) if y = V(x),
/// y||x otherwise; source V(0^n)||0^n. Pullback keeps x or S(x).
ReductionResult sod_to_iter(const SodInstance& inst);

/// Same circuits with source 0^n.
ReductionResult add_source(const IterInstance& inst);
ReductionResult add_source(const SodInstance& inst);

/// Route 0^n to the source so the instance is well formed without it.
ReductionResult drop_source(const IterWithSourceInstance& inst);
ReductionResult drop_source(const SodWithSourceInstance& inst);

/// Shortest chain of the reductions above from the instance's kind to `to`.
/// Throws std::invalid_argument when no chain exists.
ReductionResult reduce(const ProblemInstance& inst, ProblemKind to);

} // namespace tfnp
