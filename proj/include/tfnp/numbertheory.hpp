#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace tfnp {

/// "prime", a single nontrivial factor, or the sorted list of all of them.
struct FactorAnswer {
  enum class Kind { prime, factor, list };

  Kind kind = Kind::prime;
  std::uint64_t factor = 0;
  std::vector<std::uint64_t> factors;

  static FactorAnswer prime() { return {}; }
  static FactorAnswer single(std::uint64_t m) { return {Kind::factor, m, {}}; }
  static FactorAnswer list(std::vector<std::uint64_t> all) { return {Kind::list, 0, std::move(all)}; }

  bool is_prime() const noexcept { return kind == Kind::prime; }
  friend bool operator==(const FactorAnswer&, const FactorAnswer&) = default;
};

/// Smallest nontrivial factor by trial division. Throws std::domain_error for N < 2.
FactorAnswer factor(std::uint64_t n);

/// All d with 1 < d < N and d | N, increasing.
FactorAnswer all_factors(std::uint64_t n);

using FactorOracle = std::function<FactorAnswer(std::uint64_t)>;

struct OracleCall {
  std::uint64_t query = 0;
  std::uint64_t caller = 0; ///< the number whose answer needed this query
  bool top_level = false;   ///< the single call on the reduction's own input
};

/// AllFactors from a Factor oracle: one call on N itself, then recursion on
/// each factor m and its cofactor N/m (both at most N/2) until only primes
/// remain, then divisor enumeration. Throws ContractViolation if the oracle
/// answers with a non-divisor.
FactorAnswer all_factors_via_factor(std::uint64_t n, const FactorOracle& oracle,
                                    std::vector<OracleCall>* trace = nullptr);

/// Factor from an AllFactors oracle with exactly one call: the smallest listed factor.
FactorAnswer factor_via_all_factors(std::uint64_t n, const FactorOracle& oracle,
                                    std::vector<OracleCall>* trace = nullptr);

} // namespace tfnp
