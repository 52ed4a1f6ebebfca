#include "tfnp/numbertheory.hpp"

#include "tfnp/errors.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>

namespace tfnp {

namespace {

void check_domain(std::uint64_t n) {
  if (n < 2) throw std::domain_error("factoring is defined for N >= 2, got " + std::to_string(n));
}

bool proper_divisor(std::uint64_t d, std::uint64_t n) { return d > 1 && d < n && n % d == 0; }

} // namespace

FactorAnswer factor(std::uint64_t n) {
  check_domain(n);
  for (std::uint64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return FactorAnswer::single(d);
  return FactorAnswer::prime();
}

FactorAnswer all_factors(std::uint64_t n) {
  check_domain(n);
  std::vector<std::uint64_t> low, high;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  if (low.empty()) return FactorAnswer::prime();
  low.insert(low.end(), high.rbegin(), high.rend());
  return FactorAnswer::list(std::move(low));
}

FactorAnswer all_factors_via_factor(std::uint64_t n, const FactorOracle& oracle, std::vector<OracleCall>* trace) {
  check_domain(n);
  std::map<std::uint64_t, unsigned> primes;

  auto ask = [&](std::uint64_t q, std::uint64_t caller, bool top) {
    if (trace) trace->push_back({q, caller, top});
    FactorAnswer a = oracle(q);
    if (a.kind == FactorAnswer::Kind::list) {
      if (a.factors.empty()) throw ContractViolation("oracle returned an empty factor list");
      a = FactorAnswer::single(a.factors.front());
    }
    if (!a.is_prime() && !proper_divisor(a.factor, q))
      throw ContractViolation("oracle answered " + std::to_string(a.factor) + ", not a nontrivial factor of " +
                              std::to_string(q));
    return a;
  };

  std::function<void(std::uint64_t, const FactorAnswer&)> split = [&](std::uint64_t k, const FactorAnswer& a) {
    if (a.is_prime()) {
      ++primes[k];
      return;
    }
    const std::uint64_t m = a.factor, rest = k / m;
    split(m, ask(m, k, false));
    split(rest, ask(rest, k, false));
  };
  split(n, ask(n, n, true));

  if (primes.size() == 1 && primes.begin()->second == 1) return FactorAnswer::prime();
  std::vector<std::uint64_t> divisors{1};
  for (auto [p, e] : primes) {
    const std::size_t base = divisors.size();
    std::uint64_t power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= p;
      for (std::size_t k = 0; k < base; ++k) divisors.push_back(divisors[k] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  std::vector<std::uint64_t> proper;
  std::copy_if(divisors.begin(), divisors.end(), std::back_inserter(proper),
               [n](std::uint64_t d) { return d != 1 && d != n; });
  return FactorAnswer::list(std::move(proper));
}

FactorAnswer factor_via_all_factors(std::uint64_t n, const FactorOracle& oracle, std::vector<OracleCall>* trace) {
  check_domain(n);
  if (trace) trace->push_back({n, n, true});
  FactorAnswer a = oracle(n);
  if (a.is_prime()) return a;
  std::uint64_t smallest = a.kind == FactorAnswer::Kind::list ? (a.factors.empty() ? 0 : a.factors.front()) : a.factor;
  if (a.kind == FactorAnswer::Kind::list)
    for (auto d : a.factors) smallest = std::min(smallest, d);
  if (!proper_divisor(smallest, n))
    throw ContractViolation("oracle listed " + std::to_string(smallest) + ", not a nontrivial factor of " +
                            std::to_string(n));
  return FactorAnswer::single(smallest);
}

} // namespace tfnp
