#include "tfnp/fixtures.hpp"

#include "tfnp/errors.hpp"

#include <unordered_map>

namespace tfnp::recursive_combine {

namespace {

BitString parity_bit(const BitString& x) { return BitString::from_uint(x.popcount() % 2, 1); }

BitString combine(const BitString& x, const BitString& a, const BitString& b) { return (a ^ b) + parity_bit(x); }

BitString memo_solve(const BitString& x, std::unordered_map<BitString, BitString>& memo) {
  if (x.size() == 1) return x;
  if (auto it = memo.find(x); it != memo.end()) return it->second;
  BitString prefix = x.slice(0, x.size() - 1);
  BitString y = combine(x, memo_solve(prefix, memo), memo_solve(~prefix, memo));
  memo.emplace(x, y);
  return y;
}

} // namespace

BitString solution(const BitString& x, std::size_t bound) {
  if (x.empty()) throw ArityError("instances have at least one bit");
  if (x.size() > bound)
    throw RefusalError("instance of " + std::to_string(x.size()) + " bits exceeds the bound of " +
                       std::to_string(bound));
  std::unordered_map<BitString, BitString> memo;
  return memo_solve(x, memo);
}

BitString solution_naive(const BitString& x) {
  if (x.empty()) throw ArityError("instances have at least one bit");
  if (x.size() == 1) return x;
  BitString prefix = x.slice(0, x.size() - 1);
  return combine(x, solution_naive(prefix), solution_naive(~prefix));
}

BitString Program::next_query(const BitString& x, std::span<const Answered> answered) const {
  BitString prefix = x.slice(0, x.size() - 1);
  return answered.empty() ? prefix : ~prefix;
}

BitString Program::finalize(const BitString& x, std::span<const Answered> answered) const {
  if (x.size() == 1) return x;
  if (answered.size() != 2) throw ContractViolation("finalize needs both answers");
  return combine(x, answered[0].solution, answered[1].solution);
}

bool Program::verify(const BitString& x, const BitString& y) const {
  return y.size() == x.size() && y == solution(x);
}

} // namespace tfnp::recursive_combine
