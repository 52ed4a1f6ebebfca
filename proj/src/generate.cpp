#include "tfnp/generate.hpp"

#include "tfnp/errors.hpp"

namespace tfnp {

namespace {

std::uint64_t pick_source(const FunctionTable& s, std::mt19937_64& rng, bool strictly_up) {
  std::vector<std::uint64_t> ok;
  for (std::uint64_t x = 0; x < s.size(); ++x)
    if (strictly_up ? s[x] > x : s[x] != x) ok.push_back(x);
  if (ok.empty()) return s.size();
  return ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
}

} // namespace

IterWithSourceInstance iter_from_table(const FunctionTable& s, std::size_t n, std::uint64_t source) {
  return {synthesize(n, n, s, "S"), BitString::from_uint(source, n)};
}

SodWithSourceInstance sod_from_tables(const FunctionTable& s, const FunctionTable& v, std::size_t n,
                                      std::size_t value_bits, std::uint64_t source) {
  return make_sod(synthesize(n, n, s, "S"), synthesize(n, value_bits, v, "V"), BitString::from_uint(source, n));
}

ProblemInstance generate_instance(ProblemKind kind, std::size_t n, std::size_t value_bits, std::mt19937_64& rng) {
  if (n == 0 || n > 12) throw RefusalError("random instances are generated for 1 <= n <= 12");
  const bool sod = kind == ProblemKind::sod || kind == ProblemKind::sod_with_source;
  if (sod && (value_bits == 0 || value_bits > 16)) throw RefusalError("value bits must be in 1..16");
  for (;;) {
    FunctionTable s = random_table(n, n, rng);
    switch (kind) {
    case ProblemKind::iter:
      if (s[0] > 0) return IterInstance{synthesize(n, n, s, "S")};
      break;
    case ProblemKind::iter_with_source:
      if (auto src = pick_source(s, rng, true); src < s.size()) return iter_from_table(s, n, src);
      break;
    case ProblemKind::sod:
      if (s[0] != 0) return make_sod(synthesize(n, n, s, "S"), synthesize(n, value_bits, random_table(n, value_bits, rng), "V"));
      break;
    case ProblemKind::sod_with_source:
      if (auto src = pick_source(s, rng, false); src < s.size())
        return sod_from_tables(s, random_table(n, value_bits, rng), n, value_bits, src);
      break;
    case ProblemKind::eol: {
      if (s[0] == 0) break;
      FunctionTable p = random_table(n, n, rng);
      if (p[0] == 0) return EolInstance{synthesize(n, n, s, "S"), synthesize(n, n, p, "P")};
      break;
    }
    case ProblemKind::svl: throw RefusalError("svl instances are compiled, not sampled");
    }
  }
}

} // namespace tfnp
