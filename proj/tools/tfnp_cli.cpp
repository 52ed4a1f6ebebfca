#include "tfnp/dsr.hpp"
#include "tfnp/errors.hpp"
#include "tfnp/fixtures.hpp"
#include "tfnp/generate.hpp"
#include "tfnp/instance_io.hpp"
#include "tfnp/iter_program.hpp"
#include "tfnp/numbertheory.hpp"
#include "tfnp/reductions.hpp"
#include "tfnp/solvers.hpp"
#include "tfnp/svl.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <memory>

using namespace tfnp;

namespace {

enum Exit { ok = 0, not_verified = 1, violation = 2, usage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BitString parse_bits(const std::string& text) {
  try {
    return BitString::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

ProblemKind parse_kind_or_throw(const std::string& name) {
  auto k = parse_kind(name);
  if (!k) throw UsageError("unknown problem kind '" + name + "'");
  return *k;
}

struct ProgramChoice {
  std::unique_ptr<DsrProgram> program;
  BitString x;
  std::size_t n = 0;
  std::string label;
};

ProgramChoice choose_program(const std::string& problem, const std::string& x_bits, const std::string& instance) {
  ProgramChoice c;
  if (!instance.empty()) {
    auto inst = load_instance(instance);
    auto* iws = std::get_if<IterWithSourceInstance>(&inst);
    if (!iws) throw UsageError("--instance must hold an iter-with-source instance");
    if (!well_formed(inst)) throw UsageError("instance is not well formed");
    auto prog = std::make_unique<IterProgram>(*iws);
    c.x = prog->encode(*iws);
    c.n = iws->successor.input_count();
    c.program = std::move(prog);
    c.label = "dsr_iter_with_source";
    return c;
  }
  if (problem != "fixture:recursive-combine") throw UsageError("unknown program '" + problem + "'");
  if (x_bits.empty()) throw UsageError("--x is required for the fixture");
  c.x = parse_bits(x_bits);
  c.n = c.x.size();
  c.program = std::make_unique<recursive_combine::Program>();
  c.label = problem;
  return c;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s.empty() ? "-" : s;
}

std::string format_answer(const FactorAnswer& a) {
  if (a.is_prime()) return "prime";
  if (a.kind == FactorAnswer::Kind::factor) return std::to_string(a.factor);
  std::string s;
  for (std::size_t i = 0; i < a.factors.size(); ++i) s += (i ? " " : "") + std::to_string(a.factors[i]);
  return s;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total search problems: circuits, reductions, downward self-reductions"};
  app.require_subcommand(1);

  std::string kind_name_arg, file, candidate, to_kind, mode_arg = "circuit-dsr", fault_arg = "none";
  std::string problem = "fixture:recursive-combine", x_bits, instance_file;
  std::size_t n = 0, m = 1;
  std::uint64_t seed = 0, budget = 10000, number = 0;
  unsigned exponent = 2;
  bool exhaustive = false, trace = false, all = false, via_oracle = false;

  auto* gen = app.add_subcommand("gen", "Emit a random well-formed instance");
  gen->add_option("--kind", kind_name_arg, "iter | iter-with-source | sod | sod-with-source | eol")->required();
  gen->add_option("--n", n, "state bits")->required();
  gen->add_option("--m", m, "value bits (Sink-of-DAG)");
  gen->add_option("--seed", seed)->required();

  auto* verify = app.add_subcommand("verify", "Check a candidate solution");
  verify->add_option("file", file)->required();
  verify->add_option("--candidate", candidate)->required();

  auto* solve = app.add_subcommand("solve", "Print a solution");
  solve->add_option("file", file)->required();
  solve->add_flag("--exhaustive", exhaustive, "smallest solution instead of path following");

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce to another problem and pull a solution back");
  reduce_cmd->add_option("file", file)->required();
  reduce_cmd->add_option("--to", to_kind)->required();

  auto* dsr_run = app.add_subcommand("dsr-run", "Solve by downward self-reduction under a size monitor");
  dsr_run->add_option("file", file)->required();
  dsr_run->add_option("--mode", mode_arg, "dsr | circuit-dsr | poly-blowup");
  dsr_run->add_option("--c", exponent, "blowup exponent");
  dsr_run->add_flag("--trace", trace);
  dsr_run->add_option("--inject-fault", fault_arg, "none | echo-query | pad-query");

  auto add_program_options = [&](CLI::App* cmd) {
    cmd->add_option("--problem", problem, "fixture:recursive-combine");
    cmd->add_option("--x", x_bits, "fixture instance bits");
    cmd->add_option("--instance", instance_file, "iter-with-source instance file (self-hosted program)");
  };
  auto* compile_cmd = app.add_subcommand("compile-pls", "Compile a program into a Sink-of-DAG instance");
  add_program_options(compile_cmd);
  auto* walk = app.add_subcommand("walk", "Walk the compiled instance from the initial state");
  add_program_options(walk);
  auto* svl_check = app.add_subcommand("svl-check", "Check the SVL promise of the compiled instance");
  add_program_options(svl_check);
  svl_check->add_option("--budget", budget);

  auto* factor_cmd = app.add_subcommand("factor", "Factor or list all factors of N");
  factor_cmd->add_option("N", number)->required();
  factor_cmd->add_flag("--all", all);
  factor_cmd->add_flag("--via-oracle", via_oracle, "go through the Cook reduction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*gen) {
      std::mt19937_64 rng(seed);
      std::cout << emit_instance(generate_instance(parse_kind_or_throw(kind_name_arg), n, m, rng));
      return ok;
    }
    if (*verify) {
      auto inst = load_instance(file);
      bool good = verify_solution(inst, parse_bits(candidate));
      std::cout << (good ? "true" : "false") << '\n';
      return good ? ok : not_verified;
    }
    if (*solve) {
      auto inst = load_instance(file);
      if (!well_formed(inst)) throw MalformedInstance("instance violates its guarantee");
      std::cout << (exhaustive ? solve_exhaustive(inst) : solve_path(inst)).to_string() << '\n';
      return ok;
    }
    if (*reduce_cmd) {
      auto inst = load_instance(file);
      auto result = reduce(inst, parse_kind_or_throw(to_kind));
      std::cout << emit_instance(result.target);
      auto w = dimension(result.target) <= 16 ? solve_exhaustive(result.target) : solve_path(result.target);
      auto v = result.pullback(w);
      bool good = verify_solution(inst, v);
      std::cout << "# target solution " << w.to_string() << " pulls back to " << v.to_string()
                << (good ? " (verified)" : " (NOT a solution)") << '\n';
      return good ? ok : not_verified;
    }
    if (*dsr_run) {
      auto inst = load_instance(file);
      auto mode = parse_mode(mode_arg);
      auto fault = parse_fault(fault_arg);
      if (!mode) throw UsageError("unknown mode '" + mode_arg + "'");
      if (!fault) throw UsageError("unknown fault '" + fault_arg + "'");
      auto run = run_dsr(inst, *mode, exponent, *fault);
      if (trace)
        for (const auto& t : run.trace)
          std::cout << "query depth=" << t.depth << " kind=" << kind_name(t.kind) << " n=" << t.dims.inputs
                    << " m=" << t.dims.outputs << " size=" << t.dims.circuit_size << " answer=" << t.answer.to_string()
                    << '\n';
      std::cout << run.solution.to_string() << '\n';
      return ok;
    }
    if (*compile_cmd || *walk || *svl_check) {
      auto choice = choose_program(problem, x_bits, instance_file);
      if (*svl_check) {
        auto inst = compile_svl(*choice.program, choice.x, choice.n);
        auto report = check_promise(inst, budget);
        std::cout << "program " << choice.label << " n=" << choice.n << " T=" << inst.target << '\n'
                  << "indices checked " << report.indices_checked << ", off-path samples " << report.samples_checked
                  << (report.partial ? " (partial: budget reached)" : "") << '\n';
        if (!report.holds) {
          std::cout << "promise violated at index " << *report.violation_index << ": " << report.detail << '\n';
          return not_verified;
        }
        std::cout << "promise holds\n";
        return ok;
      }
      auto compiled = compile(*choice.program, choice.x, choice.n);
      const auto& layout = compiled.layout;
      const PathIndex length = big_pi(*choice.program, choice.n);
      if (*compile_cmd) {
        std::cout << "program " << choice.label << " n=" << choice.n << " |x|=" << choice.x.size() << '\n'
                  << "state bits " << compiled.state_bits << " (bound p*q*|x|^2 = " << compiled.size_bound << ")\n"
                  << "cells " << layout.cell_count() << ", levels " << layout.levels() << '\n'
                  << "path length " << length << '\n';
        return ok;
      }
      BitString s = compiled.instance.source;
      std::uint64_t step = 0;
      for (;;) {
        std::cout << "step=" << step << " pi=" << position(layout, s) << " depth=" << join(layout.occupancy(s))
                  << '\n';
        if (is_sink(layout, s)) break;
        BitString next = compiled.instance.successor(s);
        if (next == s) throw ContractViolation("walk stalled on a non-sink state");
        s = std::move(next);
        ++step;
      }
      auto y = *read_solution(layout, s);
      bool good = choice.program->verify(choice.x, y);
      std::cout << "sink after " << step << " steps, solution " << y.to_string() << (good ? " (verified)" : " (NOT verified)")
                << '\n';
      return good ? ok : not_verified;
    }
    if (*factor_cmd) {
      FactorAnswer answer;
      std::vector<OracleCall> calls;
      if (!via_oracle) {
        answer = all ? all_factors(number) : tfnp::factor(number);
      } else if (all) {
        answer = all_factors_via_factor(number, [](std::uint64_t q) { return tfnp::factor(q); }, &calls);
      } else {
        answer = factor_via_all_factors(number, [](std::uint64_t q) { return all_factors(q); }, &calls);
      }
      std::cout << format_answer(answer) << '\n';
      if (via_oracle) std::cout << "# oracle calls: " << calls.size() << '\n';
      return ok;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return usage;
  } catch (const MonitorViolation& e) {
    std::cerr << "monitor violation: " << e.what() << '\n';
    return violation;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return violation;
  } catch (const MalformedInstance& e) {
    std::cerr << "malformed instance: " << e.what() << '\n';
    return not_verified;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}
