// Command-line front end: instance generation, single solves, predictions and
// Monte Carlo experiments. Exit codes: 0 success, 1 infeasible / no
// prediction / failed repair, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cmsa/cmsa.hpp"
#include "cmsa/json.hpp"

namespace {

constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

struct BudgetArgs {
  std::optional<double> c0, alpha, gamma;

  void attach(CLI::App* cmd, bool required = true) {
    auto* a = cmd->add_option("--c0", c0, "absolute cost budget");
    auto* b = cmd->add_option("--alpha", alpha, "budget alpha * n");
    auto* c = cmd->add_option("--gamma", gamma, "budget n^gamma");
    a->excludes(b)->excludes(c);
    b->excludes(c);
    if (required) {
      cmd->callback([this] {
        if (!c0 && !alpha && !gamma) throw CLI::RequiredError("one of --c0, --alpha, --gamma");
      });
    }
  }
  cmsa::BudgetSpec spec() const {
    if (alpha) return cmsa::BudgetSpec::alpha_n(*alpha);
    if (gamma) return cmsa::BudgetSpec::power(*gamma);
    return cmsa::BudgetSpec::absolute(c0.value_or(0.0));
  }
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw cmsa::Error(cmsa::Errc::io, "cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmsa: cost-constrained minimum spanning arborescence on random complete digraphs"};
  app.require_subcommand(1);

  std::size_t n = 100;
  double s = 1.0;
  std::uint64_t seed = 0;
  std::string out, in_path, format = "json";
  BudgetArgs budget;
  std::size_t trials = 1, reps = 1000, count = 500, n_min = 4, n_max = 6;
  unsigned threads = 1;
  double lambda = 0.0;
  bool mutate = false;
  std::optional<double> tighten;

  auto common = [&](CLI::App* cmd, bool with_seed = true) {
    cmd->add_option("--n", n, "number of vertices")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    cmd->add_option("--s", s, "power-law exponent in (0, 1]");
    if (with_seed) cmd->add_option("--seed", seed, "64-bit seed");
    cmd->add_option("--out", out, "output file (default stdout)");
  };

  auto* gen = app.add_subcommand("gen", "generate an instance (binary file, or CSV with --format csv)");
  common(gen);
  gen->add_option("--format", format)->check(CLI::IsMember({"bin", "csv"}));

  auto* solve = app.add_subcommand("solve", "run the full pipeline on one instance");
  common(solve);
  budget.attach(solve);
  solve->add_option("--in", in_path, "instance file from `gen` (overrides --n/--s/--seed)");
  solve->add_option("--tighten", tighten, "budget reserve for the repair step");

  auto* dual = app.add_subcommand("dual", "maximize the Lagrangian dual of the mapping problem");
  common(dual);
  budget.attach(dual);
  dual->add_option("--in", in_path, "instance file from `gen`");

  auto* pred = app.add_subcommand("predict", "asymptotic regime and predicted optimum");
  common(pred, false);
  budget.attach(pred);

  auto* expect = app.add_subcommand("expect", "Monte Carlo check of E min(X + lambda Y)");
  common(expect);
  expect->add_option("--lambda", lambda)->required();
  expect->add_option("--reps", reps)->check(CLI::PositiveNumber);

  auto* exp = app.add_subcommand("experiment", "Monte Carlo ensemble against the prediction");
  common(exp);
  budget.attach(exp);
  exp->add_option("--trials", trials)->check(CLI::PositiveNumber);
  exp->add_option("--threads", threads, "worker threads (0: all cores)");
  exp->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  exp->add_option("--tighten", tighten);

  auto* orc = app.add_subcommand("oracle", "exhaustive small-n oracle suite");
  orc->add_option("--count", count);
  orc->add_option("--n-min", n_min);
  orc->add_option("--n-max", n_max);
  orc->add_option("--seed", seed);
  orc->add_flag("--mutate", mutate, "corrupt one comparison (self-check; should fail)");
  orc->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    auto load_or_generate = [&] { return in_path.empty() ? cmsa::generate(n, s, seed) : cmsa::load(in_path); };

    if (gen->parsed()) {
      const cmsa::Instance inst = cmsa::generate(n, s, seed);
      if (format == "csv") {
        std::ostringstream os;
        cmsa::write_csv(inst, os);
        emit(os.str(), out);
      } else {
        if (out.empty()) throw CLI::ValidationError("gen", "binary output needs --out");
        cmsa::save(inst, out);
      }
      return 0;
    }
    if (solve->parsed()) {
      const cmsa::Instance inst = load_or_generate();
      cmsa::PipelineOptions opt;
      opt.tighten = tighten;
      const auto r = cmsa::solve_constrained_arborescence(inst, budget.spec().resolve(inst.n()), opt);
      emit(cmsa::to_json(r).dump(2) + "\n", out);
      return 0;
    }
    if (dual->parsed()) {
      const cmsa::Instance inst = load_or_generate();
      emit(cmsa::to_json(cmsa::maximize_dual(inst, budget.spec().resolve(inst.n()))).dump(2) + "\n", out);
      return 0;
    }
    if (pred->parsed()) {
      const auto p = cmsa::predict(n, budget.spec().resolve(n), s);
      emit(cmsa::to_json(p).dump(2) + "\n", out);
      return p.regime == cmsa::Regime::case3_infeasible ? kExitInfeasible : 0;
    }
    if (expect->parsed()) {
      emit(cmsa::to_json(cmsa::run_expectation_check(n, lambda, s, reps, seed)).dump(2) + "\n", out);
      return 0;
    }
    if (exp->parsed()) {
      cmsa::ExperimentConfig cfg;
      cfg.n = n;
      cfg.s = s;
      cfg.trials = trials;
      cfg.base_seed = seed;
      cfg.budget = budget.spec();
      cfg.tighten = tighten;
      cfg.parallelism = threads;
      const auto rep = cmsa::run_experiment(cfg);
      if (format == "csv") {
        std::ostringstream os;
        cmsa::write_trial_csv(rep, os);
        emit(os.str(), out);
      } else {
        emit(cmsa::to_json(rep).dump(2) + "\n", out);
      }
      for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
      return rep.feasibility_rate > 0.0 ? 0 : kExitInfeasible;
    }
    if (orc->parsed()) {
      const auto rep = cmsa::run_oracle_suite(count, n_min, n_max, seed, mutate);
      emit(cmsa::to_json(rep).dump(2) + "\n", out);
      return rep.passed() ? 0 : kExitInfeasible;
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const cmsa::Error& e) {
    std::cerr << cmsa::to_string(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case cmsa::Errc::invalid_argument:
      case cmsa::Errc::domain:
      case cmsa::Errc::range:
        return kExitUsage;
      default:
        return kExitInfeasible;
    }
  }
  return 0;
}
