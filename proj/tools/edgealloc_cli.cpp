// Command-line front end: scenario generation, single runs, sweeps, and
// feasibility checks.

#include "edgealloc/errors.hpp"
#include "edgealloc/experiments.hpp"
#include "edgealloc/orchestrator.hpp"
#include "edgealloc/scenario_gen.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace edgealloc;

struct ScenarioSource
{
  std::string                  scenario_file;
  std::uint64_t                seed = 1;
  std::optional<std::size_t>   cells;
  std::optional<double>        gamma;
  std::string                  scale = "desk";
};

void add_source_flags(CLI::App &cmd, ScenarioSource &src, bool allow_file)
{
  if (allow_file)
  {
    cmd.add_option("--scenario", src.scenario_file, "Scenario file to load instead of generating one");
  }
  cmd.add_option("--seed", src.seed, "Generator seed");
  cmd.add_option("--cells", src.cells, "Number of cells")->check(CLI::PositiveNumber);
  cmd.add_option("--gamma", src.gamma, "Unit energy cost ($/J)")->check(CLI::PositiveNumber);
  cmd.add_option("--scale", src.scale, "Population scale")->check(CLI::IsMember({"desk", "paper"}));
}

GenConfig base_config(ScenarioSource const &src)
{
  GenConfig c = src.scale == "paper" ? paper_config() : desk_config();
  c.seed      = src.seed;
  if (src.cells)
  {
    c.cells = *src.cells;
  }
  if (src.gamma)
  {
    c.econ.gamma = *src.gamma;
  }
  return c;
}

Scenario obtain(ScenarioSource const &src)
{
  if (!src.scenario_file.empty())
  {
    auto s = load(src.scenario_file);
    if (src.gamma)
    {
      s.econ.gamma = *src.gamma;
    }
    return s;
  }
  return generate(base_config(src));
}

std::vector<Strategy> parse_strategies(std::vector<std::string> const &names)
{
  std::vector<Strategy> out;
  for (auto const &n : names)
  {
    if (n == "all")
    {
      out.insert(out.end(), kAllStrategies.begin(), kAllStrategies.end());
    }
    else
    {
      out.push_back(parse_strategy(n));
    }
  }
  return out;
}

/// Writes to `path`, or stdout when empty.
template <typename Fn>
void emit(std::string const &path, Fn &&fn)
{
  if (path.empty())
  {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw IOError("cannot open '" + path + "' for writing");
  }
  fn(out);
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Incentive-driven multi-level task allocation for device-assisted edge networks"};
  app.require_subcommand(1);

  ScenarioSource gen_src;
  std::string    gen_out;
  auto *gen = app.add_subcommand("generate", "Generate a scenario file");
  add_source_flags(*gen, gen_src, false);
  gen->add_option("--out", gen_out, "Output path (default: stdout)");

  ScenarioSource           run_src;
  std::vector<std::string> run_strategies{"full"};
  std::string              run_out;
  auto *run_cmd = app.add_subcommand("run", "Run strategies on one scenario and print metric rows");
  add_source_flags(*run_cmd, run_src, true);
  run_cmd->add_option("--strategy", run_strategies, "Strategy name(s) or 'all'")->delimiter(',');
  run_cmd->add_option("--out", run_out, "CSV output path (default: stdout)");

  ScenarioSource             sweep_src;
  std::string                sweep_param = "cells";
  std::vector<double>        sweep_values;
  std::vector<std::uint64_t> sweep_seeds;
  std::size_t                sweep_reps = 1;
  std::vector<std::string>   sweep_strategies{"all"};
  std::string                sweep_out;
  auto *sweep = app.add_subcommand("sweep", "Parameter sweep, one CSV row per (value, seed, strategy)");
  add_source_flags(*sweep, sweep_src, false);
  sweep->add_option("--param", sweep_param, "cells | mean-tds | mean-ads | gamma | td-spread");
  sweep->add_option("--values", sweep_values, "Swept values")->required()->delimiter(',');
  sweep->add_option("--seeds", sweep_seeds, "Explicit seed list")->delimiter(',');
  sweep->add_option("--reps", sweep_reps, "Seeds seed, seed+1, ... when --seeds is absent")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--strategy", sweep_strategies, "Strategy name(s) or 'all'")->delimiter(',');
  sweep->add_option("--out", sweep_out, "CSV output path (default: stdout)");

  ScenarioSource val_src;
  std::string    val_strategy = "full";
  auto *val = app.add_subcommand("validate", "Check an outcome against the feasibility constraints");
  add_source_flags(*val, val_src, true);
  val->add_option("--strategy", val_strategy, "Strategy name");

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (*gen)
    {
      auto const s = generate(base_config(gen_src));
      emit(gen_out, [&](std::ostream &os) { os << to_json(s) << '\n'; });
    }
    else if (*run_cmd)
    {
      auto const s          = obtain(run_src);
      auto const strategies = parse_strategies(run_strategies);
      std::vector<MetricRow> rows;
      for (auto st : strategies)
      {
        rows.push_back(make_row(s, run(s, st), SweepParam::Cells, static_cast<double>(s.cell_count()), s.seed));
      }
      emit(run_out, [&](std::ostream &os) { write_csv(os, rows); });
    }
    else if (*sweep)
    {
      SweepSpec spec;
      spec.param      = parse_sweep_param(sweep_param);
      spec.values     = sweep_values;
      spec.strategies = parse_strategies(sweep_strategies);
      spec.base       = base_config(sweep_src);
      if (sweep_src.scale == "paper")
      {
        spec.td_range_width = 600.0;
        spec.ad_range_width = 20.0;
        spec.td_spread_mean = 500.0;
      }
      spec.seeds = sweep_seeds;
      if (spec.seeds.empty())
      {
        for (std::size_t r = 0; r < sweep_reps; ++r)
        {
          spec.seeds.push_back(sweep_src.seed + r);
        }
      }
      auto const rows = run_sweep(spec);
      emit(sweep_out, [&](std::ostream &os) { write_csv(os, rows); });
    }
    else if (*val)
    {
      auto const s          = obtain(val_src);
      auto const outcome    = run(s, parse_strategy(val_strategy));
      auto const violations = validate(s, outcome);
      for (auto const &v : violations)
      {
        std::cerr << "violation (" << v.constraint << "): " << v.detail << '\n';
      }
      if (!violations.empty())
      {
        return 1;
      }
      std::cout << "ok: " << s.tds.size() << " tasks, strategy " << to_string(outcome.strategy)
                << ", system utility " << outcome.utility.total << '\n';
    }
  }
  catch (Error const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
