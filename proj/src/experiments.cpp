#include "edgealloc/experiments.hpp"

#include "edgealloc/errors.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace edgealloc {

double metric_system_utility(AllocationOutcome const &outcome, std::size_t cells)
{
  if (cells == 0)
  {
    return 0.0;
  }
  return outcome.utility.total / static_cast<double>(cells);
}

namespace {

double ratio(std::size_t placed, std::size_t agreed)
{
  return agreed == 0 ? 1.0 : static_cast<double>(placed) / static_cast<double>(agreed);
}

}  // namespace

double metric_offloading_ratio(AllocationOutcome const &outcome)
{
  std::size_t agreed = 0;
  std::size_t placed = 0;
  for (std::size_t i = 0; i < outcome.bargains.size(); ++i)
  {
    if (outcome.bargains[i].offload == 1)
    {
      ++agreed;
      placed += outcome.decisions[i].offload == 1 ? 1 : 0;
    }
  }
  return ratio(placed, agreed);
}

std::vector<double> cell_offloading_ratios(Scenario const &scenario, AllocationOutcome const &outcome)
{
  std::vector<std::size_t> agreed(scenario.cell_count(), 0);
  std::vector<std::size_t> placed(scenario.cell_count(), 0);
  for (std::size_t i = 0; i < outcome.bargains.size(); ++i)
  {
    if (outcome.bargains[i].offload == 1)
    {
      auto const m = scenario.tds[i].cell;
      ++agreed[m];
      placed[m] += outcome.decisions[i].offload == 1 ? 1 : 0;
    }
  }
  std::vector<double> out;
  for (std::size_t m = 0; m < scenario.cell_count(); ++m)
  {
    out.push_back(ratio(placed[m], agreed[m]));
  }
  return out;
}

double metric_offloading_ratio_variance(Scenario const &scenario, AllocationOutcome const &outcome)
{
  auto const ratios = cell_offloading_ratios(scenario, outcome);
  if (ratios.empty())
  {
    return 0.0;
  }
  double mean = 0.0;
  for (double r : ratios)
  {
    mean += r;
  }
  mean /= static_cast<double>(ratios.size());
  double var = 0.0;
  for (double r : ratios)
  {
    var += (r - mean) * (r - mean);
  }
  return var / static_cast<double>(ratios.size());
}

double metric_utility_gain(AllocationOutcome const &outcome, Scenario const &scenario)
{
  return outcome.utility.total - system_utility(scenario, all_local(scenario));
}

std::string_view to_string(SweepParam param) noexcept
{
  switch (param)
  {
  case SweepParam::Cells:
    return "cells";
  case SweepParam::MeanTds:
    return "mean-tds";
  case SweepParam::MeanAds:
    return "mean-ads";
  case SweepParam::Gamma:
    return "gamma";
  case SweepParam::TdSpread:
    return "td-spread";
  }
  return "unknown";
}

SweepParam parse_sweep_param(std::string_view name)
{
  for (auto p : {SweepParam::Cells, SweepParam::MeanTds, SweepParam::MeanAds, SweepParam::Gamma,
                 SweepParam::TdSpread})
  {
    if (to_string(p) == name)
    {
      return p;
    }
  }
  throw InvalidConfig("unknown sweep parameter '" + std::string(name) + "'");
}

void validate_sweep(SweepSpec const &spec)
{
  if (spec.values.empty())
  {
    throw InvalidConfig("sweep needs at least one value");
  }
  if (spec.strategies.empty())
  {
    throw InvalidConfig("sweep needs at least one strategy");
  }
  if (spec.seeds.empty())
  {
    throw InvalidConfig("sweep needs at least one seed");
  }
  for (double v : spec.values)
  {
    if (!std::isfinite(v))
    {
      throw InvalidConfig("sweep values must be finite");
    }
    if (spec.param == SweepParam::Cells && (v < 1.0 || v != std::floor(v)))
    {
      throw InvalidConfig("cell counts must be positive integers");
    }
    if (spec.param == SweepParam::Gamma && v <= 0.0)
    {
      throw InvalidConfig("gamma must be > 0");
    }
    if ((spec.param == SweepParam::MeanTds || spec.param == SweepParam::MeanAds) && v < 0.0)
    {
      throw InvalidConfig("mean device counts must be >= 0");
    }
  }
}

namespace {

CountRange centred(double mean, double width)
{
  double const lo = std::max(0.0, std::round(mean - width / 2.0));
  double const hi = std::max(lo, std::round(mean + width / 2.0));
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

}  // namespace

GenConfig sweep_point_config(SweepSpec const &spec, double value, std::uint64_t seed)
{
  GenConfig c = spec.base;
  c.seed      = seed;
  switch (spec.param)
  {
  case SweepParam::Cells:
    c.cells = static_cast<std::size_t>(value);
    c.tds_override.clear();
    break;
  case SweepParam::MeanTds:
    c.tds_per_cell = centred(value, spec.td_range_width);
    break;
  case SweepParam::MeanAds:
    c.ads_per_cell = centred(value, spec.ad_range_width);
    break;
  case SweepParam::Gamma:
    c.econ.gamma = value;
    break;
  case SweepParam::TdSpread:
  {
    c.tds_override.clear();
    double const mid = (static_cast<double>(c.cells) - 1.0) / 2.0;
    for (std::size_t m = 0; m < c.cells; ++m)
    {
      double const n = std::round(spec.td_spread_mean + (static_cast<double>(m) - mid) * value);
      c.tds_override.push_back(static_cast<std::size_t>(std::max(0.0, n)));
    }
    break;
  }
  }
  return c;
}

MetricRow make_row(Scenario const &scenario, AllocationOutcome const &outcome, SweepParam param, double value,
                   std::uint64_t seed)
{
  MetricRow row;
  row.strategy                  = outcome.strategy;
  row.param                     = param;
  row.value                     = value;
  row.seed                      = seed;
  row.cells                     = scenario.cell_count();
  row.system_utility            = metric_system_utility(outcome, scenario.cell_count());
  row.offloading_ratio          = metric_offloading_ratio(outcome);
  row.offloading_ratio_variance = metric_offloading_ratio_variance(scenario, outcome);
  row.utility_gain              = metric_utility_gain(outcome, scenario);
  row.timing                    = outcome.timing;
  return row;
}

std::vector<MetricRow> run_sweep(SweepSpec const &spec)
{
  validate_sweep(spec);
  std::vector<MetricRow> rows;
  rows.reserve(spec.values.size() * spec.seeds.size() * spec.strategies.size());
  for (double value : spec.values)
  {
    for (auto seed : spec.seeds)
    {
      auto const scenario = generate(sweep_point_config(spec, value, seed));
      for (auto strategy : spec.strategies)
      {
        auto const outcome = run(scenario, strategy);
        rows.push_back(make_row(scenario, outcome, spec.param, value, seed));
      }
    }
  }
  return rows;
}

std::string csv_field(std::string_view text)
{
  if (text.find_first_of(",\"\r\n") == std::string_view::npos)
  {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text)
  {
    if (c == '"')
    {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream &out, std::vector<MetricRow> const &rows)
{
  out << kCsvHeader << "\r\n";
  std::ostringstream line;
  line << std::setprecision(17);
  for (auto const &r : rows)
  {
    line.str({});
    line << csv_field(to_string(r.strategy)) << ',' << csv_field(to_string(r.param)) << ',' << r.value << ','
         << r.seed << ',' << r.cells << ',' << r.system_utility << ',' << r.offloading_ratio << ','
         << r.offloading_ratio_variance << ',' << r.utility_gain << ',' << r.timing.level1 << ','
         << r.timing.level2 << ',' << r.timing.level3 << ',' << r.timing.total();
    out << line.str() << "\r\n";
  }
}

}  // namespace edgealloc
