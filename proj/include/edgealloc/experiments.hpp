#pragma once

#include "edgealloc/orchestrator.hpp"
#include "edgealloc/scenario_gen.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace edgealloc {

/// Average utility per cell.
double metric_system_utility(AllocationOutcome const &outcome, std::size_t cells);

/// Tasks finally executed off-device over tasks that agreed to offload at the
/// first level; 1.0 when nothing agreed to offload.
double metric_offloading_ratio(AllocationOutcome const &outcome);

/// Per-cell offloading ratios (same convention as above).
std::vector<double> cell_offloading_ratios(Scenario const &scenario, AllocationOutcome const &outcome);

/// Population variance of the per-cell offloading ratios.
double metric_offloading_ratio_variance(Scenario const &scenario, AllocationOutcome const &outcome);

/// Total system utility minus that of every TD processing locally.
double metric_utility_gain(AllocationOutcome const &outcome, Scenario const &scenario);

enum class SweepParam
{
  Cells,     // M
  MeanTds,   // centre of the per-cell TD range
  MeanAds,   // centre of the per-cell AD range
  Gamma,     // unit energy cost
  TdSpread   // TD-count step between adjacent cells around a fixed mean
};

std::string_view to_string(SweepParam param) noexcept;
SweepParam       parse_sweep_param(std::string_view name);

struct SweepSpec
{
  SweepParam                 param = SweepParam::Cells;
  std::vector<double>        values;
  std::vector<std::uint64_t> seeds;
  std::vector<Strategy>      strategies;
  GenConfig                  base = desk_config();
  /// Width of the per-cell TD/AD range used by MeanTds / MeanAds.
  double td_range_width = 60.0;
  double ad_range_width = 10.0;
  /// Mean TD count per cell used by TdSpread.
  double td_spread_mean = 50.0;
};

/// Throws InvalidConfig.
void validate_sweep(SweepSpec const &spec);

/// Generator settings for one sweep point.
GenConfig sweep_point_config(SweepSpec const &spec, double value, std::uint64_t seed);

struct MetricRow
{
  Strategy      strategy = Strategy::Full;
  SweepParam    param    = SweepParam::Cells;
  double        value    = 0.0;
  std::uint64_t seed     = 0;
  std::size_t   cells    = 0;
  double        system_utility             = 0.0;  // per cell
  double        offloading_ratio           = 0.0;
  double        offloading_ratio_variance  = 0.0;
  double        utility_gain               = 0.0;
  LevelTiming   timing;
};

MetricRow make_row(Scenario const &scenario, AllocationOutcome const &outcome, SweepParam param, double value,
                   std::uint64_t seed);

/// Rows ordered by (value, seed, strategy order in the spec). Timing covers
/// the allocation levels only.
std::vector<MetricRow> run_sweep(SweepSpec const &spec);

inline constexpr char const *kCsvHeader =
    "strategy,param,value,seed,cells,system_utility,offloading_ratio,offloading_ratio_variance,"
    "utility_gain,time_level1_s,time_level2_s,time_level3_s,time_total_s";

/// RFC-4180 field quoting.
std::string csv_field(std::string_view text);

void write_csv(std::ostream &out, std::vector<MetricRow> const &rows);

}  // namespace edgealloc
