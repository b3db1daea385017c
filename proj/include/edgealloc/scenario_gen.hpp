#pragma once

#include "edgealloc/types.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace edgealloc {

struct Range
{
  double lo = 0.0;
  double hi = 0.0;
};

struct CountRange
{
  std::size_t lo = 0;
  std::size_t hi = 0;
};

enum class ChannelModel
{
  LogDistance,  // reference_gain * d^-exponent, d uniform over the cell disc
  Constant      // every link uses constant_gain
};

/// Scenario generator settings. Defaults reproduce the main simulation table;
/// the remaining fields fill values it leaves open.
struct GenConfig
{
  std::size_t cells = 5;
  CountRange  tds_per_cell{200, 800};
  CountRange  ads_per_cell{20, 40};
  /// When non-empty, fixes the TD count of each cell (size must equal `cells`).
  std::vector<std::size_t> tds_override;

  Range task_size{200e3, 500e3};     // bits
  Range task_cycles{50e6, 500e6};    // cycles
  Range deadline{0.05, 2.0};         // s
  Range value{5.0, 10.0};            // $
  Range td_capacity{0.05e9, 1e9};    // Hz
  Range ad_capacity{0.5e9, 2e9};     // Hz
  Range ask_factor{1.0, 3.0};        // multiples of gamma*k*f_ref^2 ($/cycle)
  double ask_reference_frequency = 1e9;

  double es_capacity         = 10e9;
  double es_energy_coeff     = 5e-27;
  double es_transmit_power   = 10.0;
  double td_transmit_power   = 2.0;
  double device_energy_coeff = 5e-27;
  double backhaul_rate       = 100e6;
  double interference        = 0.0;

  ChannelModel channel            = ChannelModel::LogDistance;
  double       cell_radius        = 500.0;  // m
  double       min_distance       = 10.0;   // m
  double       path_loss_exponent = 3.5;
  double       reference_gain     = 1e-4;   // gain at 1 m
  double       constant_gain      = 5e-14;

  EconParams    econ;
  std::uint64_t seed = 1;
};

/// Table-scale defaults (M=5, 200-800 TDs and 20-40 ADs per cell).
GenConfig paper_config();

/// Ten-fold smaller populations for quick sweeps.
GenConfig desk_config();

/// Throws InvalidConfig.
void validate_config(GenConfig const &config);

/// Portable per-cell random stream. Draws are derived from std::mt19937_64
/// bits only, so results do not depend on the standard library's distributions.
class CellStream
{
public:
  CellStream(std::uint64_t seed, std::size_t cell);

  double      uniform();  // [0, 1)
  double      uniform(Range r);
  std::size_t uniform(CountRange r);

private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic for a given config; each cell draws from its own stream.
Scenario generate(GenConfig const &config);

inline constexpr int kScenarioSchemaVersion = 1;

std::string to_json(Scenario const &scenario);

/// Throws SchemaError naming the offending field.
Scenario from_json(std::string const &text);

/// Throws IOError.
void     save(Scenario const &scenario, std::filesystem::path const &path);
Scenario load(std::filesystem::path const &path);

}  // namespace edgealloc
