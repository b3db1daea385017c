#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace edgealloc {

/// Tolerance used for economic equalities and capacity comparisons.
inline constexpr double kEpsilon = 1e-9;

struct EconParams
{
  double gamma       = 1.0;    // $ per joule
  double noise_power = 1e-13;  // W (-100 dBm)
  double bandwidth   = 20e6;   // Hz

  friend bool operator==(EconParams const &, EconParams const &) = default;
};

struct RadioLink
{
  double gain         = 1.0;  // |h|^2
  double interference = 0.0;  // W

  friend bool operator==(RadioLink const &, RadioLink const &) = default;
};

struct Task
{
  std::size_t id       = 0;
  double      size     = 0.0;  // bits
  double      cycles   = 0.0;  // CPU cycles
  double      deadline = 0.0;  // seconds
  double      value    = 0.0;  // $

  friend bool operator==(Task const &, Task const &) = default;
};

/// Task IoT device: owns exactly one task and may offload it to its cell's ES.
struct TaskDevice
{
  std::size_t id             = 0;
  std::size_t cell           = 0;
  Task        task;
  double      capacity       = 0.0;  // Hz
  double      transmit_power = 2.0;  // W
  double      energy_coeff   = 5e-27;
  RadioLink   uplink;

  friend bool operator==(TaskDevice const &, TaskDevice const &) = default;
};

/// Auxiliary IoT device: sells idle cycles to its cell's ES through the auction.
struct AuxDevice
{
  std::size_t id           = 0;
  std::size_t cell         = 0;
  double      capacity     = 0.0;  // Hz
  double      energy_coeff = 5e-27;
  double      ask          = 0.0;  // $ per cycle
  RadioLink   downlink;            // ES -> AD

  friend bool operator==(AuxDevice const &, AuxDevice const &) = default;
};

/// Edge server; its id is the cell id it serves.
struct EdgeServer
{
  std::size_t id             = 0;
  double      capacity       = 10e9;  // Hz
  double      energy_coeff   = 5e-27;
  double      transmit_power = 10.0;  // W

  friend bool operator==(EdgeServer const &, EdgeServer const &) = default;
};

/// Dense ordered-pair inter-ES rate table (bits/s). Diagonal entries are unused.
class BackhaulMatrix
{
public:
  BackhaulMatrix() = default;
  explicit BackhaulMatrix(std::size_t cells, double rate = 100e6);

  std::size_t size() const noexcept
  {
    return cells_;
  }

  double rate(std::size_t from, std::size_t to) const;
  void   set_rate(std::size_t from, std::size_t to, double rate);

  friend bool operator==(BackhaulMatrix const &, BackhaulMatrix const &) = default;

private:
  std::size_t         cells_ = 0;
  std::vector<double> rates_;
};

struct Scenario
{
  EconParams              econ;
  std::vector<EdgeServer> ess;
  std::vector<TaskDevice> tds;
  std::vector<AuxDevice>  ads;
  BackhaulMatrix          backhaul;
  std::uint64_t           seed = 0;

  std::size_t cell_count() const noexcept
  {
    return ess.size();
  }

  friend bool operator==(Scenario const &, Scenario const &) = default;
};

/// Checks every type invariant and cross reference; throws InvalidScenario.
void validate_scenario(Scenario const &scenario);

/// Per-cell membership lists (indices into Scenario::tds / Scenario::ads).
struct CellIndex
{
  std::vector<std::vector<std::size_t>> tds;
  std::vector<std::vector<std::size_t>> ads;

  explicit CellIndex(Scenario const &scenario);
};

enum class ModeKind
{
  Local,
  PrimaryES,
  NeighborES,
  AD
};

/// Where a task executes. `target` is an ES index for NeighborES and an index
/// into Scenario::ads for AD; it is ignored otherwise.
struct ExecutionMode
{
  ModeKind    kind   = ModeKind::Local;
  std::size_t target = 0;

  static constexpr ExecutionMode local() noexcept
  {
    return {};
  }
  static constexpr ExecutionMode primary() noexcept
  {
    return {ModeKind::PrimaryES, 0};
  }
  static constexpr ExecutionMode neighbor(std::size_t es) noexcept
  {
    return {ModeKind::NeighborES, es};
  }
  static constexpr ExecutionMode aux(std::size_t ad) noexcept
  {
    return {ModeKind::AD, ad};
  }

  friend bool operator==(ExecutionMode const &, ExecutionMode const &) = default;
};

struct CostBreakdown
{
  double td_cost            = 0.0;
  double es_home_cost       = 0.0;
  double es_remote_cost     = 0.0;
  double ad_cost            = 0.0;
  double required_frequency = 0.0;  // at the executing node
};

/// Per-task solution tuple (x, y/z, alpha) plus the reward paid to an AD.
struct Decision
{
  int           offload = 0;
  ExecutionMode mode;
  double        fee    = 0.0;
  double        reward = 0.0;

  friend bool operator==(Decision const &, Decision const &) = default;
};

}  // namespace edgealloc
