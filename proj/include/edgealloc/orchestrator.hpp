#pragma once

#include "edgealloc/auction.hpp"
#include "edgealloc/bargaining.hpp"
#include "edgealloc/model.hpp"
#include "edgealloc/scheduling.hpp"
#include "edgealloc/types.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace edgealloc {

enum class Strategy
{
  Full,
  ConventionalEdge,
  CollaborativeEdge,
  CollaborativeEdgeEnd,
  Level1Stackelberg,
  Level2RoundRobin,
  Level3Vickrey
};

inline constexpr std::array<Strategy, 7> kAllStrategies = {
    Strategy::Full,
    Strategy::ConventionalEdge,
    Strategy::CollaborativeEdge,
    Strategy::CollaborativeEdgeEnd,
    Strategy::Level1Stackelberg,
    Strategy::Level2RoundRobin,
    Strategy::Level3Vickrey,
};

std::string_view to_string(Strategy strategy) noexcept;

/// Accepts the names produced by to_string(); throws InvalidConfig otherwise.
Strategy parse_strategy(std::string_view name);

struct LevelTiming
{
  double level1 = 0.0;  // seconds, bargaining + filtering
  double level2 = 0.0;
  double level3 = 0.0;

  double total() const noexcept
  {
    return level1 + level2 + level3;
  }
};

struct AllocationOutcome
{
  Strategy                    strategy = Strategy::Full;
  std::vector<Decision>       decisions;  // one per Scenario::tds entry
  std::vector<BargainOutcome> bargains;   // first-level result per task
  std::vector<CellLoadReport> reports;    // per cell
  UtilityLedger               utility;
  std::vector<double>         es_load;  // Hz allocated per ES
  std::vector<double>         ad_load;  // Hz allocated per AD
  LevelTiming                 timing;
  bool                        level2_ran = false;
  bool                        level3_ran = false;
};

/// End-to-end multi-level allocation. Throws InvalidScenario.
AllocationOutcome run(Scenario const &scenario, Strategy strategy);

struct Violation
{
  std::string constraint;  // "14a" .. "14l"
  std::string detail;
};

/// Recomputes loads and utilities from the decisions and reports every
/// violated constraint. Empty means feasible.
std::vector<Violation> validate(Scenario const &scenario, AllocationOutcome const &outcome);

/// Leader-optimal pricing: the ES posts fee_max and the TD accepts at zero surplus.
BargainOutcome level1_stackelberg(TaskDevice const &td, EdgeServer const &es, EconParams const &econ);

/// Cycles over the underloaded ESs in id order, placing each spilled task on
/// the next ES with room regardless of the ESP margin.
ReassignmentPlan level2_round_robin(std::span<CellLoadReport const> reports, Scenario const &scenario,
                                    std::span<BargainOutcome const> outcomes);

/// Second-price rule: each task goes to the cheapest AD with room and pays the
/// second-cheapest such ask per cycle, without checking the ES bid.
AuctionResult level3_vickrey(AuctionInput const &input);

}  // namespace edgealloc
