#pragma once

#include "edgealloc/types.hpp"

#include <span>
#include <vector>

namespace edgealloc {

/// Result of the TD/ES bargaining game. `fee_min` is the ES compute cost and
/// `fee_max` the TD's largest acceptable fee; offloading is agreed only when
/// fee_min < fee_max.
struct BargainOutcome
{
  int    offload      = 0;
  double fee          = 0.0;
  double fee_min      = 0.0;
  double fee_max      = 0.0;
  double es_frequency = 0.0;  // Hz demanded from the primary ES; 0 if infeasible

  friend bool operator==(BargainOutcome const &, BargainOutcome const &) = default;
};

/// Closed-form Nash bargaining solution between a TD and its primary ES.
///
/// The objective (u_off - u_loc) * u_esp is the concave quadratic
/// -fee^2 + B*fee + const with B = fee_max + fee_min, so the interior optimum
/// B/2 is the midpoint of the agreement interval. The clamp branches are kept
/// as written although they cannot fire while fee_min < fee_max.
BargainOutcome nash_bargain(TaskDevice const &td, EdgeServer const &es, EconParams const &econ);

/// Sum of primary-ES frequency demands over agreed offloaders.
double cell_demand(std::span<BargainOutcome const> outcomes);

/// ES gain per unit of frequency, (fee - compute cost) / f.
double task_priority(BargainOutcome const &outcome);

struct FilterEntry
{
  std::size_t task      = 0;  // index into Scenario::tds
  std::size_t id        = 0;  // tie-break key
  double      frequency = 0.0;
  double      priority  = 0.0;
};

struct CellLoadReport
{
  std::size_t              cell     = 0;
  double                   demand   = 0.0;
  double                   capacity = 0.0;
  double                   residual = 0.0;  // capacity left after the keep set
  std::vector<std::size_t> keep;            // executed on the primary ES
  std::vector<std::size_t> spill;           // descending priority order

  bool overloaded() const noexcept
  {
    return demand > capacity;
  }
};

/// Priority-based task filter for one cell. Entries are ranked by descending
/// priority (ties: ascending id) and kept while capacity remains; an entry that
/// does not fit is spilled and the scan continues.
CellLoadReport filter_overloaded(std::size_t cell, double capacity, std::span<FilterEntry const> entries);

/// Builds the filter entries for one cell from its TDs' bargaining outcomes.
std::vector<FilterEntry> filter_entries(Scenario const &scenario, std::span<std::size_t const> cell_tds,
                                        std::span<BargainOutcome const> outcomes);

}  // namespace edgealloc
