#pragma once

#include "edgealloc/bargaining.hpp"
#include "edgealloc/types.hpp"

#include <span>
#include <vector>

namespace edgealloc {

struct Reassignment
{
  std::size_t task      = 0;  // index into Scenario::tds
  std::size_t from      = 0;  // home ES
  std::size_t to        = 0;  // executing ES
  double      frequency = 0.0;
  double      margin    = 0.0;  // ESP gain for this placement

  friend bool operator==(Reassignment const &, Reassignment const &) = default;
};

/// Central-controller output of the second level. `residual` holds every ES's
/// free capacity after the plan (unchanged for overloaded ESs).
struct ReassignmentPlan
{
  std::vector<Reassignment>             moves;
  std::vector<std::vector<std::size_t>> neighbor_tasks;  // per home cell
  std::vector<double>                   residual;

  friend bool operator==(ReassignmentPlan const &, ReassignmentPlan const &) = default;
};

/// Overload magnitude demand - capacity.
double es_priority(CellLoadReport const &report);

/// Frequency and ESP margin of running `task` on neighbor `target`; returns
/// false when the forwarded task can no longer meet its deadline.
bool neighbor_placement(Scenario const &scenario, std::size_t task, std::size_t target, double fee,
                        double &frequency, double &margin);

/// Greedy inter-ES scheduling. Overloaded cells go in descending overload
/// (ties: cell id); each scans the underloaded ESs by descending backhaul rate
/// (ties: ES id) and takes the first one with room and a strictly positive margin.
ReassignmentPlan schedule_across_es(std::span<CellLoadReport const> reports, Scenario const &scenario,
                                    std::span<BargainOutcome const> outcomes);

/// Overloaded reports in processing order.
std::vector<std::size_t> overloaded_order(std::span<CellLoadReport const> reports);

}  // namespace edgealloc
