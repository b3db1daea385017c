#include "edgealloc/bargaining.hpp"

#include "edgealloc/model.hpp"

#include <algorithm>
#include <numeric>

namespace edgealloc {

BargainOutcome nash_bargain(TaskDevice const &td, EdgeServer const &es, EconParams const &econ)
{
  BargainOutcome out;
  double const t_up = transfer_delay(td.task.size, uplink_rate(td, econ));
  if (!(td.task.deadline - t_up > 0.0))
  {
    return out;
  }

  double const u_loc = local_utility(td, econ);
  out.es_frequency   = required_frequency(td.task, t_up);
  out.fee_min        = compute_cost(econ.gamma, es.energy_coeff, out.es_frequency, td.task.cycles);
  out.fee_max        = td.task.value - econ.gamma * td.transmit_power * t_up - u_loc;

  if (out.fee_min >= out.fee_max)
  {
    return out;
  }

  double const half_b = 0.5 * (out.fee_max + out.fee_min);
  out.offload         = 1;
  if (out.fee_min < half_b && half_b < out.fee_max)
  {
    out.fee = half_b;
  }
  else if (out.fee_min >= half_b)
  {
    out.fee = out.fee_min;
  }
  else
  {
    out.fee = out.fee_max;
  }
  return out;
}

double cell_demand(std::span<BargainOutcome const> outcomes)
{
  return std::accumulate(outcomes.begin(), outcomes.end(), 0.0, [](double acc, BargainOutcome const &o) {
    return o.offload == 1 ? acc + o.es_frequency : acc;
  });
}

double task_priority(BargainOutcome const &outcome)
{
  double const gain = outcome.fee - outcome.fee_min;
  if (gain == 0.0)
  {
    return 0.0;
  }
  return gain / outcome.es_frequency;
}

CellLoadReport filter_overloaded(std::size_t cell, double capacity, std::span<FilterEntry const> entries)
{
  CellLoadReport report;
  report.cell     = cell;
  report.capacity = capacity;
  report.demand   = std::accumulate(entries.begin(), entries.end(), 0.0,
                                    [](double acc, FilterEntry const &e) { return acc + e.frequency; });

  if (!report.overloaded())
  {
    for (auto const &e : entries)
    {
      report.keep.push_back(e.task);
    }
    report.residual = capacity - report.demand;
    return report;
  }

  std::vector<FilterEntry> ranked(entries.begin(), entries.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](FilterEntry const &a, FilterEntry const &b) {
    if (a.priority != b.priority)
    {
      return a.priority > b.priority;
    }
    return a.id < b.id;
  });

  double left = capacity;
  for (auto const &e : ranked)
  {
    if (e.frequency <= left)
    {
      left -= e.frequency;
      report.keep.push_back(e.task);
    }
    else
    {
      report.spill.push_back(e.task);
    }
  }
  report.residual = left;
  return report;
}

std::vector<FilterEntry> filter_entries(Scenario const &scenario, std::span<std::size_t const> cell_tds,
                                        std::span<BargainOutcome const> outcomes)
{
  std::vector<FilterEntry> entries;
  for (auto i : cell_tds)
  {
    auto const &o = outcomes[i];
    if (o.offload == 1)
    {
      entries.push_back({i, scenario.tds[i].task.id, o.es_frequency, task_priority(o)});
    }
  }
  return entries;
}

}  // namespace edgealloc
