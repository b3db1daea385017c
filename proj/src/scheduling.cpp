#include "edgealloc/scheduling.hpp"

#include "edgealloc/errors.hpp"
#include "edgealloc/model.hpp"

#include <algorithm>

namespace edgealloc {

double es_priority(CellLoadReport const &report)
{
  return report.demand - report.capacity;
}

bool neighbor_placement(Scenario const &scenario, std::size_t task, std::size_t target, double fee,
                        double &frequency, double &margin)
{
  auto const &td = scenario.tds.at(task);
  try
  {
    auto const costs = mode_costs(td, ExecutionMode::neighbor(target), fee, 0.0, scenario);
    frequency        = costs.required_frequency;
    margin           = fee - costs.es_home_cost - costs.es_remote_cost;
    return true;
  }
  catch (ModeInfeasible const &)
  {
    return false;
  }
}

std::vector<std::size_t> overloaded_order(std::span<CellLoadReport const> reports)
{
  std::vector<std::size_t> order;
  for (std::size_t r = 0; r < reports.size(); ++r)
  {
    if (reports[r].overloaded())
    {
      order.push_back(r);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double const qa = es_priority(reports[a]);
    double const qb = es_priority(reports[b]);
    if (qa != qb)
    {
      return qa > qb;
    }
    return reports[a].cell < reports[b].cell;
  });
  return order;
}

ReassignmentPlan schedule_across_es(std::span<CellLoadReport const> reports, Scenario const &scenario,
                                    std::span<BargainOutcome const> outcomes)
{
  ReassignmentPlan plan;
  plan.neighbor_tasks.resize(scenario.cell_count());
  plan.residual.assign(scenario.cell_count(), 0.0);

  std::vector<std::size_t> adequate;
  for (auto const &r : reports)
  {
    plan.residual.at(r.cell) = r.residual;
    if (!r.overloaded())
    {
      adequate.push_back(r.cell);
    }
  }

  for (auto r : overloaded_order(reports))
  {
    auto const home = reports[r].cell;

    auto targets = adequate;
    std::stable_sort(targets.begin(), targets.end(), [&](std::size_t a, std::size_t b) {
      double const ra = scenario.backhaul.rate(home, a);
      double const rb = scenario.backhaul.rate(home, b);
      if (ra != rb)
      {
        return ra > rb;
      }
      return a < b;
    });

    for (auto task : reports[r].spill)
    {
      for (auto target : targets)
      {
        double f = 0.0;
        double u = 0.0;
        if (!neighbor_placement(scenario, task, target, outcomes[task].fee, f, u))
        {
          continue;
        }
        if (f <= plan.residual[target] && u > 0.0)
        {
          plan.residual[target] -= f;
          plan.moves.push_back({task, home, target, f, u});
          plan.neighbor_tasks[home].push_back(task);
          break;
        }
      }
    }
  }
  return plan;
}

}  // namespace edgealloc
