#include "edgealloc/model.hpp"
#include "edgealloc/orchestrator.hpp"

#include <algorithm>

namespace edgealloc {

BargainOutcome level1_stackelberg(TaskDevice const &td, EdgeServer const &es, EconParams const &econ)
{
  // Same agreement interval as the Nash solution; only the price differs.
  auto out = nash_bargain(td, es, econ);
  if (out.offload == 1)
  {
    out.fee = out.fee_max;
  }
  return out;
}

ReassignmentPlan level2_round_robin(std::span<CellLoadReport const> reports, Scenario const &scenario,
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
  std::sort(adequate.begin(), adequate.end());
  if (adequate.empty())
  {
    return plan;
  }

  std::size_t cursor = 0;
  for (auto r : overloaded_order(reports))
  {
    auto const home = reports[r].cell;
    for (auto task : reports[r].spill)
    {
      for (std::size_t step = 0; step < adequate.size(); ++step)
      {
        auto const slot   = (cursor + step) % adequate.size();
        auto const target = adequate[slot];
        double     f      = 0.0;
        double     u      = 0.0;
        if (neighbor_placement(scenario, task, target, outcomes[task].fee, f, u) && f <= plan.residual[target])
        {
          plan.residual[target] -= f;
          plan.moves.push_back({task, home, target, f, u});
          plan.neighbor_tasks[home].push_back(task);
          cursor = (slot + 1) % adequate.size();
          break;
        }
      }
    }
  }
  return plan;
}

AuctionResult level3_vickrey(AuctionInput const &input)
{
  AuctionResult result;
  for (auto const &s : input.sellers)
  {
    result.residual.push_back(s.capacity);
  }

  auto const ranked = ask_order(input.sellers);
  for (auto const &task : input.tasks)
  {
    std::size_t found = 0;
    std::size_t first = 0;
    std::size_t second = 0;
    for (auto s : ranked)
    {
      auto const &bid = task.bids[s];
      if (bid.feasible && bid.frequency <= result.residual[s])
      {
        (found == 0 ? first : second) = s;
        if (++found == 2)
        {
          break;
        }
      }
    }
    if (found < 2)
    {
      continue;
    }
    auto const &bid   = task.bids[first];
    double const price = input.sellers[second].ask;
    result.residual[first] -= bid.frequency;
    result.matches.push_back({task.task, input.sellers[first].ad, price * task.cycles, bid.frequency, task.cycles,
                              bid.unit_bid, input.sellers[first].ask});
  }
  return result;
}

}  // namespace edgealloc
