#include "edgealloc/auction.hpp"

#include "edgealloc/errors.hpp"
#include "edgealloc/model.hpp"

#include <algorithm>
#include <numeric>

namespace edgealloc {

double unit_bid(TaskDevice const &td, std::size_t ad, double fee, Scenario const &scenario)
{
  auto const costs = mode_costs(td, ExecutionMode::aux(ad), fee, 0.0, scenario);
  return (fee - costs.es_home_cost) / td.task.cycles;
}

AuctionInput build_auction_input(Scenario const &scenario, std::size_t cell, std::span<std::size_t const> tasks,
                                 std::span<std::size_t const> cell_ads, std::span<BargainOutcome const> outcomes)
{
  AuctionInput input;
  input.cell = cell;
  for (auto k : cell_ads)
  {
    auto const &ad = scenario.ads[k];
    input.sellers.push_back({k, ad.id, ad.ask, ad.capacity});
  }

  for (auto i : tasks)
  {
    auto const &td = scenario.tds[i];
    AuctionTask entry{i, td.task.id, outcomes[i].fee, td.task.cycles, {}};
    for (auto const &seller : input.sellers)
    {
      AuctionBid bid;
      try
      {
        auto const costs = mode_costs(td, ExecutionMode::aux(seller.ad), entry.fee, 0.0, scenario);
        bid.feasible     = true;
        bid.frequency    = costs.required_frequency;
        bid.unit_bid     = (entry.fee - costs.es_home_cost) / td.task.cycles;
      }
      catch (ModeInfeasible const &)
      {
      }
      entry.bids.push_back(bid);
    }
    input.tasks.push_back(std::move(entry));
  }

  std::stable_sort(input.tasks.begin(), input.tasks.end(), [](AuctionTask const &a, AuctionTask const &b) {
    if (a.fee != b.fee)
    {
      return a.fee > b.fee;
    }
    return a.id < b.id;
  });
  return input;
}

std::vector<std::size_t> ask_order(std::span<AuctionSeller const> sellers)
{
  std::vector<std::size_t> order(sellers.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sellers[a].ask != sellers[b].ask)
    {
      return sellers[a].ask < sellers[b].ask;
    }
    return sellers[a].id < sellers[b].id;
  });
  return order;
}

AuctionResult run_double_auction(AuctionInput const &input)
{
  AuctionResult result;
  result.residual.reserve(input.sellers.size());
  for (auto const &s : input.sellers)
  {
    result.residual.push_back(s.capacity);
  }
  if (input.sellers.size() < 2)
  {
    return result;
  }

  auto const ranked = ask_order(input.sellers);
  for (auto const &task : input.tasks)
  {
    for (std::size_t j = 0; j + 1 < ranked.size(); ++j)
    {
      auto const  seller = ranked[j];
      auto const &bid    = task.bids[seller];
      double const next_ask = input.sellers[ranked[j + 1]].ask;
      if (bid.feasible && bid.unit_bid > next_ask && bid.frequency <= result.residual[seller])
      {
        result.residual[seller] -= bid.frequency;
        result.matches.push_back({task.task, input.sellers[seller].ad, next_ask * task.cycles, bid.frequency,
                                  task.cycles, bid.unit_bid, input.sellers[seller].ask});
        break;
      }
    }
  }
  return result;
}

std::vector<double> ad_rewards(AuctionResult const &result, std::size_t ad_count)
{
  std::vector<double> rewards(ad_count, 0.0);
  for (auto const &m : result.matches)
  {
    rewards.at(m.ad) += m.payment;
  }
  return rewards;
}

}  // namespace edgealloc
