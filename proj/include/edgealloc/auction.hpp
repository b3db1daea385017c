#pragma once

#include "edgealloc/bargaining.hpp"
#include "edgealloc/types.hpp"

#include <span>
#include <vector>

namespace edgealloc {

/// Per (task, AD) quantities the auctioneer needs. `feasible` is false when
/// the ES -> AD transfer leaves no time to compute.
struct AuctionBid
{
  bool   feasible  = false;
  double unit_bid  = 0.0;  // $ per cycle
  double frequency = 0.0;  // Hz the AD must allocate
};

struct AuctionTask
{
  std::size_t             task   = 0;  // index into Scenario::tds
  std::size_t             id     = 0;
  double                  fee    = 0.0;
  double                  cycles = 0.0;
  std::vector<AuctionBid> bids;  // aligned with AuctionInput::sellers
};

struct AuctionSeller
{
  std::size_t ad       = 0;  // index into Scenario::ads
  std::size_t id       = 0;
  double      ask      = 0.0;
  double      capacity = 0.0;
};

struct AuctionInput
{
  std::size_t                cell = 0;
  std::vector<AuctionTask>   tasks;  // processed in this order
  std::vector<AuctionSeller> sellers;
};

struct AuctionMatch
{
  std::size_t task      = 0;
  std::size_t ad        = 0;  // index into Scenario::ads
  double      payment   = 0.0;
  double      frequency = 0.0;
  double      cycles    = 0.0;
  double      unit_bid  = 0.0;
  double      ask       = 0.0;  // matched seller's own ask

  friend bool operator==(AuctionMatch const &, AuctionMatch const &) = default;
};

struct AuctionResult
{
  std::vector<AuctionMatch> matches;
  std::vector<double>       residual;  // aligned with AuctionInput::sellers

  friend bool operator==(AuctionResult const &, AuctionResult const &) = default;
};

/// Highest per-cycle price the ES can pay an AD, (fee - forward cost) / C.
/// Throws ModeInfeasible when the ES -> AD mode cannot meet the deadline.
double unit_bid(TaskDevice const &td, std::size_t ad, double fee, Scenario const &scenario);

/// Assembles the auction for one cell. Tasks are ordered by descending fee
/// (ties: ascending id); sellers keep scenario order.
AuctionInput build_auction_input(Scenario const &scenario, std::size_t cell, std::span<std::size_t const> tasks,
                                 std::span<std::size_t const> cell_ads, std::span<BargainOutcome const> outcomes);

/// Double auction with next-ask pricing. Sellers are ranked by ascending ask
/// (ties: ascending id); a task matches the first rank j with bid > ask[j+1]
/// and room on seller j, paying ask[j+1] per cycle. The top-ranked seller can
/// set a price but never sells.
AuctionResult run_double_auction(AuctionInput const &input);

/// Total reward per AD, indexed like Scenario::ads.
std::vector<double> ad_rewards(AuctionResult const &result, std::size_t ad_count);

/// Seller positions sorted by ascending ask, ties by id.
std::vector<std::size_t> ask_order(std::span<AuctionSeller const> sellers);

}  // namespace edgealloc
