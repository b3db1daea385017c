#include "edgealloc/orchestrator.hpp"

#include "edgealloc/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace edgealloc {

std::string_view to_string(Strategy strategy) noexcept
{
  switch (strategy)
  {
  case Strategy::Full:
    return "full";
  case Strategy::ConventionalEdge:
    return "conventional-edge";
  case Strategy::CollaborativeEdge:
    return "collaborative-edge";
  case Strategy::CollaborativeEdgeEnd:
    return "collaborative-edge-end";
  case Strategy::Level1Stackelberg:
    return "level1-stackelberg";
  case Strategy::Level2RoundRobin:
    return "level2-round-robin";
  case Strategy::Level3Vickrey:
    return "level3-vickrey";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name)
{
  for (auto s : kAllStrategies)
  {
    if (to_string(s) == name)
    {
      return s;
    }
  }
  throw InvalidConfig("unknown strategy '" + std::string(name) + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool uses_level2(Strategy s)
{
  return s != Strategy::ConventionalEdge && s != Strategy::CollaborativeEdgeEnd;
}

bool uses_level3(Strategy s)
{
  return s != Strategy::ConventionalEdge && s != Strategy::CollaborativeEdge;
}

void fill_loads(Scenario const &scenario, AllocationOutcome &out)
{
  out.es_load.assign(scenario.ess.size(), 0.0);
  out.ad_load.assign(scenario.ads.size(), 0.0);
  for (std::size_t i = 0; i < out.decisions.size(); ++i)
  {
    auto const &d = out.decisions[i];
    if (d.offload != 1)
    {
      continue;
    }
    double const f = required_frequency(scenario.tds[i], d.mode, scenario);
    switch (d.mode.kind)
    {
    case ModeKind::PrimaryES:
      out.es_load[scenario.tds[i].cell] += f;
      break;
    case ModeKind::NeighborES:
      out.es_load[d.mode.target] += f;
      break;
    case ModeKind::AD:
      out.ad_load[d.mode.target] += f;
      break;
    case ModeKind::Local:
      break;
    }
  }
}

}  // namespace

AllocationOutcome run(Scenario const &scenario, Strategy strategy)
{
  validate_scenario(scenario);

  CellIndex const   cells(scenario);
  auto const        cell_count = scenario.cell_count();
  AllocationOutcome out;
  out.strategy = strategy;
  out.decisions.assign(scenario.tds.size(), Decision{});
  out.bargains.resize(scenario.tds.size());

  // Level 1: independent per cell.
  auto start = Clock::now();
  for (std::size_t m = 0; m < cell_count; ++m)
  {
    auto const &es = scenario.ess[m];
    for (auto i : cells.tds[m])
    {
      out.bargains[i] = strategy == Strategy::Level1Stackelberg
                            ? level1_stackelberg(scenario.tds[i], es, scenario.econ)
                            : nash_bargain(scenario.tds[i], es, scenario.econ);
    }
    auto const entries = filter_entries(scenario, cells.tds[m], out.bargains);
    out.reports.push_back(filter_overloaded(m, es.capacity, entries));
    for (auto i : out.reports.back().keep)
    {
      out.decisions[i] = {1, ExecutionMode::primary(), out.bargains[i].fee, 0.0};
    }
  }
  out.timing.level1 = seconds_since(start);

  auto const overloaded = static_cast<std::size_t>(
      std::count_if(out.reports.begin(), out.reports.end(), [](auto const &r) { return r.overloaded(); }));

  std::vector<std::vector<std::size_t>> unplaced(cell_count);
  for (auto const &r : out.reports)
  {
    unplaced[r.cell] = r.spill;
  }

  if (overloaded > 0 && overloaded < cell_count && uses_level2(strategy))
  {
    start     = Clock::now();
    auto plan = strategy == Strategy::Level2RoundRobin
                    ? level2_round_robin(out.reports, scenario, out.bargains)
                    : schedule_across_es(out.reports, scenario, out.bargains);
    for (auto const &mv : plan.moves)
    {
      out.decisions[mv.task] = {1, ExecutionMode::neighbor(mv.to), out.bargains[mv.task].fee, 0.0};
      auto &pending          = unplaced[mv.from];
      pending.erase(std::find(pending.begin(), pending.end(), mv.task));
    }
    out.timing.level2 = seconds_since(start);
    out.level2_ran    = true;
  }

  bool const pending = std::any_of(unplaced.begin(), unplaced.end(), [](auto const &v) { return !v.empty(); });
  if (overloaded > 0 && pending && uses_level3(strategy))
  {
    start = Clock::now();
    for (std::size_t m = 0; m < cell_count; ++m)
    {
      if (unplaced[m].empty())
      {
        continue;
      }
      auto const input  = build_auction_input(scenario, m, unplaced[m], cells.ads[m], out.bargains);
      auto const result = strategy == Strategy::Level3Vickrey ? level3_vickrey(input) : run_double_auction(input);
      for (auto const &match : result.matches)
      {
        out.decisions[match.task] = {1, ExecutionMode::aux(match.ad), out.bargains[match.task].fee, match.payment};
      }
    }
    out.timing.level3 = seconds_since(start);
    out.level3_ran    = true;
  }

  // Anything still unplaced keeps the default local decision.
  out.utility = party_utilities(scenario, out.decisions);
  fill_loads(scenario, out);
  return out;
}

std::vector<Violation> validate(Scenario const &scenario, AllocationOutcome const &outcome)
{
  std::vector<Violation> found;
  auto report = [&](char const *letter, std::string detail) { found.push_back({letter, std::move(detail)}); };

  auto const &decisions = outcome.decisions;
  if (decisions.size() != scenario.tds.size())
  {
    report("14b", "decision count " + std::to_string(decisions.size()) + " != task count " +
                      std::to_string(scenario.tds.size()));
    return found;
  }

  bool structural = true;
  std::vector<double> es_load(scenario.ess.size(), 0.0);
  std::vector<double> ad_load(scenario.ads.size(), 0.0);
  std::vector<double> ad_reward(scenario.ads.size(), 0.0);
  std::vector<double> ad_cycles(scenario.ads.size(), 0.0);

  for (std::size_t i = 0; i < decisions.size(); ++i)
  {
    auto const &td   = scenario.tds[i];
    auto const &d    = decisions[i];
    auto const  name = "task " + std::to_string(td.task.id);

    if (d.offload != 0 && d.offload != 1)
    {
      report("14a", name + ": offload flag " + std::to_string(d.offload));
      structural = false;
      continue;
    }
    if (d.offload == 0)
    {
      if (d.mode.kind != ModeKind::Local)
      {
        report("14c", name + ": local decision with a remote location");
        structural = false;
      }
      continue;
    }
    if (d.fee < 0.0)
    {
      report("14g", name + ": negative fee");
    }

    bool location_ok = true;
    switch (d.mode.kind)
    {
    case ModeKind::Local:
      report("14b", name + ": offloaded without a remote execution mode");
      location_ok = false;
      break;
    case ModeKind::PrimaryES:
      break;
    case ModeKind::NeighborES:
      if (d.mode.target >= scenario.ess.size() || d.mode.target == td.cell)
      {
        report("14e", name + ": neighbor target is not another ES");
        location_ok = false;
      }
      break;
    case ModeKind::AD:
      if (d.mode.target >= scenario.ads.size() || scenario.ads[d.mode.target].cell != td.cell)
      {
        report("14f", name + ": AD target outside the home cell");
        location_ok = false;
      }
      break;
    }
    if (!location_ok)
    {
      structural = false;
      continue;
    }

    double f = 0.0;
    try
    {
      f = required_frequency(td, d.mode, scenario);
    }
    catch (ModeInfeasible const &)
    {
      report("14i", name + ": execution mode cannot meet the deadline");
      structural = false;
      continue;
    }
    switch (d.mode.kind)
    {
    case ModeKind::PrimaryES:
      es_load[td.cell] += f;
      break;
    case ModeKind::NeighborES:
      es_load[d.mode.target] += f;
      break;
    case ModeKind::AD:
      ad_load[d.mode.target] += f;
      ad_reward[d.mode.target] += d.reward;
      ad_cycles[d.mode.target] += td.task.cycles;
      break;
    case ModeKind::Local:
      break;
    }
  }

  for (std::size_t m = 0; m < scenario.ess.size(); ++m)
  {
    if (es_load[m] > scenario.ess[m].capacity * (1.0 + kEpsilon))
    {
      report("14i", "ES " + std::to_string(m) + " allocated " + std::to_string(es_load[m]) + " Hz > capacity");
    }
  }
  for (std::size_t k = 0; k < scenario.ads.size(); ++k)
  {
    auto const &ad = scenario.ads[k];
    if (ad_load[k] > ad.capacity * (1.0 + kEpsilon))
    {
      report("14i", "AD " + std::to_string(ad.id) + " allocated " + std::to_string(ad_load[k]) + " Hz > capacity");
    }
    if (ad_cycles[k] > 0.0 && ad_reward[k] < ad.ask * ad_cycles[k] * (1.0 - kEpsilon))
    {
      report("14h", "AD " + std::to_string(ad.id) + " paid below its ask");
    }
  }

  if (!structural)
  {
    return found;
  }

  auto const ledger = party_utilities(scenario, decisions);
  if (ledger.esp < -kEpsilon)
  {
    report("14j", "ESP utility " + std::to_string(ledger.esp) + " < 0");
  }
  for (std::size_t i = 0; i < ledger.td.size(); ++i)
  {
    if (ledger.td[i] < -kEpsilon)
    {
      report("14k", "task " + std::to_string(scenario.tds[i].task.id) + ": TD utility < 0");
    }
  }
  for (std::size_t k = 0; k < ledger.ad.size(); ++k)
  {
    if (ledger.ad[k] < -kEpsilon)
    {
      report("14l", "AD " + std::to_string(scenario.ads[k].id) + ": utility < 0");
    }
  }
  return found;
}

}  // namespace edgealloc
