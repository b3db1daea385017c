#include "edgealloc/model.hpp"

#include "edgealloc/errors.hpp"

#include <cmath>
#include <string>

namespace edgealloc {

double shannon_rate(double bandwidth, double power, RadioLink const &link, double noise_power)
{
  return bandwidth * std::log2(1.0 + power * link.gain / (link.interference + noise_power));
}

double uplink_rate(TaskDevice const &td, EconParams const &econ)
{
  return shannon_rate(econ.bandwidth, td.transmit_power, td.uplink, econ.noise_power);
}

double downlink_rate(EdgeServer const &es, AuxDevice const &ad, EconParams const &econ)
{
  return shannon_rate(econ.bandwidth, es.transmit_power, ad.downlink, econ.noise_power);
}

double transfer_delay(double bits, double rate)
{
  return bits / rate;
}

double compute_cost(double gamma, double energy_coeff, double frequency, double cycles)
{
  return gamma * energy_coeff * frequency * frequency * cycles;
}

double required_frequency(Task const &task, double upstream_delay)
{
  double const budget = task.deadline - upstream_delay;
  if (!(budget > 0.0))
  {
    throw ModeInfeasible("task " + std::to_string(task.id) + ": deadline consumed by transfers");
  }
  return task.cycles / budget;
}

double upstream_delay(TaskDevice const &td, ExecutionMode mode, Scenario const &scenario)
{
  if (mode.kind == ModeKind::Local)
  {
    return 0.0;
  }
  double const up = transfer_delay(td.task.size, uplink_rate(td, scenario.econ));
  switch (mode.kind)
  {
  case ModeKind::PrimaryES:
    return up;
  case ModeKind::NeighborES:
    return up + transfer_delay(td.task.size, scenario.backhaul.rate(td.cell, mode.target));
  case ModeKind::AD:
    return up + transfer_delay(td.task.size, downlink_rate(scenario.ess.at(td.cell),
                                                           scenario.ads.at(mode.target), scenario.econ));
  case ModeKind::Local:
    break;
  }
  return 0.0;
}

double required_frequency(TaskDevice const &td, ExecutionMode mode, Scenario const &scenario)
{
  return required_frequency(td.task, upstream_delay(td, mode, scenario));
}

CostBreakdown mode_costs(TaskDevice const &td, ExecutionMode mode, double fee, double reward,
                         Scenario const &scenario)
{
  auto const &econ = scenario.econ;
  auto const &task = td.task;

  CostBreakdown out;
  out.required_frequency = required_frequency(td, mode, scenario);

  if (mode.kind == ModeKind::Local)
  {
    out.td_cost = compute_cost(econ.gamma, td.energy_coeff, out.required_frequency, task.cycles);
    return out;
  }

  auto const &home = scenario.ess.at(td.cell);
  double const t_up = transfer_delay(task.size, uplink_rate(td, econ));
  out.td_cost       = econ.gamma * td.transmit_power * t_up + fee;

  switch (mode.kind)
  {
  case ModeKind::PrimaryES:
    out.es_home_cost = compute_cost(econ.gamma, home.energy_coeff, out.required_frequency, task.cycles);
    break;
  case ModeKind::NeighborES:
  {
    auto const &remote = scenario.ess.at(mode.target);
    double const t_fwd = transfer_delay(task.size, scenario.backhaul.rate(td.cell, mode.target));
    out.es_home_cost   = econ.gamma * home.transmit_power * t_fwd;
    out.es_remote_cost = compute_cost(econ.gamma, remote.energy_coeff, out.required_frequency, task.cycles);
    break;
  }
  case ModeKind::AD:
  {
    auto const &ad   = scenario.ads.at(mode.target);
    double const t_fwd = transfer_delay(task.size, downlink_rate(home, ad, econ));
    out.es_home_cost   = econ.gamma * home.transmit_power * t_fwd + reward;
    out.ad_cost        = compute_cost(econ.gamma, ad.energy_coeff, out.required_frequency, task.cycles);
    break;
  }
  case ModeKind::Local:
    break;
  }
  return out;
}

double local_utility(TaskDevice const &td, EconParams const &econ)
{
  double const f = td.task.cycles / td.task.deadline;
  if (td.capacity < f)
  {
    return 0.0;
  }
  return td.task.value - compute_cost(econ.gamma, td.energy_coeff, f, td.task.cycles);
}

double offload_utility(TaskDevice const &td, double fee, EconParams const &econ)
{
  double const t_up = transfer_delay(td.task.size, uplink_rate(td, econ));
  return td.task.value - (econ.gamma * td.transmit_power * t_up + fee);
}

double td_utility(TaskDevice const &td, Decision const &decision, Scenario const &scenario)
{
  if (decision.offload == 0)
  {
    return local_utility(td, scenario.econ);
  }
  return offload_utility(td, decision.fee, scenario.econ);
}

double ad_utility(AuxDevice const &ad, double delegated_cycles, double reward)
{
  return reward - ad.ask * delegated_cycles;
}

void check_decision(Scenario const &scenario, std::size_t index, Decision const &decision)
{
  auto const &td   = scenario.tds.at(index);
  auto const  name = "task " + std::to_string(td.task.id);
  if (decision.offload != 0 && decision.offload != 1)
  {
    throw InfeasibleDecision(name + ": offload flag must be 0 or 1 (14a)");
  }
  if (decision.offload == 0)
  {
    if (decision.mode.kind != ModeKind::Local)
    {
      throw InfeasibleDecision(name + ": local decision with a remote location (14c)");
    }
    return;
  }
  switch (decision.mode.kind)
  {
  case ModeKind::Local:
    throw InfeasibleDecision(name + ": offloaded task without a remote mode (14b)");
  case ModeKind::PrimaryES:
    return;
  case ModeKind::NeighborES:
    if (decision.mode.target >= scenario.ess.size() || decision.mode.target == td.cell)
    {
      throw InfeasibleDecision(name + ": neighbor target must be another ES (14e)");
    }
    return;
  case ModeKind::AD:
    if (decision.mode.target >= scenario.ads.size() || scenario.ads[decision.mode.target].cell != td.cell)
    {
      throw InfeasibleDecision(name + ": AD target must be in the home cell (14f)");
    }
    return;
  }
}

double esp_margin(Scenario const &scenario, std::size_t index, Decision const &decision)
{
  check_decision(scenario, index, decision);
  if (decision.offload == 0)
  {
    return 0.0;
  }
  auto const costs = mode_costs(scenario.tds[index], decision.mode, decision.fee, decision.reward, scenario);
  return decision.fee - costs.es_home_cost - costs.es_remote_cost;
}

double esp_utility(Scenario const &scenario, std::span<Decision const> decisions)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < decisions.size(); ++i)
  {
    sum += esp_margin(scenario, i, decisions[i]);
  }
  return sum;
}

UtilityLedger party_utilities(Scenario const &scenario, std::span<Decision const> decisions)
{
  if (decisions.size() != scenario.tds.size())
  {
    throw InfeasibleDecision("decision count does not match task count");
  }

  UtilityLedger out;
  out.td.resize(scenario.tds.size());
  out.ad_reward.assign(scenario.ads.size(), 0.0);
  out.ad_cycles.assign(scenario.ads.size(), 0.0);

  out.esp = esp_utility(scenario, decisions);
  for (std::size_t i = 0; i < decisions.size(); ++i)
  {
    out.td[i] = td_utility(scenario.tds[i], decisions[i], scenario);
    if (decisions[i].offload == 1 && decisions[i].mode.kind == ModeKind::AD)
    {
      out.ad_reward[decisions[i].mode.target] += decisions[i].reward;
      out.ad_cycles[decisions[i].mode.target] += scenario.tds[i].task.cycles;
    }
  }
  out.ad.resize(scenario.ads.size());
  for (std::size_t k = 0; k < scenario.ads.size(); ++k)
  {
    out.ad[k] = ad_utility(scenario.ads[k], out.ad_cycles[k], out.ad_reward[k]);
  }

  out.total = out.esp;
  for (double u : out.td)
  {
    out.total += u;
  }
  for (double u : out.ad)
  {
    out.total += u;
  }
  return out;
}

double system_utility(Scenario const &scenario, std::span<Decision const> decisions)
{
  return party_utilities(scenario, decisions).total;
}

double system_utility_per_task(Scenario const &scenario, std::span<Decision const> decisions)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < decisions.size(); ++i)
  {
    auto const &td = scenario.tds[i];
    auto const &d  = decisions[i];
    if (d.offload == 0)
    {
      check_decision(scenario, i, d);
      sum += local_utility(td, scenario.econ);
      continue;
    }
    double term = esp_margin(scenario, i, d) + offload_utility(td, d.fee, scenario.econ);
    if (d.mode.kind == ModeKind::AD)
    {
      term += d.reward - scenario.ads[d.mode.target].ask * td.task.cycles;
    }
    sum += term;
  }
  return sum;
}

std::vector<Decision> all_local(Scenario const &scenario)
{
  return std::vector<Decision>(scenario.tds.size());
}

}  // namespace edgealloc
