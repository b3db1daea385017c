#pragma once

#include "edgealloc/types.hpp"

#include <span>
#include <vector>

namespace edgealloc {

/// Shannon rate W*log2(1 + p|h|^2/(I+N0)) in bits/s.
double shannon_rate(double bandwidth, double power, RadioLink const &link, double noise_power);

double uplink_rate(TaskDevice const &td, EconParams const &econ);

/// ES -> AD rate, driven by the ES transmit power over the AD's downlink.
double downlink_rate(EdgeServer const &es, AuxDevice const &ad, EconParams const &econ);

double transfer_delay(double bits, double rate);

/// Energy cost gamma*k*f^2*C of running `cycles` at frequency `f`.
double compute_cost(double gamma, double energy_coeff, double frequency, double cycles);

/// Lowest frequency meeting the deadline after `upstream_delay` seconds of
/// transfers. Throws ModeInfeasible when no time is left.
double required_frequency(Task const &task, double upstream_delay);

/// Transfer delay accumulated before execution starts under `mode`.
double upstream_delay(TaskDevice const &td, ExecutionMode mode, Scenario const &scenario);

double required_frequency(TaskDevice const &td, ExecutionMode mode, Scenario const &scenario);

/// Per-party costs of executing `td`'s task under `mode`, with fee `fee` paid
/// by the TD and `reward` paid by the ESP to an AD (AD mode only).
CostBreakdown mode_costs(TaskDevice const &td, ExecutionMode mode, double fee, double reward,
                         Scenario const &scenario);

/// TD utility of processing locally; zero when the device cannot meet the deadline.
double local_utility(TaskDevice const &td, EconParams const &econ);

/// TD utility of offloading for fee `fee`, independent of where the task runs.
double offload_utility(TaskDevice const &td, double fee, EconParams const &econ);

double td_utility(TaskDevice const &td, Decision const &decision, Scenario const &scenario);

double ad_utility(AuxDevice const &ad, double delegated_cycles, double reward);

/// Throws InfeasibleDecision when the decision breaks (14a)-(14f) for task `index`.
void check_decision(Scenario const &scenario, std::size_t index, Decision const &decision);

/// ESP margin u_esp^{n,z} for one offloaded task (0 for local).
double esp_margin(Scenario const &scenario, std::size_t index, Decision const &decision);

double esp_utility(Scenario const &scenario, std::span<Decision const> decisions);

struct UtilityLedger
{
  double              esp = 0.0;
  std::vector<double> td;
  std::vector<double> ad;
  std::vector<double> ad_reward;
  std::vector<double> ad_cycles;
  double              total = 0.0;
};

/// Utilities of every party; AD rewards/cycles are aggregated from the decisions.
UtilityLedger party_utilities(Scenario const &scenario, std::span<Decision const> decisions);

double system_utility(Scenario const &scenario, std::span<Decision const> decisions);

/// Same objective summed task by task: u_esp^{n,z} + u_ad^{n} + u_off for
/// offloaded tasks, u_loc otherwise.
double system_utility_per_task(Scenario const &scenario, std::span<Decision const> decisions);

/// Every TD processes locally.
std::vector<Decision> all_local(Scenario const &scenario);

}  // namespace edgealloc
