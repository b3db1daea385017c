#include "edgealloc/types.hpp"

#include "edgealloc/errors.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

namespace edgealloc {

BackhaulMatrix::BackhaulMatrix(std::size_t cells, double rate)
  : cells_(cells)
  , rates_(cells * cells, rate)
{
  for (std::size_t m = 0; m < cells; ++m)
  {
    rates_[m * cells + m] = 0.0;
  }
}

double BackhaulMatrix::rate(std::size_t from, std::size_t to) const
{
  if (from >= cells_ || to >= cells_)
  {
    throw InvalidScenario("backhaul index out of range");
  }
  return rates_[from * cells_ + to];
}

void BackhaulMatrix::set_rate(std::size_t from, std::size_t to, double rate)
{
  if (from >= cells_ || to >= cells_)
  {
    throw InvalidScenario("backhaul index out of range");
  }
  rates_[from * cells_ + to] = rate;
}

namespace {

bool positive(double v)
{
  return std::isfinite(v) && v > 0.0;
}

bool non_negative(double v)
{
  return std::isfinite(v) && v >= 0.0;
}

void require(bool ok, std::string const &what)
{
  if (!ok)
  {
    throw InvalidScenario(what);
  }
}

void check_link(RadioLink const &link, std::string const &where)
{
  require(positive(link.gain), where + ": channel gain must be > 0");
  require(non_negative(link.interference), where + ": interference must be >= 0");
}

}  // namespace

void validate_scenario(Scenario const &s)
{
  require(positive(s.econ.gamma), "econ.gamma must be > 0");
  require(positive(s.econ.noise_power), "econ.noise_power must be > 0");
  require(positive(s.econ.bandwidth), "econ.bandwidth must be > 0");

  auto const cells = s.ess.size();
  for (std::size_t m = 0; m < cells; ++m)
  {
    auto const &es = s.ess[m];
    require(es.id == m, "ess[" + std::to_string(m) + "].id must equal its position");
    require(positive(es.capacity), "ess[" + std::to_string(m) + "].capacity must be > 0");
    require(positive(es.energy_coeff), "ess[" + std::to_string(m) + "].energy_coeff must be > 0");
    require(positive(es.transmit_power), "ess[" + std::to_string(m) + "].transmit_power must be > 0");
  }

  require(s.backhaul.size() == cells, "backhaul dimension must equal the number of cells");
  for (std::size_t a = 0; a < cells; ++a)
  {
    for (std::size_t b = 0; b < cells; ++b)
    {
      if (a != b)
      {
        require(positive(s.backhaul.rate(a, b)), "backhaul rates must be > 0");
      }
    }
  }

  std::unordered_set<std::size_t> td_ids;
  std::unordered_set<std::size_t> task_ids;
  for (std::size_t i = 0; i < s.tds.size(); ++i)
  {
    auto const &td    = s.tds[i];
    auto const  where = "tds[" + std::to_string(i) + "]";
    require(td.cell < cells, where + ": unknown cell");
    require(td_ids.insert(td.id).second, where + ": duplicate id");
    require(task_ids.insert(td.task.id).second, where + ": duplicate task id");
    require(positive(td.task.size), where + ".task.size must be > 0");
    require(positive(td.task.cycles), where + ".task.cycles must be > 0");
    require(positive(td.task.deadline), where + ".task.deadline must be > 0");
    require(non_negative(td.task.value), where + ".task.value must be >= 0");
    require(non_negative(td.capacity), where + ".capacity must be >= 0");
    require(positive(td.transmit_power), where + ".transmit_power must be > 0");
    require(positive(td.energy_coeff), where + ".energy_coeff must be > 0");
    check_link(td.uplink, where + ".uplink");
  }

  std::unordered_set<std::size_t> ad_ids;
  for (std::size_t k = 0; k < s.ads.size(); ++k)
  {
    auto const &ad    = s.ads[k];
    auto const  where = "ads[" + std::to_string(k) + "]";
    require(ad.cell < cells, where + ": unknown cell");
    require(ad_ids.insert(ad.id).second, where + ": duplicate id");
    require(positive(ad.capacity), where + ".capacity must be > 0");
    require(positive(ad.energy_coeff), where + ".energy_coeff must be > 0");
    require(non_negative(ad.ask), where + ".ask must be >= 0");
    check_link(ad.downlink, where + ".downlink");
  }
}

CellIndex::CellIndex(Scenario const &scenario)
  : tds(scenario.cell_count())
  , ads(scenario.cell_count())
{
  for (std::size_t i = 0; i < scenario.tds.size(); ++i)
  {
    tds.at(scenario.tds[i].cell).push_back(i);
  }
  for (std::size_t k = 0; k < scenario.ads.size(); ++k)
  {
    ads.at(scenario.ads[k].cell).push_back(k);
  }
}

}  // namespace edgealloc
