#pragma once

#include "edgealloc/types.hpp"

namespace fixture {

using namespace edgealloc;

/// |h|^2 giving p|h|^2/N0 = snr at the default noise power.
inline double gain_for_snr(double power, double snr)
{
  return snr * 1e-13 / power;
}

/// TD with a 20 Mbit/s uplink (p = 2 W, SNR 1).
inline TaskDevice td(std::size_t id, std::size_t cell, double size, double cycles, double deadline, double value,
                     double capacity)
{
  TaskDevice d;
  d.id          = id;
  d.cell        = cell;
  d.task        = {id, size, cycles, deadline, value};
  d.capacity    = capacity;
  d.uplink.gain = gain_for_snr(2.0, 1.0);
  return d;
}

/// AD with a 20 Mbit/s downlink from a 10 W ES.
inline AuxDevice ad(std::size_t id, std::size_t cell, double capacity, double ask)
{
  AuxDevice a;
  a.id            = id;
  a.cell          = cell;
  a.capacity      = capacity;
  a.ask           = ask;
  a.downlink.gain = gain_for_snr(10.0, 1.0);
  return a;
}

inline Scenario cells(std::size_t m, double es_capacity = 10e9)
{
  Scenario s;
  for (std::size_t i = 0; i < m; ++i)
  {
    EdgeServer es;
    es.id       = i;
    es.capacity = es_capacity;
    s.ess.push_back(es);
  }
  s.backhaul = BackhaulMatrix(m);
  return s;
}

}  // namespace fixture
