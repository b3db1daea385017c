#include "edgealloc/orchestrator.hpp"
#include "edgealloc/scheduling.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace edgealloc;
using doctest::Approx;

namespace {

CellLoadReport report(std::size_t cell, double demand, double capacity, double residual,
                      std::vector<std::size_t> spill = {})
{
  CellLoadReport r;
  r.cell     = cell;
  r.demand   = demand;
  r.capacity = capacity;
  r.residual = residual;
  r.spill    = std::move(spill);
  return r;
}

/// Random small multi-cell scenario with bargains and filter reports built
/// the same way the orchestrator does.
struct Instance
{
  Scenario                    s;
  std::vector<BargainOutcome> bargains;
  std::vector<CellLoadReport> reports;
  std::vector<oracle::FilterTrace> traces;
};

Instance random_instance(std::mt19937_64 &rng, std::size_t max_cells, std::size_t max_tasks)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Instance in;
  std::size_t const m = 2 + rng() % (max_cells - 1);
  in.s                = fixture::cells(m);
  for (std::size_t c = 0; c < m; ++c)
  {
    in.s.ess[c].capacity = 0.3e9 + 3e9 * u(rng);
    for (std::size_t d = 0; d < m; ++d)
    {
      if (c != d)
      {
        in.s.backhaul.set_rate(c, d, 20e6 + 180e6 * u(rng));
      }
    }
    std::size_t const n = rng() % (max_tasks + 1);
    for (std::size_t i = 0; i < n; ++i)
    {
      auto const id = in.s.tds.size();
      in.s.tds.push_back(fixture::td(id, c, 2e5 + 3e5 * u(rng), 5e7 + 4.5e8 * u(rng), 0.05 + 1.95 * u(rng),
                                     5.0 + 5.0 * u(rng), 5e7 + 9.5e8 * u(rng)));
    }
  }
  CellIndex const idx(in.s);
  in.bargains.resize(in.s.tds.size());
  for (std::size_t c = 0; c < m; ++c)
  {
    for (auto i : idx.tds[c])
    {
      in.bargains[i] = nash_bargain(in.s.tds[i], in.s.ess[c], in.s.econ);
    }
    in.reports.push_back(filter_overloaded(c, in.s.ess[c].capacity, filter_entries(in.s, idx.tds[c], in.bargains)));
    in.traces.push_back(oracle::filter_trace(in.s, c, in.bargains));
  }
  return in;
}

}  // namespace

TEST_CASE("es priority is the overload magnitude")
{
  CHECK(es_priority(report(0, 10e9, 10e9, 0)) == 0.0);
  CHECK(es_priority(report(0, 12e9, 10e9, 0)) == Approx(2e9));
}

TEST_CASE("overloaded order sorts by overflow then id")
{
  std::vector<CellLoadReport> r{report(0, 11e9, 10e9, 0), report(1, 13e9, 10e9, 0), report(2, 5e9, 10e9, 5e9),
                                report(3, 13e9, 10e9, 0)};
  CHECK(overloaded_order(r) == std::vector<std::size_t>{1, 3, 0});
}

TEST_CASE("no spilled tasks gives an empty plan")
{
  auto s = fixture::cells(2);
  std::vector<CellLoadReport> r{report(0, 11e9, 10e9, 0), report(1, 5e9, 10e9, 5e9)};
  std::vector<BargainOutcome> none;
  auto const plan = schedule_across_es(r, s, none);
  CHECK(plan.moves.empty());
  CHECK(plan.residual[1] == Approx(5e9));
}

TEST_CASE("single spilled task goes to the only adequate ES")
{
  auto s = fixture::cells(2);
  s.tds.push_back(fixture::td(0, 0, 2e5, 1e8, 1.0, 8.0, 1e7));
  std::vector<BargainOutcome> b{nash_bargain(s.tds[0], s.ess[0], s.econ)};
  std::vector<CellLoadReport> r{report(0, 11e9, 10e9, 0, {0}), report(1, 5e9, 10e9, 5e9)};
  auto const plan = schedule_across_es(r, s, b);
  REQUIRE(plan.moves.size() == 1);
  CHECK(plan.moves[0].to == 1);
  CHECK(plan.moves[0].margin > 0.0);
  CHECK(plan.residual[1] == Approx(5e9 - 1e8 / 0.988));
  CHECK(plan.neighbor_tasks[0] == std::vector<std::size_t>{0});
}

TEST_CASE("placement refused when the margin is not positive or capacity is short")
{
  auto s = fixture::cells(2);
  s.tds.push_back(fixture::td(0, 0, 2e5, 1e8, 1.0, 8.0, 1e7));
  std::vector<BargainOutcome> b{nash_bargain(s.tds[0], s.ess[0], s.econ)};
  b[0].fee = 1e-6;  // below the forwarding energy
  std::vector<CellLoadReport> r{report(0, 11e9, 10e9, 0, {0}), report(1, 5e9, 10e9, 5e9)};
  CHECK(schedule_across_es(r, s, b).moves.empty());

  b[0] = nash_bargain(s.tds[0], s.ess[0], s.econ);
  r[1].residual = 1e7;
  CHECK(schedule_across_es(r, s, b).moves.empty());
}

TEST_CASE("targets visited by descending backhaul rate")
{
  auto s = fixture::cells(3);
  s.backhaul.set_rate(0, 1, 50e6);
  s.backhaul.set_rate(0, 2, 200e6);
  s.tds.push_back(fixture::td(0, 0, 2e5, 1e8, 1.0, 8.0, 1e7));
  std::vector<BargainOutcome> b{nash_bargain(s.tds[0], s.ess[0], s.econ)};
  std::vector<CellLoadReport> r{report(0, 11e9, 10e9, 0, {0}), report(1, 5e9, 10e9, 5e9),
                                report(2, 5e9, 10e9, 5e9)};
  auto const plan = schedule_across_es(r, s, b);
  REQUIRE(plan.moves.size() == 1);
  CHECK(plan.moves[0].to == 2);
}

TEST_CASE("schedule matches the independent trace")
{
  std::mt19937_64 rng(21);
  int             moved = 0;
  for (int rep = 0; rep < 300; ++rep)
  {
    auto const in   = random_instance(rng, 3, 8);
    auto const plan = schedule_across_es(in.reports, in.s, in.bargains);
    auto const want = oracle::schedule_trace(in.s, in.traces, in.bargains, false);
    REQUIRE(plan.moves.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
    {
      CHECK(plan.moves[i].task == want[i].task);
      CHECK(plan.moves[i].from == want[i].from);
      CHECK(plan.moves[i].to == want[i].to);
    }
    moved += static_cast<int>(want.size());
  }
  CHECK(moved > 0);
}

TEST_CASE("round robin: no adequate ES")
{
  auto s = fixture::cells(2);
  s.tds.push_back(fixture::td(0, 0, 2e5, 1e8, 1.0, 8.0, 1e7));
  std::vector<BargainOutcome> b{nash_bargain(s.tds[0], s.ess[0], s.econ)};
  std::vector<CellLoadReport> r{report(0, 11e9, 10e9, 0, {0}), report(1, 11e9, 10e9, 0)};
  CHECK(level2_round_robin(r, s, b).moves.empty());
}

TEST_CASE("round robin: single adequate ES takes every task that fits")
{
  auto s = fixture::cells(2);
  for (std::size_t i = 0; i < 4; ++i)
  {
    s.tds.push_back(fixture::td(i, 0, 2e5, 1e8, 1.0, 8.0, 1e7));
  }
  std::vector<BargainOutcome> b;
  for (auto const &d : s.tds)
  {
    b.push_back(nash_bargain(d, s.ess[0], s.econ));
  }
  b[2].fee = 1e-6;  // negative margin is ignored by round robin
  std::vector<CellLoadReport> r{report(0, 11e9, 10e9, 0, {0, 1, 2, 3}), report(1, 5e9, 10e9, 3.5e8)};
  auto const plan = level2_round_robin(r, s, b);
  REQUIRE(plan.moves.size() == 3);
  CHECK(plan.moves[2].task == 2);
  CHECK(plan.moves[2].margin < 0.0);
}

TEST_CASE("round robin matches the cyclic trace")
{
  std::mt19937_64 rng(33);
  for (int rep = 0; rep < 300; ++rep)
  {
    auto const in   = random_instance(rng, 4, 8);
    auto const plan = level2_round_robin(in.reports, in.s, in.bargains);
    auto const want = oracle::schedule_trace(in.s, in.traces, in.bargains, true);
    REQUIRE(plan.moves.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
    {
      CHECK(plan.moves[i].task == want[i].task);
      CHECK(plan.moves[i].to == want[i].to);
    }
  }
}
