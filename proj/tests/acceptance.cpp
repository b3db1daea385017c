// Acceptance run: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.

#include "edgealloc/experiments.hpp"
#include "edgealloc/orchestrator.hpp"
#include "edgealloc/scenario_gen.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace edgealloc;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict
{
  bool        pass = false;
  std::string detail;
};

std::string fmt(char const *format, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double mean(std::vector<double> const &v)
{
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  auto const n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> ranks(std::vector<double> const &v)
{
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();)
  {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]])
    {
      ++j;
    }
    for (std::size_t k = i; k <= j; ++k)
    {
      r[idx[k]] = 0.5 * static_cast<double>(i + j) + 1.0;
    }
    i = j + 1;
  }
  return r;
}

double spearman(std::vector<double> const &x, std::vector<double> const &y)
{
  auto const rx = ranks(x);
  auto const ry = ranks(y);
  double const mx = mean(rx), my = mean(ry);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i)
  {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

Scenario desk(std::size_t cells, std::uint64_t seed)
{
  auto c  = desk_config();
  c.cells = cells;
  c.seed  = seed;
  return generate(c);
}

// 1. Nash solution against a 1e-5 grid search.
Verdict nash_oracle()
{
  std::mt19937_64                        rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };

  EconParams const econ;
  EdgeServer const es;
  std::size_t agreed = 0, mismatches = 0;
  double worst_grid = 0.0, worst_mid = 0.0, solve_time = 0.0;
  auto const t0 = Clock::now();
  for (int pair = 0; pair < 1000; ++pair)
  {
    TaskDevice td;
    td.task        = {static_cast<std::size_t>(pair), draw(200e3, 500e3), draw(50e6, 500e6), draw(0.05, 2.0),
                      draw(5.0, 10.0)};
    td.capacity    = draw(0.05e9, 1e9);
    double const d = std::max(10.0, 500.0 * std::sqrt(u(rng)));
    td.uplink.gain = 1e-4 * std::pow(d, -3.5);

    auto const ts = Clock::now();
    auto const o  = nash_bargain(td, es, econ);
    solve_time += since(ts);

    auto const p = oracle::nash_problem(td, es, econ);
    double const lo = p.es_cost;
    double const hi = p.value - p.up_energy - p.u_loc;
    bool const should = p.feasible && lo < hi;
    if (should != (o.offload == 1))
    {
      ++mismatches;
      continue;
    }
    if (!should)
    {
      mismatches += o.fee == 0.0 ? 0 : 1;
      continue;
    }
    ++agreed;
    double const g = oracle::grid_argmax(p, lo, hi, 1e-5);
    worst_grid     = std::max(worst_grid, std::abs(g - o.fee));
    worst_mid      = std::max(worst_mid, std::abs(o.fee - 0.5 * (lo + hi)));
  }
  double const total = since(t0);
  bool const pass    = mismatches == 0 && worst_grid <= 1e-4 && worst_mid <= 1e-9 && solve_time < 5.0 && agreed > 0;
  return {pass, fmt("%zu/1000 agreements, decision mismatches %zu, max |grid-fee| %.2e, max |mid-fee| %.2e, "
                    "solver %.4f s (with oracle %.2f s)",
                    agreed, mismatches, worst_grid, worst_mid, solve_time, total)};
}

// 2. Algorithms 1-3 against straight-line traces, plus the composed pipeline.
Verdict trace_equivalence()
{
  std::mt19937_64                        rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t mismatches = 0, overloaded_cells = 0, moves = 0, matches = 0;
  for (int inst = 0; inst < 200; ++inst)
  {
    auto cfg         = desk_config();
    cfg.cells        = 1 + rng() % 4;
    cfg.tds_per_cell = {0, 12};
    cfg.ads_per_cell = {0, 6};
    cfg.seed         = 1000 + static_cast<std::uint64_t>(inst);
    auto s           = generate(cfg);
    for (auto &es : s.ess)
    {
      es.capacity = 0.2e9 + 3e9 * u(rng);
    }
    for (std::size_t a = 0; a < s.ess.size(); ++a)
    {
      for (std::size_t b = 0; b < s.ess.size(); ++b)
      {
        if (a != b)
        {
          // Coarse rates so that ties occur.
          s.backhaul.set_rate(a, b, 25e6 * static_cast<double>(1 + rng() % 6));
        }
      }
    }
    std::size_t const M = s.ess.size();
    CellIndex const   idx(s);

    // Level 1.
    std::vector<BargainOutcome> bargains(s.tds.size());
    for (std::size_t i = 0; i < s.tds.size(); ++i)
    {
      bargains[i] = nash_bargain(s.tds[i], s.ess[s.tds[i].cell], s.econ);
    }
    std::vector<CellLoadReport>      reports;
    std::vector<oracle::FilterTrace> traces;
    for (std::size_t m = 0; m < M; ++m)
    {
      reports.push_back(filter_overloaded(m, s.ess[m].capacity, filter_entries(s, idx.tds[m], bargains)));
      traces.push_back(oracle::filter_trace(s, m, bargains));
      overloaded_cells += traces.back().overloaded ? 1 : 0;
      if (reports.back().keep != traces.back().keep || reports.back().spill != traces.back().spill ||
          reports.back().overloaded() != traces.back().overloaded)
      {
        ++mismatches;
      }
    }

    // Level 2.
    auto const plan  = schedule_across_es(reports, s, bargains);
    auto const trace = oracle::schedule_trace(s, traces, bargains, false);
    if (plan.moves.size() != trace.size())
    {
      ++mismatches;
    }
    else
    {
      for (std::size_t i = 0; i < trace.size(); ++i)
      {
        if (plan.moves[i].task != trace[i].task || plan.moves[i].to != trace[i].to ||
            plan.moves[i].from != trace[i].from)
        {
          ++mismatches;
        }
      }
    }
    moves += trace.size();

    // Level 3 on whatever level 2 left, bids recomputed from the scenario.
    for (std::size_t m = 0; m < M; ++m)
    {
      std::vector<std::size_t> left;
      for (auto t : traces[m].spill)
      {
        bool const moved = std::any_of(trace.begin(), trace.end(), [&](auto const &mv) { return mv.task == t; });
        if (!moved)
        {
          left.push_back(t);
        }
      }
      if (left.empty())
      {
        continue;
      }
      oracle::AuctionCase c;
      for (auto k : idx.ads[m])
      {
        c.ask.push_back(s.ads[k].ask);
        c.capacity.push_back(s.ads[k].capacity);
        c.seller_id.push_back(s.ads[k].id);
      }
      for (auto t : left)
      {
        c.cycles.push_back(s.tds[t].task.cycles);
        c.fee.push_back(bargains[t].fee);
        c.task_id.push_back(s.tds[t].task.id);
        std::vector<oracle::BidTrace> row;
        for (auto k : idx.ads[m])
        {
          row.push_back(oracle::bid_trace(s, t, k, bargains[t].fee));
        }
        c.bids.push_back(row);
      }
      auto const want   = oracle::auction_trace(c);
      auto const input  = build_auction_input(s, m, left, idx.ads[m], bargains);
      auto const result = run_double_auction(input);
      if (result.matches.size() != want.size())
      {
        ++mismatches;
        continue;
      }
      for (std::size_t i = 0; i < want.size(); ++i)
      {
        auto const &got = result.matches[i];
        if (got.task != left[want[i].task] || got.ad != idx.ads[m][want[i].ad] ||
            std::abs(got.payment - want[i].payment) > 1e-12 * std::max(1.0, want[i].payment))
        {
          ++mismatches;
        }
      }
      matches += want.size();
    }
  }
  return {mismatches == 0, fmt("200 instances, %zu overloaded cells, %zu level-2 moves, %zu auction matches, "
                               "%zu mismatches",
                               overloaded_cells, moves, matches, mismatches)};
}

// 3. Auction economics: rationality, budget balance, truthfulness probe.
Verdict auction_economics()
{
  auto const t0 = Clock::now();
  std::size_t auctions = 0, trades = 0, ir_fail = 0, budget_fail = 0, probes = 0, counter = 0;
  double worst_gain = 0.0;
  std::string example;
  for (std::uint64_t seed = 1; auctions < 1000; ++seed)
  {
    auto const s = desk(1, 50000 + seed);
    CellIndex const idx(s);
    std::vector<BargainOutcome> bargains;
    std::vector<std::size_t>    tasks;
    for (std::size_t i = 0; i < s.tds.size(); ++i)
    {
      bargains.push_back(nash_bargain(s.tds[i], s.ess[0], s.econ));
      if (bargains.back().offload == 1)
      {
        tasks.push_back(i);
      }
    }
    if (tasks.empty() || idx.ads[0].size() < 2)
    {
      continue;
    }
    ++auctions;
    // Every first-level offloader is put up for auction.
    auto const input  = build_auction_input(s, 0, tasks, idx.ads[0], bargains);
    auto const result = run_double_auction(input);
    trades += result.matches.size();

    double paid = 0.0;
    for (auto const &m : result.matches)
    {
      double const unit = m.payment / m.cycles;
      if (!(m.unit_bid >= unit && unit >= m.ask * (1 - 1e-12)))
      {
        ++ir_fail;
      }
      paid += m.payment;
    }
    auto const rewards  = ad_rewards(result, s.ads.size());
    double const received = std::accumulate(rewards.begin(), rewards.end(), 0.0);
    if (std::abs(paid - received) > 1e-12 * std::max(1.0, paid))
    {
      ++budget_fail;
    }

    // Unilateral ask misreports: 20 factors spanning -50%..+50%.
    for (std::size_t k = 0; k < input.sellers.size(); ++k)
    {
      double const true_ask = input.sellers[k].ask;
      auto utility = [&](AuctionResult const &r) {
        double u = 0.0;
        for (auto const &m : r.matches)
        {
          if (m.ad == input.sellers[k].ad)
          {
            u += m.payment - true_ask * m.cycles;
          }
        }
        return u;
      };
      double const honest = utility(result);
      for (int step = 0; step < 20; ++step)
      {
        double const factor = 0.5 + static_cast<double>(step) / 19.0;
        if (factor == 1.0)
        {
          continue;
        }
        auto lie             = input;
        lie.sellers[k].ask   = true_ask * factor;
        double const gain    = utility(run_double_auction(lie)) - honest;
        ++probes;
        if (gain > 1e-12 * std::max(1.0, std::abs(honest)))
        {
          if (counter == 0)
          {
            example = fmt(" (first: seed %llu, AD %zu, factor %.3f, gain %.4g $)",
                          static_cast<unsigned long long>(50000 + seed), input.sellers[k].id, factor, gain);
          }
          ++counter;
          worst_gain = std::max(worst_gain, gain);
        }
      }
    }
  }
  double const elapsed = since(t0);
  bool const pass = ir_fail == 0 && budget_fail == 0 && counter == 0 && elapsed < 30.0;
  return {pass, fmt("%zu auctions, %zu trades, IR failures %zu, budget failures %zu, truthfulness "
                    "counterexamples %zu/%zu probes (max gain %.4g $), %.2f s",
                    auctions, trades, ir_fail, budget_fail, counter, probes, worst_gain, elapsed) +
                    example};
}

struct DeskRuns
{
  std::vector<Scenario>                       scenarios;
  std::vector<std::vector<AllocationOutcome>> outcomes;  // [scenario][strategy]
};

DeskRuns const &desk_runs()
{
  static DeskRuns const runs = [] {
    DeskRuns r;
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
    {
      r.scenarios.push_back(desk(5, seed));
      std::vector<AllocationOutcome> per;
      for (auto st : kAllStrategies)
      {
        per.push_back(run(r.scenarios.back(), st));
      }
      r.outcomes.push_back(std::move(per));
    }
    return r;
  }();
  return runs;
}

// 4. Feasibility of every strategy.
Verdict feasibility()
{
  auto const &runs = desk_runs();
  std::size_t violations = 0, bad_runs = 0;
  std::string first;
  for (std::size_t i = 0; i < runs.scenarios.size(); ++i)
  {
    for (auto const &out : runs.outcomes[i])
    {
      auto const v = validate(runs.scenarios[i], out);
      violations += v.size();
      bad_runs += v.empty() ? 0 : 1;
      if (!v.empty() && first.empty())
      {
        first = fmt(" (first: seed %zu %s, %s: %s)", i + 1, std::string(to_string(out.strategy)).c_str(),
                    v[0].constraint.c_str(), v[0].detail.c_str());
      }
    }
  }
  return {violations == 0,
          fmt("100 scenarios x %zu strategies, %zu violations in %zu runs", kAllStrategies.size(), violations,
              bad_runs) +
              first};
}

// 5. Dominance of Full over its restrictions, and utility conservation.
Verdict dominance()
{
  auto const &runs = desk_runs();
  std::size_t losses[3] = {0, 0, 0};
  double      worst[3]  = {0, 0, 0};
  std::string first;
  double      worst_conservation = 0.0;
  Strategy const restricted[3] = {Strategy::ConventionalEdge, Strategy::CollaborativeEdge,
                                  Strategy::CollaborativeEdgeEnd};
  for (std::size_t i = 0; i < runs.scenarios.size(); ++i)
  {
    auto const &per  = runs.outcomes[i];
    double const full = per[0].utility.total;
    for (int b = 0; b < 3; ++b)
    {
      double const other = per[static_cast<std::size_t>(restricted[b])].utility.total;
      if (full < other - 1e-9)
      {
        ++losses[b];
        worst[b] = std::max(worst[b], other - full);
        if (first.empty())
        {
          first = fmt(" (first: seed %zu, full %.6f < %s %.6f)", i + 1, full,
                      std::string(to_string(restricted[b])).c_str(), other);
        }
      }
    }
    for (auto const &out : per)
    {
      worst_conservation = std::max(
          worst_conservation, std::abs(out.utility.total - system_utility_per_task(runs.scenarios[i], out.decisions)));
    }
  }
  bool const pass = losses[0] + losses[1] + losses[2] == 0 && worst_conservation <= 1e-9;
  return {pass, fmt("Full below conventional/collaborative/collaborative-end on %zu/%zu/%zu of 100 "
                    "(max shortfall %.4g/%.4g/%.4g $); max |party sum - per-task| %.2e",
                    losses[0], losses[1], losses[2], worst[0], worst[1], worst[2], worst_conservation) +
                    first};
}

// 6. Utility per cell against the number of cells.
Verdict cells_trend()
{
  Strategy const shown[4] = {Strategy::Full, Strategy::CollaborativeEdge, Strategy::ConventionalEdge,
                             Strategy::CollaborativeEdgeEnd};
  std::vector<double> ms;
  std::vector<std::vector<double>> means(4);
  bool m1_equal = true;
  for (std::size_t m = 1; m <= 5; ++m)
  {
    ms.push_back(static_cast<double>(m));
    std::vector<std::vector<double>> samples(4);
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
      auto const s = desk(m, seed);
      std::vector<AllocationOutcome> outs;
      for (int k = 0; k < 4; ++k)
      {
        outs.push_back(run(s, shown[k]));
        samples[k].push_back(metric_system_utility(outs.back(), m));
      }
      if (m == 1 && (outs[0].decisions != outs[3].decisions || outs[0].utility.total != outs[3].utility.total))
      {
        m1_equal = false;
      }
    }
    for (int k = 0; k < 4; ++k)
    {
      means[k].push_back(mean(samples[k]));
    }
  }
  double const rho_full = spearman(ms, means[0]);
  double const rho_ce   = spearman(ms, means[1]);
  auto const [lo, hi]   = std::minmax_element(means[2].begin(), means[2].end());
  double const conv_spread = (*hi - *lo) / mean(means[2]);
  bool const pass = rho_full > 0.9 && rho_ce > 0.9 && conv_spread < 0.05 && m1_equal;
  std::string series;
  for (int k = 0; k < 4; ++k)
  {
    series += fmt(" %s[", std::string(to_string(shown[k])).c_str());
    for (double v : means[k])
    {
      series += fmt(" %.2f", v);
    }
    series += " ]";
  }
  return {pass, fmt("spearman full %.3f, collaborative %.3f; conventional spread %.2f%%; M=1 full==end %s;",
                    rho_full, rho_ce, 100.0 * conv_spread, m1_equal ? "yes" : "no") +
                    series};
}

// 7. Utility gain against the unit energy cost.
Verdict gamma_trend()
{
  auto gain_at = [](double gamma) {
    std::vector<double> g;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
      auto cfg       = paper_config();
      cfg.econ.gamma = gamma;
      cfg.seed       = seed;
      auto const s   = generate(cfg);
      g.push_back(metric_utility_gain(run(s, Strategy::Full), s));
    }
    return mean(g);
  };
  double const g1 = gain_at(1.0);
  double const g4 = gain_at(4.0);
  std::string series;
  for (double gamma : {0.5, 2.0, 3.0, 6.0})
  {
    series += fmt(" g(%.1f)=%.1f", gamma, gain_at(gamma));
  }
  return {g4 < 0.02 * g1, fmt("mean gain gamma=1 %.2f $, gamma=4 %.2f $ (%.1f%%);", g1, g4, 100.0 * g4 / g1) + series};
}

// 8. Level 1+2 running time against tasks per cell.
Verdict complexity()
{
  std::vector<double> times;
  std::vector<std::size_t> const ns{100, 200, 400, 800};
  // Warm-up.
  {
    auto cfg         = paper_config();
    cfg.tds_per_cell = {400, 400};
    (void)run(generate(cfg), Strategy::Full);
  }
  for (auto n : ns)
  {
    std::vector<double> runs;
    for (std::uint64_t rep = 0; rep < 5; ++rep)
    {
      auto cfg         = paper_config();
      cfg.tds_per_cell = {n, n};
      cfg.ads_per_cell = {30, 30};
      cfg.seed         = 300 + rep;
      auto const s     = generate(cfg);
      auto const out   = run(s, Strategy::Full);
      runs.push_back(out.timing.level1 + out.timing.level2);
    }
    times.push_back(median(runs));
  }
  bool        pass = true;
  std::string detail;
  for (std::size_t i = 0; i < ns.size(); ++i)
  {
    detail += fmt(" N=%zu %.1f us", ns[i], 1e6 * times[i]);
    if (i > 0)
    {
      double const ratio = times[i] / times[i - 1];
      detail += fmt(" (x%.2f)", ratio);
      pass = pass && ratio <= 2.6;
    }
    detail += ";";
  }
  return {pass, "median level-1+2 time:" + detail};
}

// 9. Cross-cell offloading-ratio variance under uneven load.
Verdict load_balance()
{
  std::size_t wins = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
  {
    auto cfg         = desk_config();
    cfg.tds_override = {20, 35, 50, 65, 80};
    cfg.seed         = seed;
    auto const s     = generate(cfg);
    double const full = metric_offloading_ratio_variance(s, run(s, Strategy::Full));
    double const end  = metric_offloading_ratio_variance(s, run(s, Strategy::CollaborativeEdgeEnd));
    wins += full < end ? 1 : 0;
    detail += fmt(" %.4f/%.4f", full, end);
  }
  return {wins >= 9, fmt("full lower on %zu/10 seeds; variance full/end:", wins) + detail};
}

}  // namespace

int main()
{
  struct Criterion
  {
    char const             *name;
    std::function<Verdict()> fn;
  };
  std::vector<Criterion> const criteria{
      {"nash-oracle", nash_oracle},       {"trace-equivalence", trace_equivalence},
      {"auction-economics", auction_economics}, {"feasibility", feasibility},
      {"dominance-conservation", dominance},    {"trend-cells", cells_trend},
      {"trend-gamma", gamma_trend},       {"complexity-shape", complexity},
      {"load-balance", load_balance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i)
  {
    auto const t0 = Clock::now();
    auto const v  = criteria[i].fn();
    std::printf("[%s] %zu %s: %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, v.detail.c_str(),
                since(t0));
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
