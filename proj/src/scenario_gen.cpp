#include "edgealloc/scenario_gen.hpp"

#include "edgealloc/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace edgealloc {

using nlohmann::json;

GenConfig paper_config()
{
  return GenConfig{};
}

GenConfig desk_config()
{
  GenConfig config;
  config.tds_per_cell = {20, 80};
  config.ads_per_cell = {5, 15};
  return config;
}

namespace {

void require(bool ok, std::string const &what)
{
  if (!ok)
  {
    throw InvalidConfig(what);
  }
}

void check_range(Range r, std::string const &name, bool allow_zero = false)
{
  require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi, name + ": empty or non-finite range");
  require(allow_zero ? r.lo >= 0.0 : r.lo > 0.0, name + ": lower bound out of domain");
}

}  // namespace

void validate_config(GenConfig const &c)
{
  require(c.tds_per_cell.lo <= c.tds_per_cell.hi, "tds_per_cell: empty range");
  require(c.ads_per_cell.lo <= c.ads_per_cell.hi, "ads_per_cell: empty range");
  require(c.tds_override.empty() || c.tds_override.size() == c.cells, "tds_override must list one count per cell");
  check_range(c.task_size, "task_size");
  check_range(c.task_cycles, "task_cycles");
  check_range(c.deadline, "deadline");
  check_range(c.value, "value", true);
  check_range(c.td_capacity, "td_capacity", true);
  check_range(c.ad_capacity, "ad_capacity");
  check_range(c.ask_factor, "ask_factor", true);
  require(c.ask_reference_frequency > 0.0, "ask_reference_frequency must be > 0");
  require(c.es_capacity > 0.0, "es_capacity must be > 0");
  require(c.es_energy_coeff > 0.0 && c.device_energy_coeff > 0.0, "energy coefficients must be > 0");
  require(c.es_transmit_power > 0.0 && c.td_transmit_power > 0.0, "transmit powers must be > 0");
  require(c.backhaul_rate > 0.0, "backhaul_rate must be > 0");
  require(c.interference >= 0.0, "interference must be >= 0");
  require(c.cell_radius > 0.0 && c.min_distance > 0.0 && c.min_distance <= c.cell_radius,
          "distances must satisfy 0 < min_distance <= cell_radius");
  require(c.reference_gain > 0.0 && c.constant_gain > 0.0 && c.path_loss_exponent > 0.0,
          "channel parameters must be > 0");
  require(c.econ.gamma > 0.0 && c.econ.noise_power > 0.0 && c.econ.bandwidth > 0.0,
          "econ parameters must be > 0");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CellStream::CellStream(std::uint64_t seed, std::size_t cell)
  : engine_(splitmix64(splitmix64(seed) ^ splitmix64(0x5eed0000ULL + cell)))
{}

double CellStream::uniform()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double CellStream::uniform(Range r)
{
  return r.lo + (r.hi - r.lo) * uniform();
}

std::size_t CellStream::uniform(CountRange r)
{
  auto const span = static_cast<double>(r.hi - r.lo + 1);
  auto const pick = static_cast<std::size_t>(std::floor(uniform() * span));
  return std::min(r.lo + pick, r.hi);
}

namespace {

double draw_gain(GenConfig const &c, CellStream &rng)
{
  if (c.channel == ChannelModel::Constant)
  {
    return c.constant_gain;
  }
  double const d = std::max(c.min_distance, c.cell_radius * std::sqrt(rng.uniform()));
  return c.reference_gain * std::pow(d, -c.path_loss_exponent);
}

}  // namespace

Scenario generate(GenConfig const &c)
{
  validate_config(c);

  Scenario s;
  s.econ     = c.econ;
  s.seed     = c.seed;
  s.backhaul = BackhaulMatrix(c.cells, c.backhaul_rate);
  for (std::size_t m = 0; m < c.cells; ++m)
  {
    s.ess.push_back({m, c.es_capacity, c.es_energy_coeff, c.es_transmit_power});
  }

  double const ask_unit = c.econ.gamma * c.device_energy_coeff * c.ask_reference_frequency *
                          c.ask_reference_frequency;

  for (std::size_t m = 0; m < c.cells; ++m)
  {
    CellStream rng(c.seed, m);
    std::size_t n = rng.uniform(c.tds_per_cell);
    if (!c.tds_override.empty())
    {
      n = c.tds_override[m];
    }
    std::size_t const k = rng.uniform(c.ads_per_cell);

    for (std::size_t i = 0; i < n; ++i)
    {
      TaskDevice td;
      td.id             = s.tds.size();
      td.cell           = m;
      td.task.id        = td.id;
      td.task.size      = rng.uniform(c.task_size);
      td.task.cycles    = rng.uniform(c.task_cycles);
      td.task.deadline  = rng.uniform(c.deadline);
      td.task.value     = rng.uniform(c.value);
      td.capacity       = rng.uniform(c.td_capacity);
      td.transmit_power = c.td_transmit_power;
      td.energy_coeff   = c.device_energy_coeff;
      td.uplink         = {draw_gain(c, rng), c.interference};
      s.tds.push_back(td);
    }
    for (std::size_t j = 0; j < k; ++j)
    {
      AuxDevice ad;
      ad.id           = s.ads.size();
      ad.cell         = m;
      ad.capacity     = rng.uniform(c.ad_capacity);
      ad.energy_coeff = c.device_energy_coeff;
      ad.ask          = ask_unit * rng.uniform(c.ask_factor);
      ad.downlink     = {draw_gain(c, rng), c.interference};
      s.ads.push_back(ad);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json link_json(RadioLink const &l)
{
  return {{"gain", l.gain}, {"interference", l.interference}};
}

json const &field(json const &obj, char const *key, std::string const &path)
{
  if (!obj.is_object())
  {
    throw SchemaError(path, "expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end())
  {
    throw SchemaError(path + "." + key, "missing field");
  }
  return *it;
}

double number(json const &obj, char const *key, std::string const &path)
{
  auto const &v = field(obj, key, path);
  if (!v.is_number())
  {
    throw SchemaError(path + "." + key, "expected a number");
  }
  return v.get<double>();
}

std::uint64_t unsigned_int(json const &obj, char const *key, std::string const &path)
{
  auto const &v = field(obj, key, path);
  if (!v.is_number_unsigned())
  {
    throw SchemaError(path + "." + key, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

json const &array(json const &obj, char const *key, std::string const &path)
{
  auto const &v = field(obj, key, path);
  if (!v.is_array())
  {
    throw SchemaError(path + "." + key, "expected an array");
  }
  return v;
}

RadioLink parse_link(json const &obj, char const *key, std::string const &path)
{
  auto const  p = path + "." + key;
  auto const &v = field(obj, key, path);
  return {number(v, "gain", p), number(v, "interference", p)};
}

}  // namespace

std::string to_json(Scenario const &s)
{
  json doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["seed"]           = s.seed;
  doc["econ"] = {{"gamma", s.econ.gamma}, {"noise_power", s.econ.noise_power}, {"bandwidth", s.econ.bandwidth}};

  auto &ess = doc["edge_servers"] = json::array();
  for (auto const &es : s.ess)
  {
    ess.push_back({{"id", es.id},
                   {"capacity", es.capacity},
                   {"energy_coeff", es.energy_coeff},
                   {"transmit_power", es.transmit_power}});
  }

  auto &bh = doc["backhaul"] = json::array();
  for (std::size_t a = 0; a < s.backhaul.size(); ++a)
  {
    auto row = json::array();
    for (std::size_t b = 0; b < s.backhaul.size(); ++b)
    {
      row.push_back(s.backhaul.rate(a, b));
    }
    bh.push_back(std::move(row));
  }

  auto &tds = doc["task_devices"] = json::array();
  for (auto const &td : s.tds)
  {
    tds.push_back({{"id", td.id},
                   {"cell", td.cell},
                   {"capacity", td.capacity},
                   {"transmit_power", td.transmit_power},
                   {"energy_coeff", td.energy_coeff},
                   {"uplink", link_json(td.uplink)},
                   {"task",
                    {{"id", td.task.id},
                     {"size", td.task.size},
                     {"cycles", td.task.cycles},
                     {"deadline", td.task.deadline},
                     {"value", td.task.value}}}});
  }

  auto &ads = doc["aux_devices"] = json::array();
  for (auto const &ad : s.ads)
  {
    ads.push_back({{"id", ad.id},
                   {"cell", ad.cell},
                   {"capacity", ad.capacity},
                   {"energy_coeff", ad.energy_coeff},
                   {"ask", ad.ask},
                   {"downlink", link_json(ad.downlink)}});
  }
  return doc.dump(2);
}

Scenario from_json(std::string const &text)
{
  json doc;
  try
  {
    doc = json::parse(text);
  }
  catch (json::parse_error const &e)
  {
    throw SchemaError("$", e.what());
  }

  std::string const root = "$";
  auto const version = unsigned_int(doc, "schema_version", root);
  if (version != static_cast<std::uint64_t>(kScenarioSchemaVersion))
  {
    throw SchemaError("$.schema_version", "unsupported version " + std::to_string(version));
  }

  Scenario s;
  s.seed = unsigned_int(doc, "seed", root);

  auto const &econ = field(doc, "econ", root);
  s.econ           = {number(econ, "gamma", "$.econ"), number(econ, "noise_power", "$.econ"),
                      number(econ, "bandwidth", "$.econ")};

  auto const &ess = array(doc, "edge_servers", root);
  for (std::size_t m = 0; m < ess.size(); ++m)
  {
    auto const p = "$.edge_servers[" + std::to_string(m) + "]";
    s.ess.push_back({unsigned_int(ess[m], "id", p), number(ess[m], "capacity", p),
                     number(ess[m], "energy_coeff", p), number(ess[m], "transmit_power", p)});
  }

  auto const &bh = array(doc, "backhaul", root);
  if (bh.size() != s.ess.size())
  {
    throw SchemaError("$.backhaul", "expected " + std::to_string(s.ess.size()) + " rows");
  }
  s.backhaul = BackhaulMatrix(s.ess.size());
  for (std::size_t a = 0; a < bh.size(); ++a)
  {
    auto const p = "$.backhaul[" + std::to_string(a) + "]";
    if (!bh[a].is_array() || bh[a].size() != s.ess.size())
    {
      throw SchemaError(p, "expected a row of " + std::to_string(s.ess.size()) + " numbers");
    }
    for (std::size_t b = 0; b < bh[a].size(); ++b)
    {
      if (!bh[a][b].is_number())
      {
        throw SchemaError(p + "[" + std::to_string(b) + "]", "expected a number");
      }
      s.backhaul.set_rate(a, b, bh[a][b].get<double>());
    }
  }

  auto const &tds = array(doc, "task_devices", root);
  for (std::size_t i = 0; i < tds.size(); ++i)
  {
    auto const  p = "$.task_devices[" + std::to_string(i) + "]";
    auto const &t = tds[i];
    TaskDevice  td;
    td.id             = unsigned_int(t, "id", p);
    td.cell           = unsigned_int(t, "cell", p);
    td.capacity       = number(t, "capacity", p);
    td.transmit_power = number(t, "transmit_power", p);
    td.energy_coeff   = number(t, "energy_coeff", p);
    td.uplink         = parse_link(t, "uplink", p);
    auto const &task  = field(t, "task", p);
    auto const  tp    = p + ".task";
    td.task = {unsigned_int(task, "id", tp), number(task, "size", tp), number(task, "cycles", tp),
               number(task, "deadline", tp), number(task, "value", tp)};
    s.tds.push_back(td);
  }

  auto const &ads = array(doc, "aux_devices", root);
  for (std::size_t k = 0; k < ads.size(); ++k)
  {
    auto const  p = "$.aux_devices[" + std::to_string(k) + "]";
    auto const &a = ads[k];
    AuxDevice   ad;
    ad.id           = unsigned_int(a, "id", p);
    ad.cell         = unsigned_int(a, "cell", p);
    ad.capacity     = number(a, "capacity", p);
    ad.energy_coeff = number(a, "energy_coeff", p);
    ad.ask          = number(a, "ask", p);
    ad.downlink     = parse_link(a, "downlink", p);
    s.ads.push_back(ad);
  }

  try
  {
    validate_scenario(s);
  }
  catch (InvalidScenario const &e)
  {
    throw SchemaError("$", e.what());
  }
  return s;
}

void save(Scenario const &scenario, std::filesystem::path const &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw IOError("cannot open '" + path.string() + "' for writing");
  }
  out << to_json(scenario) << '\n';
  if (!out)
  {
    throw IOError("write to '" + path.string() + "' failed");
  }
}

Scenario load(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IOError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

}  // namespace edgealloc
