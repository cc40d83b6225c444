#include "zrpsim/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace zrpsim {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void require(bool ok, const char* key, const char* constraint) {
  if (!ok) {
    throw ValidationError(key, constraint);
  }
}

struct Value {
  std::string_view text;
  std::size_t line;
  std::string_view key;

  [[noreturn]] void bad(const char* expected) const {
    throw ParseError(line, std::string(key) + ": expected " + expected + ", got '" +
                               std::string(text) + "'");
  }

  std::int64_t integer() const {
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
      bad("an integer");
    }
    return v;
  }

  double real() const {
    double v = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v)) {
      bad("a finite number");
    }
    return v;
  }

  bool boolean() const {
    if (text == "true" || text == "1") {
      return true;
    }
    if (text == "false" || text == "0") {
      return false;
    }
    bad("true or false");
  }

  std::uint32_t u32(const char* name) const {
    const std::int64_t v = integer();
    if (v < 0) {
      throw ValidationError(name, ">= 0");
    }
    if (v > std::numeric_limits<std::uint32_t>::max()) {
      bad("a 32-bit count");
    }
    return static_cast<std::uint32_t>(v);
  }
};

using Setter = std::function<void(Scenario&, const Value&)>;

#define ZRP_REAL(name, field) {name, [](Scenario& s, const Value& v) { s.field = v.real(); }}
#define ZRP_U32(name, field) {name, [](Scenario& s, const Value& v) { s.field = v.u32(name); }}

const std::map<std::string_view, Setter>& setters() {
  static const std::map<std::string_view, Setter> table{
      ZRP_U32("num_nodes", num_nodes),
      {"seed",
       [](Scenario& s, const Value& v) {
         std::uint64_t x = 0;
         auto [end, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), x);
         if (ec != std::errc{} || end != v.text.data() + v.text.size()) {
           v.bad("an unsigned 64-bit integer");
         }
         s.seed = x;
       }},
      ZRP_REAL("horizon", horizon),
      ZRP_REAL("terrain.width", terrain.width),
      ZRP_REAL("terrain.height", terrain.height),
      ZRP_REAL("mobility.speed_min", mobility.speed_min),
      ZRP_REAL("mobility.speed_max", mobility.speed_max),
      ZRP_REAL("mobility.pause", mobility.pause),
      ZRP_REAL("mobility.speed_floor", mobility.speed_floor),
      {"mobility.enabled",
       [](Scenario& s, const Value& v) { s.mobility.enabled = v.boolean(); }},
      ZRP_REAL("radio.range", radio.range),
      ZRP_REAL("radio.data_rate", radio.data_rate),
      ZRP_U32("radio.frame_overhead", radio.frame_overhead),
      ZRP_REAL("radio.proc_delay", radio.proc_delay),
      ZRP_REAL("radio.loss_prob", radio.loss_prob),
      ZRP_U32("zrp.alpha", routing.zone.alpha),
      ZRP_REAL("iarp.hello_interval", routing.zone.hello_interval),
      ZRP_REAL("iarp.neighbor_timeout", routing.zone.neighbor_timeout),
      ZRP_REAL("iarp.lsu_interval", routing.zone.lsu_interval),
      ZRP_REAL("brp.coverage_expiry", routing.brp.coverage_expiry),
      ZRP_REAL("ierp.cache_ttl", routing.ierp.cache_ttl),
      ZRP_U32("ierp.retry_count", routing.ierp.retry_count),
      ZRP_REAL("ierp.retry_timeout", routing.ierp.retry_timeout),
      {"ierp.buffer_limit",
       [](Scenario& s, const Value& v) { s.routing.ierp.buffer_limit = v.u32("ierp.buffer_limit"); }},
      ZRP_U32("traffic.flows", traffic.flows),
      ZRP_REAL("traffic.rate", traffic.rate),
      ZRP_U32("traffic.packet_size", traffic.packet_size),
      ZRP_REAL("traffic.start", traffic.start),
      ZRP_REAL("traffic.stop", traffic.stop),
  };
  return table;
}

#undef ZRP_REAL
#undef ZRP_U32

std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

ValidationError::ValidationError(std::string key, const std::string& constraint)
    : std::invalid_argument(key + " must be " + constraint), key_(std::move(key)) {}

void Scenario::validate() const {
  require(num_nodes >= 2, "num_nodes", ">= 2");
  require(horizon > 0.0, "horizon", "> 0");
  require(terrain.width > 0.0, "terrain.width", "> 0");
  require(terrain.height > 0.0, "terrain.height", "> 0");
  require(mobility.speed_min >= 0.0, "mobility.speed_min", ">= 0");
  require(mobility.speed_floor >= 0.0, "mobility.speed_floor", ">= 0");
  require(mobility.pause >= 0.0, "mobility.pause", ">= 0");
  require(!mobility.enabled || mobility.speed_max >= mobility.effective_min(), "mobility.speed_max",
          ">= max(mobility.speed_min, mobility.speed_floor)");
  require(radio.range > 0.0, "radio.range", "> 0");
  require(radio.data_rate > 0.0, "radio.data_rate", "> 0");
  require(radio.proc_delay >= 0.0, "radio.proc_delay", ">= 0");
  require(radio.loss_prob >= 0.0 && radio.loss_prob < 1.0, "radio.loss_prob", "in [0, 1)");
  const ZoneConfig& z = routing.zone;
  require(z.hello_interval > 0.0, "iarp.hello_interval", "> 0");
  require(z.neighbor_timeout > z.hello_interval, "iarp.neighbor_timeout",
          "> iarp.hello_interval");
  require(z.lsu_interval > 0.0, "iarp.lsu_interval", "> 0");
  require(routing.brp.coverage_expiry > 0.0, "brp.coverage_expiry", "> 0");
  require(routing.ierp.cache_ttl > 0.0, "ierp.cache_ttl", "> 0");
  require(routing.ierp.retry_timeout > 0.0, "ierp.retry_timeout", "> 0");
  require(routing.ierp.buffer_limit >= 1, "ierp.buffer_limit", ">= 1");
  require(traffic.rate > 0.0, "traffic.rate", "> 0");
  require(traffic.packet_size >= 1, "traffic.packet_size", ">= 1");
  require(traffic.start >= 0.0, "traffic.start", ">= 0");
  require(traffic.stop > traffic.start, "traffic.stop", "> traffic.start");
  require(traffic.stop <= horizon, "traffic.stop", "<= horizon");
  require(static_cast<std::uint64_t>(traffic.flows) <=
              static_cast<std::uint64_t>(num_nodes) * (num_nodes - 1),
          "traffic.flows", "<= num_nodes * (num_nodes - 1)");
}

Scenario parse_config(std::string_view text) {
  Scenario s;
  std::size_t line_no = 0;
  std::map<std::string_view, std::size_t> seen;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    auto it = setters().find(key);
    if (it == setters().end()) {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (auto [prev, fresh] = seen.emplace(it->first, line_no); !fresh) {
      throw ParseError(line_no, "duplicate key '" + std::string(key) + "' (first on line " +
                                    std::to_string(prev->second) + ")");
    }
    it->second(s, Value{value, line_no, it->first});
  }
  s.validate();
  return s;
}

Scenario load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open config '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_config(const Scenario& s) {
  std::ostringstream out;
  auto put = [&](const char* key, const std::string& v) { out << key << " = " << v << '\n'; };
  auto real = [&](const char* key, double v) { put(key, fmt_double(v)); };
  auto count = [&](const char* key, std::uint64_t v) { put(key, std::to_string(v)); };
  count("num_nodes", s.num_nodes);
  count("seed", s.seed);
  real("horizon", s.horizon);
  real("terrain.width", s.terrain.width);
  real("terrain.height", s.terrain.height);
  real("mobility.speed_min", s.mobility.speed_min);
  real("mobility.speed_max", s.mobility.speed_max);
  real("mobility.pause", s.mobility.pause);
  real("mobility.speed_floor", s.mobility.speed_floor);
  put("mobility.enabled", s.mobility.enabled ? "true" : "false");
  real("radio.range", s.radio.range);
  real("radio.data_rate", s.radio.data_rate);
  count("radio.frame_overhead", s.radio.frame_overhead);
  real("radio.proc_delay", s.radio.proc_delay);
  real("radio.loss_prob", s.radio.loss_prob);
  count("zrp.alpha", s.routing.zone.alpha);
  real("iarp.hello_interval", s.routing.zone.hello_interval);
  real("iarp.neighbor_timeout", s.routing.zone.neighbor_timeout);
  real("iarp.lsu_interval", s.routing.zone.lsu_interval);
  real("brp.coverage_expiry", s.routing.brp.coverage_expiry);
  real("ierp.cache_ttl", s.routing.ierp.cache_ttl);
  count("ierp.retry_count", s.routing.ierp.retry_count);
  real("ierp.retry_timeout", s.routing.ierp.retry_timeout);
  count("ierp.buffer_limit", s.routing.ierp.buffer_limit);
  count("traffic.flows", s.traffic.flows);
  real("traffic.rate", s.traffic.rate);
  count("traffic.packet_size", s.traffic.packet_size);
  real("traffic.start", s.traffic.start);
  real("traffic.stop", s.traffic.stop);
  return out.str();
}

}  // namespace zrpsim
