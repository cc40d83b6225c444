#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "zrpsim/channel.hpp"
#include "zrpsim/mobility.hpp"
#include "zrpsim/router.hpp"

namespace zrpsim {

struct TrafficConfig {
  std::uint32_t flows = 10;
  double rate = 4.0;  // packets per second per flow
  std::uint32_t packet_size = 512;
  SimTime start = 5.0;
  SimTime stop = 115.0;

  double interval() const noexcept { return 1.0 / rate; }
};

/// Everything one run needs.
struct Scenario {
  std::uint32_t num_nodes = 50;
  std::uint64_t seed = 1;
  SimTime horizon = 120.0;
  Terrain terrain;
  MobilityConfig mobility;
  RadioConfig radio;
  RouterConfig routing;
  TrafficConfig traffic;

  /// Throws ValidationError for the first violated constraint.
  void validate() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string key, const std::string& constraint);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Flat `key = value` lines; `#` starts a comment. Unknown keys are rejected,
/// missing keys keep their defaults. The result is validated.
Scenario parse_config(std::string_view text);
Scenario load_config(const std::filesystem::path& path);

/// Renders every key, in a form parse_config reads back to the same scenario.
std::string to_config(const Scenario& s);

}  // namespace zrpsim
