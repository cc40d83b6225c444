#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "zrpsim/engine.hpp"
#include "zrpsim/rng.hpp"
#include "zrpsim/types.hpp"

namespace zrpsim {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b) noexcept;

class DegenerateTerrain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MobilityConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Terrain {
  double width = 800.0;
  double height = 800.0;

  /// Throws DegenerateTerrain unless both sides are positive.
  void validate() const;
  bool contains(Point p) const noexcept;
};

struct MobilityConfig {
  double speed_min = 0.0;
  double speed_max = 10.0;
  double pause = 30.0;
  /// Lower clamp applied to speed_min; random-waypoint nodes drawing a speed
  /// near zero would otherwise stall for the whole run.
  double speed_floor = 0.1;
  /// When false nodes keep their initial placement.
  bool enabled = true;

  double effective_min() const noexcept { return speed_min > speed_floor ? speed_min : speed_floor; }

  /// Throws MobilityConfigError when the speed interval is empty or negative.
  void validate() const;
};

/// One random-waypoint movement: travel origin -> waypoint at constant speed,
/// then rest for `pause` seconds.
struct Leg {
  Point origin;
  Point waypoint;
  double speed = 0.0;
  SimTime depart_at = 0.0;
  double pause = 0.0;

  /// Infinite when speed is zero and the waypoint differs from the origin.
  SimTime arrival_at() const noexcept;
  SimTime next_departure() const noexcept { return arrival_at() + pause; }
};

Point random_point(RngStream& rng, const Terrain& terrain);

/// Draws the next leg: waypoint uniform over the terrain, speed uniform over
/// [effective_min, speed_max], pause from the config.
Leg next_leg(RngStream& rng, const MobilityConfig& cfg, const Terrain& terrain, Point from,
             SimTime at);

/// Straight-line interpolation along the leg; the node sits at the waypoint
/// from arrival onwards. Requires t >= leg.depart_at.
Point position_at(const Leg& leg, SimTime t);

/// Anything that can report where a node is at a given instant.
class PositionSource {
 public:
  virtual ~PositionSource() = default;
  virtual std::size_t node_count() const = 0;
  virtual Point position(NodeId node, SimTime t) const = 0;
};

class StaticPositions final : public PositionSource {
 public:
  explicit StaticPositions(std::vector<Point> points) : points_(std::move(points)) {}

  std::size_t node_count() const override { return points_.size(); }
  Point position(NodeId node, SimTime) const override { return points_.at(node.value); }

 private:
  std::vector<Point> points_;
};

/// Random-waypoint model for a whole network. Each node draws its initial
/// placement and all of its legs from its own mobility stream.
class RandomWaypoint final : public PositionSource {
 public:
  RandomWaypoint(std::uint64_t seed, std::size_t nodes, MobilityConfig cfg, Terrain terrain);

  std::size_t node_count() const override { return tracks_.size(); }
  Point position(NodeId node, SimTime t) const override;

  /// Starts the node's first leg at the current clock and chains the
  /// following legs through engine events until `horizon`.
  void schedule_mobility(NodeId node, Engine& engine, SimTime horizon);
  void schedule_all(Engine& engine, SimTime horizon);

  const Leg& current_leg(NodeId node) const { return tracks_.at(node.value).leg; }
  std::size_t legs_generated(NodeId node) const { return tracks_.at(node.value).legs; }
  Point initial_position(NodeId node) const { return tracks_.at(node.value).initial; }

 private:
  struct Track {
    RngStream rng;
    Point initial;
    Leg leg;
    SimTime arrival = 0.0;
    std::size_t legs = 0;
  };

  void advance(NodeId node, Engine& engine, SimTime horizon);

  MobilityConfig cfg_;
  Terrain terrain_;
  std::vector<Track> tracks_;
};

}  // namespace zrpsim
