#include "zrpsim/mobility.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace zrpsim {

double distance(Point a, Point b) noexcept {
  return std::hypot(b.x - a.x, b.y - a.y);
}

void Terrain::validate() const {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw DegenerateTerrain("terrain width and height must be positive (got " +
                            std::to_string(width) + " x " + std::to_string(height) + ")");
  }
}

bool Terrain::contains(Point p) const noexcept {
  return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
}

void MobilityConfig::validate() const {
  if (speed_min < 0.0 || speed_floor < 0.0) {
    throw MobilityConfigError("mobility speeds must be non-negative");
  }
  if (speed_max < speed_min) {
    throw MobilityConfigError("mobility.speed_min must not exceed mobility.speed_max");
  }
  if (enabled && effective_min() > speed_max) {
    throw MobilityConfigError("mobility.speed_max is below the effective minimum speed " +
                              std::to_string(effective_min()));
  }
  if (pause < 0.0) {
    throw MobilityConfigError("mobility.pause must be non-negative");
  }
}

SimTime Leg::arrival_at() const noexcept {
  const double d = distance(origin, waypoint);
  if (d == 0.0) {
    return depart_at;
  }
  if (speed <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return depart_at + d / speed;
}

Point random_point(RngStream& rng, const Terrain& terrain) {
  const double x = rng.uniform(0.0, terrain.width);
  const double y = rng.uniform(0.0, terrain.height);
  return Point{x, y};
}

Leg next_leg(RngStream& rng, const MobilityConfig& cfg, const Terrain& terrain, Point from,
             SimTime at) {
  terrain.validate();
  Leg leg;
  leg.origin = from;
  leg.waypoint = random_point(rng, terrain);
  leg.speed = rng.uniform(cfg.effective_min(), cfg.speed_max);
  leg.depart_at = at;
  leg.pause = cfg.pause;
  return leg;
}

Point position_at(const Leg& leg, SimTime t) {
  const double d = distance(leg.origin, leg.waypoint);
  if (d == 0.0 || leg.speed <= 0.0 || t <= leg.depart_at) {
    return leg.origin;
  }
  const double travelled = (t - leg.depart_at) * leg.speed;
  if (travelled >= d) {
    return leg.waypoint;
  }
  const double f = travelled / d;
  return Point{std::lerp(leg.origin.x, leg.waypoint.x, f),
               std::lerp(leg.origin.y, leg.waypoint.y, f)};
}

RandomWaypoint::RandomWaypoint(std::uint64_t seed, std::size_t nodes, MobilityConfig cfg,
                               Terrain terrain)
    : cfg_(cfg), terrain_(terrain) {
  terrain_.validate();
  cfg_.validate();
  tracks_.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const NodeId id{static_cast<std::uint32_t>(i)};
    Track track{RngStream(seed, StreamPurpose::Mobility, id), {}, {}, 0.0, 0};
    track.initial = random_point(track.rng, terrain_);
    // Until a leg is scheduled the node rests at its initial placement.
    track.leg = Leg{track.initial, track.initial, 0.0, 0.0, 0.0};
    tracks_.push_back(std::move(track));
  }
}

Point RandomWaypoint::position(NodeId node, SimTime t) const {
  const Track& track = tracks_.at(node.value);
  if (t >= track.arrival) {
    return track.leg.waypoint;
  }
  return position_at(track.leg, t);
}

void RandomWaypoint::schedule_mobility(NodeId node, Engine& engine, SimTime horizon) {
  if (!cfg_.enabled) {
    return;
  }
  advance(node, engine, horizon);
}

void RandomWaypoint::schedule_all(Engine& engine, SimTime horizon) {
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    schedule_mobility(NodeId{static_cast<std::uint32_t>(i)}, engine, horizon);
  }
}

void RandomWaypoint::advance(NodeId node, Engine& engine, SimTime horizon) {
  Track& track = tracks_.at(node.value);
  const SimTime now = engine.now();
  const Point from = position(node, now);
  track.leg = next_leg(track.rng, cfg_, terrain_, from, now);
  track.arrival = track.leg.arrival_at();
  ++track.legs;
  const SimTime next = track.leg.next_departure();
  if (next <= horizon) {
    engine.schedule(
        next, [this, node, &engine, horizon] { advance(node, engine, horizon); },
        EventTag{1, node.value});
  }
}

}  // namespace zrpsim
