#include "zrpsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "zrpsim/network.hpp"

namespace zrpsim {

void SweepSpec::validate() const {
  if (node_counts.empty() || alphas.empty()) {
    throw std::invalid_argument("sweep lists must be nonempty");
  }
  for (auto n : node_counts) {
    if (n < 2) {
      throw std::invalid_argument("sweep node counts must be >= 2");
    }
  }
  for (auto a : alphas) {
    if (a == 0) {
      throw std::invalid_argument("sweep alphas must be positive");
    }
  }
  if (seeds_per_cell == 0) {
    throw std::invalid_argument("seeds per cell must be positive");
  }
}

SweepError::SweepError(SweepCell cell, const std::string& reason)
    : std::runtime_error("cell num_nodes=" + std::to_string(cell.num_nodes) +
                         " alpha=" + std::to_string(cell.alpha) +
                         " seed=" + std::to_string(cell.seed) + ": " + reason),
      cell_(cell) {}

std::vector<SweepCell> sweep_cells(const SweepSpec& spec, const Scenario& base) {
  spec.validate();
  std::vector<SweepCell> cells;
  cells.reserve(spec.node_counts.size() * spec.alphas.size() * spec.seeds_per_cell);
  for (auto n : spec.node_counts) {
    for (auto a : spec.alphas) {
      for (std::uint32_t k = 0; k < spec.seeds_per_cell; ++k) {
        cells.push_back(SweepCell{n, a, base.seed + k});
      }
    }
  }
  return cells;
}

Scenario cell_scenario(const Scenario& base, const SweepCell& cell) {
  Scenario s = base;
  s.num_nodes = cell.num_nodes;
  s.routing.zone.alpha = cell.alpha;
  s.seed = cell.seed;
  return s;
}

ResultRow run_cell(const Scenario& base, const SweepCell& cell) {
  try {
    return ResultRow{cell.num_nodes, cell.alpha, cell.seed, run_scenario(cell_scenario(base, cell))};
  } catch (const std::exception& e) {
    throw SweepError(cell, e.what());
  }
}

std::vector<ResultRow> sweep(const SweepSpec& spec, const Scenario& base, unsigned threads,
                             SweepProgress progress) {
  const std::vector<SweepCell> cells = sweep_cells(spec, base);
  std::vector<ResultRow> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells.size()));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        rows[i] = run_cell(base, cells[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(d, cells.size());
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return rows;
}

}  // namespace zrpsim
