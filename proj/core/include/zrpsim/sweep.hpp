#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "zrpsim/scenario.hpp"
#include "zrpsim/traffic.hpp"

namespace zrpsim {

struct SweepSpec {
  std::vector<std::uint32_t> node_counts{25, 50, 75, 100};
  std::vector<std::uint32_t> alphas{1, 2, 3, 4};
  std::uint32_t seeds_per_cell = 10;

  void validate() const;
};

/// One run of a sweep. Seeds are base.seed + k for k < seeds_per_cell.
struct SweepCell {
  std::uint32_t num_nodes = 0;
  std::uint32_t alpha = 0;
  std::uint64_t seed = 0;
};

struct ResultRow {
  std::uint32_t num_nodes = 0;
  std::uint32_t alpha = 0;
  std::uint64_t seed = 0;
  MetricsReport metrics;
};

class SweepError : public std::runtime_error {
 public:
  SweepError(SweepCell cell, const std::string& reason);
  const SweepCell& cell() const noexcept { return cell_; }

 private:
  SweepCell cell_;
};

/// Cells in lexicographic (num_nodes, alpha, seed) order, following the
/// order of the SweepSpec lists.
std::vector<SweepCell> sweep_cells(const SweepSpec& spec, const Scenario& base);
Scenario cell_scenario(const Scenario& base, const SweepCell& cell);
ResultRow run_cell(const Scenario& base, const SweepCell& cell);

using SweepProgress = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every cell on `threads` workers (0 = hardware concurrency). Rows come
/// back in cell order whatever the execution order was. The first failing
/// cell (in cell order) is rethrown as SweepError.
std::vector<ResultRow> sweep(const SweepSpec& spec, const Scenario& base, unsigned threads = 1,
                             SweepProgress progress = {});

}  // namespace zrpsim
