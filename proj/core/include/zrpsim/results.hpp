#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zrpsim/sweep.hpp"

namespace zrpsim {

/// Shortest decimal text that reads back to exactly `v`.
std::string format_double(double v);

std::string csv_header();
std::string csv_row(const ResultRow& row);
/// Header plus one line per row; undefined metrics are left blank.
std::string to_csv(const std::vector<ResultRow>& rows);
void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);

/// Inverse of to_csv. Throws std::runtime_error naming the offending line.
std::vector<ResultRow> parse_csv(std::string_view text);
std::vector<ResultRow> read_csv(const std::filesystem::path& path);

struct FigureSpec {
  const char* name;    // fig2 ...
  const char* metric;  // CSV column
  const char* title;
  const char* units;
  std::optional<double> (*value)(const MetricsReport&);
};

/// fig2 delivery ratio, fig3 delay, fig4 jitter, fig5 loss.
const std::vector<FigureSpec>& figures();

struct SeriesPoint {
  std::uint32_t alpha = 0;
  std::uint32_t num_nodes = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
  std::size_t n = 0;  // rows with a defined value
};

/// One point per (alpha, num_nodes), ascending. Undefined values are
/// skipped; a point with none left is omitted.
std::vector<SeriesPoint> aggregate(const std::vector<ResultRow>& rows, const FigureSpec& figure);

std::string plotdata_text(const std::vector<ResultRow>& rows, const FigureSpec& figure);
/// Writes <outdir>/<figN>.tsv for every figure; returns the paths. Throws on
/// empty input.
std::vector<std::filesystem::path> write_plotdata(const std::vector<ResultRow>& rows,
                                                  const std::filesystem::path& outdir);

}  // namespace zrpsim
