#include "zrpsim/results.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace zrpsim {
namespace {

constexpr std::size_t kColumns = 11;

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

template <class T>
T parse_number(std::string_view field, std::size_t line, const char* column) {
  T v{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad " + column + " '" +
                             std::string(field) + "'");
  }
  return v;
}

std::optional<double> parse_opt(std::string_view field, std::size_t line, const char* column) {
  if (field.empty()) {
    return std::nullopt;
  }
  return parse_number<double>(field, line, column);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string csv_header() {
  return "num_nodes,alpha,seed,sent,received,delivery_ratio,throughput_bps,avg_delay_s,"
         "avg_jitter_s,loss_pct,control_packets";
}

std::string csv_row(const ResultRow& row) {
  const MetricsReport& m = row.metrics;
  std::string s;
  s += std::to_string(row.num_nodes) + ',' + std::to_string(row.alpha) + ',' +
       std::to_string(row.seed) + ',';
  s += std::to_string(m.sent) + ',' + std::to_string(m.received) + ',';
  s += opt(m.delivery_ratio) + ',' + format_double(m.throughput_bps) + ',';
  s += opt(m.avg_delay_s) + ',' + opt(m.avg_jitter_s) + ',' + opt(m.loss_pct) + ',';
  s += std::to_string(m.control_packets);
  return s;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = csv_header() + '\n';
  for (const ResultRow& r : rows) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
  write_file(path, to_csv(rows));
}

std::vector<ResultRow> parse_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::size_t line_no = 0;
  bool header = true;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.empty()) {
      continue;
    }
    if (header) {
      if (line != csv_header()) {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": unexpected header");
      }
      header = false;
      continue;
    }
    std::vector<std::string_view> f;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      f.push_back(line.substr(pos, comma - pos));
      if (comma == std::string_view::npos) {
        break;
      }
      pos = comma + 1;
    }
    if (f.size() != kColumns) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                               std::to_string(kColumns) + " fields");
    }
    ResultRow r;
    r.num_nodes = parse_number<std::uint32_t>(f[0], line_no, "num_nodes");
    r.alpha = parse_number<std::uint32_t>(f[1], line_no, "alpha");
    r.seed = parse_number<std::uint64_t>(f[2], line_no, "seed");
    MetricsReport& m = r.metrics;
    m.sent = parse_number<std::uint64_t>(f[3], line_no, "sent");
    m.received = parse_number<std::uint64_t>(f[4], line_no, "received");
    m.delivery_ratio = parse_opt(f[5], line_no, "delivery_ratio");
    m.throughput_bps = parse_number<double>(f[6], line_no, "throughput_bps");
    m.avg_delay_s = parse_opt(f[7], line_no, "avg_delay_s");
    m.avg_jitter_s = parse_opt(f[8], line_no, "avg_jitter_s");
    m.loss_pct = parse_opt(f[9], line_no, "loss_pct");
    m.control_packets = parse_number<std::uint64_t>(f[10], line_no, "control_packets");
    m.empty = m.sent == 0;
    rows.push_back(r);
  }
  if (header) {
    throw std::runtime_error("csv is empty");
  }
  return rows;
}

std::vector<ResultRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

const std::vector<FigureSpec>& figures() {
  static const std::vector<FigureSpec> figs{
      {"fig2", "delivery_ratio", "delivery ratio vs node density", "ratio",
       [](const MetricsReport& m) { return m.delivery_ratio; }},
      {"fig3", "avg_delay_s", "average end-to-end delay vs node density", "seconds",
       [](const MetricsReport& m) { return m.avg_delay_s; }},
      {"fig4", "avg_jitter_s", "average jitter vs node density", "seconds",
       [](const MetricsReport& m) { return m.avg_jitter_s; }},
      {"fig5", "loss_pct", "packet loss vs node density", "percent",
       [](const MetricsReport& m) { return m.loss_pct; }},
  };
  return figs;
}

std::vector<SeriesPoint> aggregate(const std::vector<ResultRow>& rows, const FigureSpec& figure) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<double>> groups;
  for (const ResultRow& r : rows) {
    auto& values = groups[{r.alpha, r.num_nodes}];
    if (auto v = figure.value(r.metrics)) {
      values.push_back(*v);
    }
  }
  std::vector<SeriesPoint> points;
  for (const auto& [key, values] : groups) {
    if (values.empty()) {
      continue;
    }
    SeriesPoint p;
    p.alpha = key.first;
    p.num_nodes = key.second;
    p.n = values.size();
    double sum = 0.0;
    for (double v : values) {
      sum += v;
    }
    p.mean = sum / static_cast<double>(p.n);
    if (p.n > 1) {
      double ss = 0.0;
      for (double v : values) {
        ss += (v - p.mean) * (v - p.mean);
      }
      p.std = std::sqrt(ss / static_cast<double>(p.n - 1));
    }
    points.push_back(p);
  }
  return points;
}

std::string plotdata_text(const std::vector<ResultRow>& rows, const FigureSpec& figure) {
  std::string out;
  out += std::string("# figure: ") + figure.name + " (" + figure.title + ")\n";
  out += std::string("# metric: ") + figure.metric + "\n";
  out += std::string("# units: ") + figure.units + "\n";
  out += "alpha\tnum_nodes\tmean\tstd\tn\n";
  for (const SeriesPoint& p : aggregate(rows, figure)) {
    out += std::to_string(p.alpha) + '\t' + std::to_string(p.num_nodes) + '\t' +
           format_double(p.mean) + '\t' + format_double(p.std) + '\t' + std::to_string(p.n) +
           '\n';
  }
  return out;
}

std::vector<std::filesystem::path> write_plotdata(const std::vector<ResultRow>& rows,
                                                  const std::filesystem::path& outdir) {
  if (rows.empty()) {
    throw std::invalid_argument("no result rows to aggregate");
  }
  std::filesystem::create_directories(outdir);
  std::vector<std::filesystem::path> paths;
  for (const FigureSpec& fig : figures()) {
    auto path = outdir / (std::string(fig.name) + ".tsv");
    write_file(path, plotdata_text(rows, fig));
    paths.push_back(path);
  }
  return paths;
}

}  // namespace zrpsim
