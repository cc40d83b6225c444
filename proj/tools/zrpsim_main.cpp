// zrpsim: single runs, sweeps and plot data for the zone routing simulator.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zrpsim/network.hpp"
#include "zrpsim/results.hpp"
#include "zrpsim/scenario.hpp"
#include "zrpsim/sweep.hpp"

namespace {

using namespace zrpsim;

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::FILE* f = std::fopen(out.c_str(), "wb");
  if (f == nullptr) {
    throw std::runtime_error("cannot write '" + out + "'");
  }
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) {
    throw std::runtime_error("write failed for '" + out + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zone routing MANET simulator"};
  app.require_subcommand(1);

  std::string config;
  std::string out;

  auto* run = app.add_subcommand("run", "Run one scenario and print its CSV row");
  std::optional<std::uint64_t> seed;
  run->add_option("--config", config, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out, "CSV output file (default stdout)");

  auto* sw = app.add_subcommand("sweep", "Run density x radius x seed sweep");
  SweepSpec spec;
  unsigned threads = 1;
  bool quiet = false;
  sw->add_option("--config", config, "Base scenario file")->required()->check(CLI::ExistingFile);
  sw->add_option("--nodes", spec.node_counts, "Node counts, comma separated")->delimiter(',');
  sw->add_option("--alphas", spec.alphas, "Zone radii, comma separated")->delimiter(',');
  sw->add_option("--seeds", spec.seeds_per_cell, "Seeds per cell");
  sw->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sw->add_option("--out", out, "CSV output file")->required();
  sw->add_flag("--quiet", quiet, "No progress on stderr");

  auto* plot = app.add_subcommand("plotdata", "Aggregate sweep CSV into fig2..fig5 series");
  std::string in;
  std::string outdir;
  plot->add_option("--in", in, "Sweep CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--outdir", outdir, "Directory for the .tsv files")->required();

  auto* val = app.add_subcommand("validate", "Parse and validate a scenario file");
  val->add_option("--config", config, "Scenario file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    if (*run) {
      Scenario s = load_config(config);
      if (seed) {
        s.seed = *seed;
      }
      const ResultRow row{s.num_nodes, s.routing.zone.alpha, s.seed, run_scenario(s)};
      emit(to_csv({row}), out);
    } else if (*sw) {
      const Scenario base = load_config(config);
      SweepProgress progress;
      if (!quiet) {
        progress = [](std::size_t done, std::size_t total) {
          std::cerr << "\r" << done << "/" << total << std::flush;
          if (done == total) {
            std::cerr << '\n';
          }
        };
      }
      emit(to_csv(sweep(spec, base, threads, progress)), out);
    } else if (*plot) {
      for (const auto& p : write_plotdata(read_csv(in), outdir)) {
        std::cout << p.string() << '\n';
      }
    } else if (*val) {
      const Scenario s = load_config(config);
      std::cout << "ok: " << s.num_nodes << " nodes, alpha " << s.routing.zone.alpha << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
