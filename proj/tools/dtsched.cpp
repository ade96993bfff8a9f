#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dtsched/cli.hpp"

namespace {

using dtsched::io::json;

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data transfer scheduling toolkit"};
  app.require_subcommand(1);

  std::string input;
  std::string out;
  std::string algo = "heuristic";
  auto* knapsack = app.add_subcommand("knapsack", "Solve a divisible-size multiple knapsack instance");
  knapsack->add_option("--algo", algo, "heuristic | greedy1 | firstfit:<criterion> | exact");
  knapsack->add_option("--input", input, "Instance document")->required();
  knapsack->add_option("--out", out, "Output file (default stdout)");

  auto* mincost = app.add_subcommand("mincost", "Minimum-cost provider leasing plan");
  mincost->add_option("--input", input, "Instance document")->required();
  mincost->add_option("--out", out, "Output file (default stdout)");

  std::string trace;
  auto* bp = app.add_subcommand("bp", "Replay a block-partition op trace");
  bp->add_option("--trace", trace, "Trace document")->required();
  bp->add_option("--out", out, "Output file (default stdout)");

  std::int64_t slots = 0;
  std::int64_t capacity = 0;
  std::string requests;
  auto* reserve = app.add_subcommand("reserve", "Admit a line-delimited request log");
  reserve->add_option("--slots", slots, "Horizon length")->required();
  reserve->add_option("--capacity", capacity, "Per-slot capacity")->required();
  reserve->add_option("--requests", requests, "Request log (one JSON object per line)")->required();
  reserve->add_option("--out", out, "Output file (default stdout)");

  dtsched::bench::Config cfg;
  std::string timings;
  auto* bench = app.add_subcommand("bench", "Compare knapsack algorithms on random instances");
  bench->add_option("--instances", cfg.instances, "Number of instances")->required();
  bench->add_option("--max-items", cfg.max_items, "Maximum items per instance")->required();
  bench->add_option("--max-paths", cfg.max_paths, "Maximum paths per instance")->required();
  bench->add_option("--seed", cfg.seed, "Generator seed")->required();
  bench->add_flag("--oracle", cfg.oracle, "Also run the exact DP");
  bench->add_option("--bases", cfg.bases, "Size bases (sizes are powers of one base)")->delimiter(',');
  bench->add_option("--max-size", cfg.max_size, "Largest item size");
  bench->add_option("--max-profit", cfg.max_profit, "Largest item profit");
  bench->add_option("--max-capacity", cfg.max_capacity, "Largest path capacity");
  bench->add_option("--timings", timings, "Write wall times to this file");
  bench->add_option("--out", out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*knapsack) {
      emit(dtsched::cli::knapsack_command(read_document(input), algo).dump(2) + "\n", out);
    } else if (*mincost) {
      std::vector<std::string> warnings;
      const json plan = dtsched::cli::mincost_command(read_document(input), &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
      emit(plan.dump(2) + "\n", out);
    } else if (*bp) {
      emit(dtsched::cli::bp_command(read_document(trace)).dump() + "\n", out);
    } else if (*reserve) {
      std::ifstream in(requests);
      if (!in) throw std::runtime_error("cannot open " + requests);
      emit(dtsched::cli::reserve_command(slots, capacity, in), out);
    } else if (*bench) {
      if (cfg.bases.empty()) throw dtsched::InvalidInstance("--bases must not be empty");
      const auto report = dtsched::bench::run(cfg);
      emit(report.payload().dump(2) + "\n", out);
      if (!timings.empty()) {
        std::ofstream t(timings);
        t << report.timings().dump(2) << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << dtsched::cli::error_document(e).dump() << '\n';
    return 2;
  }
  return 0;
}
