// Command-line front end: problem generation/export, single solves, sweeps
// and reproduction of the reference tables.
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "awg/harness.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& values) {
  std::vector<std::string> out;
  std::istringstream s(values);
  std::string item;
  while (std::getline(s, item, ',')) out.push_back(item);
  return out;
}

void print_rows(const std::vector<awg::TableRow>& rows) {
  std::cout << awg::table_row_csv_header() << '\n';
  for (const auto& r : rows) std::cout << awg::to_csv(r) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AWG domain-decomposition preconditioners"};
  app.require_subcommand(1);

  std::string config_path, out_dir, axis, values, fixtures_dir = "fixtures";
  bool dense_verify = false, dump_spectra = false;
  int table_index = 1;

  auto* assemble = app.add_subcommand("assemble", "emit matrix, rhs and partition files");
  assemble->add_option("--config", config_path, "experiment config");
  assemble->add_option("--out", out_dir, "output directory")->required();

  auto* solve = app.add_subcommand("solve", "run a single configured solve");
  solve->add_option("--config", config_path, "experiment config");
  solve->add_option("--out", out_dir, "artifact directory");
  solve->add_flag("--dense-verify", dense_verify, "cross-check Ritz extremes (n <= 2000)");
  solve->add_flag("--dump-spectra", dump_spectra, "dump per-subdomain pencil spectra");

  auto* sweep_cmd = app.add_subcommand("sweep", "run one config axis over several values");
  sweep_cmd->add_option("--config", config_path, "experiment config");
  sweep_cmd->add_option("--axis", axis, "sweep axis")->required();
  sweep_cmd->add_option("--values", values, "comma-separated axis values")->required();
  sweep_cmd->add_option("--out", out_dir, "artifact directory");

  auto* table = app.add_subcommand("table", "reproduce a reference table (1..7)");
  table->add_option("index", table_index, "table index")->required()->check(CLI::Range(1, 7));
  table->add_option("--out", out_dir, "artifact directory");
  table->add_option("--fixtures", fixtures_dir, "fixture directory for the diff");

  CLI11_PARSE(app, argc, argv);

  try {
    awg::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = awg::parse_config_file(config_path);

    if (*assemble) {
      std::filesystem::create_directories(out_dir);
      awg::export_problem(cfg, out_dir + "/problem");
      std::cout << "wrote " << out_dir << "/problem.{mtx,rhs,dofmap,part}\n";
    } else if (*solve) {
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      cfg.dense_verify = cfg.dense_verify || dense_verify;
      cfg.dump_spectra = cfg.dump_spectra || dump_spectra;
      print_rows({awg::run(cfg)});
    } else if (*sweep_cmd) {
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      const auto rows = awg::sweep(cfg, axis, split_csv(values));
      print_rows(rows);
      if (!out_dir.empty()) awg::write_rows_csv(rows, out_dir + "/sweep_" + axis + ".csv");
    } else if (*table) {
      if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
      const auto rows = awg::reproduce_table(table_index, out_dir);
      print_rows(rows);
      const std::string fixture =
          fixtures_dir + "/table" + std::to_string(table_index) + ".csv";
      if (std::filesystem::exists(fixture)) {
        const int bad = awg::diff_against_fixture(rows, fixture, std::cout);
        std::cout << (bad == 0 ? "table matches fixture\n"
                               : "table differs from fixture in " + std::to_string(bad) +
                                     " cell(s)\n");
        return bad == 0 ? 0 : 1;
      }
      std::cout << "no fixture at " << fixture << ", diff skipped\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
