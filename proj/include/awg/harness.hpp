// End-to-end experiment harness: declarative configs, problem setup (builtin
// elasticity or external matrices), preconditioned solves, table-row
// emission and reproduction of the reference result tables.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "awg/fem.hpp"
#include "awg/partition.hpp"
#include "awg/preconditioner.hpp"

namespace awg {

struct ProblemSpec {
  enum class Kind { BUILTIN, EXTERNAL };
  Kind kind = Kind::BUILTIN;

  // Builtin elasticity problem.
  double width = 3.0;
  double height = 3.0;
  double h = 1.0 / 21.0;
  double nu = 0.3;
  double e_hard = 1e11;
  double e_soft = 1e7;
  int bands = 2;  // hard-layer bands per unit cell; 0 = constant E = e_hard
  int grid_x = 3;
  int grid_y = 3;

  // External pathway.
  std::string matrix_path;
  std::string rhs_path;
  std::string partition_path;  // empty: auto-partition into auto_parts
  int auto_parts = 0;
};

struct SolverSpec {
  double rtol = 1e-10;
  int maxit = 10000;
};

struct ExperimentConfig {
  std::string label = "run";
  ProblemSpec problem;
  PreconditionerConfig precond;
  SolverSpec solver;
  std::string out_dir;  // empty: no artifact files
  bool dense_verify = false;
  bool dump_spectra = false;
};

struct TableRow {
  std::string label;
  double kappa = 0.0;
  int iterations = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int coarse_dim = 0;  // #V0
  int n_minus = 0;
  bool converged = true;
};

std::string table_row_csv_header();  // label,kappa,it,lambda_min,lambda_max,v0,n_minus
std::string to_csv(const TableRow& row);
void write_rows_csv(const std::vector<TableRow>& rows, const std::string& path);

/// Problem state reusable across preconditioner configurations: the system,
/// partition, eigensplits, pencil solutions and (keyed) H2 / W caches.
class ProblemContext {
 public:
  explicit ProblemContext(const ProblemSpec& spec);

  const SparseSymMatrix& a() const { return a_; }
  const std::vector<double>& rhs() const { return b_; }
  const Partition& partition() const { return part_; }
  const PartitionOfUnity& pou() const { return pou_; }
  Splitting& splitting() { return *split_; }
  GeneoContext& geneo() { return *geneo_; }
  const std::optional<AssembledSystem>& builtin_system() const { return sys_; }

  std::shared_ptr<const TwoLevel> h2(const PreconditionerConfig& cfg);
  std::shared_ptr<const SecondCoarse> second_coarse(const PreconditionerConfig& cfg);

 private:
  std::optional<AssembledSystem> sys_;
  SparseSymMatrix a_;
  std::vector<double> b_;
  Partition part_;
  PartitionOfUnity pou_;
  std::unique_ptr<Splitting> split_;
  std::unique_ptr<GeneoContext> geneo_;
  std::map<std::string, std::shared_ptr<const TwoLevel>> h2_cache_;
  std::map<std::string, std::shared_ptr<const SecondCoarse>> w_cache_;
};

TableRow run(const ExperimentConfig& cfg);
TableRow run_with_context(ProblemContext& ctx, const ExperimentConfig& cfg);

/// One run per axis value, in order. Axes: tau_sharp, tau_flat, nu, w_rtol,
/// layers (band count), n_subdomains (bar convention: width = grid_x = N),
/// e_pair (value "E1:E2").
std::vector<TableRow> sweep(const ExperimentConfig& base, const std::string& axis,
                            const std::vector<std::string>& values);

/// Emit the builtin problem of `cfg` as matrix/rhs/dofmap/partition files
/// under prefix; the files feed the external pathway back.
void export_problem(const ExperimentConfig& cfg, const std::string& prefix);

ExperimentConfig parse_config_file(const std::string& path);
double parse_number(const std::string& text);  // accepts fractions like 1/21

/// Reproduce result table 1..7; rows written to out_dir when non-empty.
std::vector<TableRow> reproduce_table(int index, const std::string& out_dir);
/// Compare against a fixture CSV; returns the number of out-of-tolerance
/// cells and logs one line per row.
int diff_against_fixture(const std::vector<TableRow>& rows, const std::string& fixture_path,
                         std::ostream& log);

}  // namespace awg
