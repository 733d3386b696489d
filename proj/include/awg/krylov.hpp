// Preconditioned conjugate gradient with relative-residual stopping, Ritz
// estimates of the preconditioned spectrum from the CG Lanczos tridiagonal,
// and a dense verification path for small problems.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "awg/operators.hpp"

namespace awg {

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // relative (recursive) residual per iteration
  double final_relative_residual = 0.0;  // recomputed true residual at exit
  double recurrence_residual_at_exit = 0.0;

  // Lanczos tridiagonal accumulated from the CG alpha/beta coefficients.
  std::vector<double> lanczos_diag;
  std::vector<double> lanczos_offdiag;

  double ritz_min = 0.0;
  double ritz_max = 0.0;
  double kappa_estimate = 0.0;  // ritz_max / ritz_min
};

/// PCG with zero initial guess. Stops when the recursive relative residual
/// ||r_k|| / ||b|| reaches rtol AND a recomputed true residual confirms it.
/// Throws on <p, Ap> <= 0 (operator not spd). On maxit the report carries
/// converged = false with the spectrum estimate still valid.
std::pair<std::vector<double>, SolveReport> pcg(const ApplyFn& apply_a, const ApplyFn& apply_h,
                                                const std::vector<double>& b, double rtol,
                                                int maxit);

/// Extreme eigenvalue estimates of the preconditioned operator from the
/// first `iterations` Lanczos coefficients (all of them when iterations < 0).
/// Requires at least 2 recorded iterations.
std::pair<double, double> estimate_spectrum(const SolveReport& report, int iterations = -1);

/// Full spectrum of H A, materialized column by column and reduced to a
/// symmetric problem through the Cholesky factor of H. A verification oracle
/// for n <= cap only.
std::vector<double> dense_spectrum(const ApplyFn& apply_a, const ApplyFn& apply_h, int n,
                                   int cap = 2000);

void write_residual_csv(const SolveReport& report, const std::string& path);

}  // namespace awg
