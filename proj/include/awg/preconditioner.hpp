// The preconditioner family: one-level Schwarz solvers for A and A+, the
// two-level GenEO preconditioners H2 for A+, the second (Woodbury) coarse
// space W, and the AWG preconditioners H3 for A.
#pragma once

#include <memory>
#include <vector>

#include "awg/coarse.hpp"
#include "awg/dense.hpp"
#include "awg/krylov.hpp"
#include "awg/operators.hpp"
#include "awg/splitting.hpp"

namespace awg {

enum class OneLevelKind { AS, AS_PLUS, NN };
enum class Composition { ADDITIVE, HYBRID };
enum class AwgMode { NONE, AD, HYB, INEX };

struct PreconditionerConfig {
  OneLevelKind one_level = OneLevelKind::NN;
  Composition composition = Composition::HYBRID;
  bool use_coarse = true;
  double tau_sharp = 0.1;  // NN and AS
  double tau_flat = 10.0;  // AS_PLUS and AS
  AwgMode awg = AwgMode::AD;
  double w_rtol = 1e-10;

  ThresholdSpec threshold() const;
};

class OneLevel {
 public:
  OneLevel(OneLevelKind kind, const Splitting& split);
  void apply(const double* x, double* y) const;
  OneLevelKind kind() const { return kind_; }

 private:
  OneLevelKind kind_;
  const Splitting* split_;
  std::vector<CholeskyFactor> local_;  // AS / AS_PLUS local factors
};

/// H2 = two-level preconditioner for A+ (one-level action plus exact coarse
/// solve, additive or hybrid/deflected composition). An empty coarse space
/// reduces it to the one-level method.
class TwoLevel {
 public:
  TwoLevel(OneLevel one, CoarseSpace coarse, Composition comp, const Splitting& split);
  void apply(const double* x, double* y) const;
  const CoarseSpace& coarse() const { return coarse_; }
  const OneLevel& one_level() const { return one_; }
  Composition composition() const { return comp_; }
  int n() const;

 private:
  OneLevel one_;
  CoarseSpace coarse_;
  Composition comp_;
  const Splitting* split_;
};

/// The second coarse space: W spans A+^-1 V- with V- the prolonged strictly
/// negative eigenvectors of the B^s (zero-eigenvalue columns removed first).
struct SecondCoarse {
  DenseMatrix w;                      // n x n_minus
  DenseMatrix v_minus;                // n x n_minus
  std::vector<double> neg_weights;    // -lambda > 0 per column
  RankRevealingFactor kw;             // of W^T A W
  std::vector<int> inner_iterations;  // PCG iterations per column
  int n_minus() const { return w.cols; }
};

/// Each W column solved by an inner PCG on A+ preconditioned by H2 to
/// relative residual w_rtol; throws when an inner solve exceeds
/// maxit_factor * n iterations (a broken H2).
SecondCoarse build_w(const Splitting& split, const TwoLevel& h2, double w_rtol,
                     int maxit_factor = 10);

class AwgPreconditioner {
 public:
  AwgPreconditioner(AwgMode mode, std::shared_ptr<const TwoLevel> h2,
                    std::shared_ptr<const SecondCoarse> sc, const Splitting& split);
  void apply(const double* x, double* y) const;
  // Pi3 = I - W (W^T A W)^-1 W^T A (A-orthogonal projection onto Ker(A-)).
  void apply_pi3(const double* x, double* y) const;
  void apply_pi3_transpose(const double* x, double* y) const;
  AwgMode mode() const { return mode_; }

 private:
  void second_correct(const double* x, double* y) const;  // W KW^-1 W^T x

  AwgMode mode_;
  std::shared_ptr<const TwoLevel> h2_;
  std::shared_ptr<const SecondCoarse> sc_;
  const Splitting* split_;
  LuFactor core_;  // inexact mode: Lambda_-^-1 - V_-^T A+^-1 V_-
  bool has_core_ = false;
};

}  // namespace awg
