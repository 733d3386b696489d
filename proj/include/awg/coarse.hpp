// GenEO coarse spaces for A+: per-subdomain generalized eigenproblems,
// low-mode selection, the assembled coarse basis with its factorized coarse
// operator, and the coarse correction / deflation projector.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "awg/dense.hpp"
#include "awg/operators.hpp"
#include "awg/splitting.hpp"

namespace awg {

enum class CoarseVariant { NN, AS_PLUS, AS };

struct ThresholdSpec {
  CoarseVariant variant = CoarseVariant::NN;
  double tau_sharp = 0.1;  // in (0,1); NN and AS
  double tau_flat = 10.0;  // > 1; AS_PLUS and AS

  static ThresholdSpec nn(double tau_sharp);
  static ThresholdSpec as_plus(double tau_flat);
  static ThresholdSpec as(double tau_sharp, double tau_flat);
};

struct CoarseSpace {
  DenseMatrix z;           // n x n0 basis of V0
  RankRevealingFactor k0;  // of Z^T A+ Z
  int dim() const { return z.cols; }
  int retained_rank() const { return k0.rank(); }
};

/// Eigenvectors of `eig` with eigenvalue strictly below tau (ties excluded),
/// ascending; all of them when the whole spectrum lies below tau.
DenseMatrix select_YL(const EigenDecomposition& eig, double tau);
DenseMatrix select_YL(double tau, const DenseMatrix& ma, const DenseMatrix& mb);
/// The complementary high-mode block (completeness checks only; no
/// implemented preconditioner consumes it).
DenseMatrix select_YH(const EigenDecomposition& eig, double tau);

/// Lazily built per-subdomain dense blocks and pencil eigensolutions, shared
/// across coarse spaces and threshold values.
class GeneoContext {
 public:
  explicit GeneoContext(const Splitting& split);

  const Splitting& splitting() const { return *split_; }
  const DenseMatrix& a_block(int s);      // R^s A R^s^T
  const DenseMatrix& aplus_block(int s);  // R^s A+ R^s^T
  DenseMatrix weighted_asplus(int s) const;  // Ds^-1 A^s_+ Ds^-1

  // Pencils of the three GenEO constructions.
  const EigenDecomposition& pencil_nn(int s);   // (Ds^-1 As+ Ds^-1, R A+ R^T)
  const EigenDecomposition& pencil_as1(int s);  // (Ds^-1 As+ Ds^-1, R A R^T)
  const EigenDecomposition& pencil_as2(int s);  // (R A R^T, R A+ R^T)

 private:
  const Splitting* split_;
  std::vector<std::optional<DenseMatrix>> a_blocks_, aplus_blocks_;
  std::vector<std::optional<EigenDecomposition>> nn_, as1_, as2_;
};

/// Z as the ordered concatenation (ascending subdomain, ascending eigenvalue)
/// of the prolonged low modes of the variant's pencils; coarse operator
/// Z^T A+ Z factorized rank-revealing. An empty coarse space is legal and
/// degenerates to the one-level method.
CoarseSpace build_coarse(const ThresholdSpec& spec, GeneoContext& ctx);

/// Z K0^-1 Z^T x (pseudo-solve on the retained subspace).
void coarse_correct(const CoarseSpace& cs, const double* x, double* y);

/// Pi x = x - Z K0^-1 Z^T M x for the matrix M the coarse operator was built
/// with (A+ here), and the transpose Pi^T x = x - M Z K0^-1 Z^T x.
void apply_projector(const CoarseSpace& cs, const ApplyFn& apply_m, const double* x, double* y);
void apply_projector_transpose(const CoarseSpace& cs, const ApplyFn& apply_m, const double* x,
                               double* y);

/// Per-subdomain pencil spectra as CSV (subdomain, index, eigenvalue).
void dump_pencil_spectra(GeneoContext& ctx, CoarseVariant variant, const std::string& path);

}  // namespace awg
