// The algebraic splitting A = A+ - A-: Hadamard-divided local matrices B^s,
// their eigensplits into positive and non-positive parts, and operator-form
// application of A+, A- and the local A+ blocks (A+ is never assembled).
#pragma once

#include <vector>

#include "awg/dense.hpp"
#include "awg/partition.hpp"
#include "awg/sparse.hpp"

namespace awg {

struct LocalSplit {
  int s = 0;
  DenseMatrix bs;           // B^s, dense
  EigenDecomposition eig;   // full spectrum of B^s, ascending; pseudo-inverse handle
  int n_nonpos = 0;         // eigenvalues classified lambda <= eps_zero (prefix)
  int n_zero = 0;           // of those, |lambda| <= eps_zero, stored snapped to 0.0
  double eps_zero = 0.0;    // 1e-12 * max|lambda| * n^s

  int n_neg() const { return n_nonpos - n_zero; }  // strictly negative count
};

/// Per-subdomain B^s from the Hadamard division of A by the pair
/// multiplicity matrix M_mu (stored entries count as pattern nonzeros).
/// Throws if the minimal overlap condition fails (M_mu = 0 on an entry).
std::vector<DenseMatrix> build_Bs(const SparseSymMatrix& a, const Partition& p);

/// Classify the spectrum of B^s: eigenvalues <= eps_zero go to the
/// non-positive block (zeros included, snapped to exactly 0 within
/// [-eps_zero, eps_zero]), the rest form the positive part.
LocalSplit eigsplit(const DenseMatrix& bs, int s = 0);

/// Everything the preconditioners need: the splits plus neighbor structure
/// and restriction maps, with matvec routines for A+ and A-.
class Splitting {
 public:
  Splitting(const SparseSymMatrix& a, const Partition& p, const PartitionOfUnity& pou);

  const SparseSymMatrix& matrix() const { return *a_; }
  const Partition& partition() const { return *part_; }
  const PartitionOfUnity& pou() const { return *pou_; }
  const std::vector<LocalSplit>& splits() const { return splits_; }
  const std::vector<int>& neighbors(int s) const { return neighbors_[s]; }

  int n() const { return a_->n; }
  int n_minus() const;  // rank of A- = total strictly negative count
  std::vector<char> has_negative_modes() const;

  // y = A- x and y = A+ x = A x + A- x, ascending-s reduction order.
  void apply_Aminus(const double* x, double* y) const;
  void apply_Aplus(const double* x, double* y) const;
  std::vector<double> apply_Aminus(const std::vector<double>& x) const;
  std::vector<double> apply_Aplus(const std::vector<double>& x) const;

  // Dense local blocks R^s A R^s^T and R^s A+ R^s^T (neighbor low-rank sum).
  DenseMatrix local_A_block(int s) const;
  DenseMatrix local_Aplus_block(int s) const;

  // w = (A^s_+)^dagger v via the eigendecomposition of B^s.
  void local_Aplus_pinv_apply(int s, const double* v, double* w) const;

  // Restriction helpers. local_index(s, i) is -1 when i is outside omega[s].
  void restrict_to(int s, const double* x, double* xs) const;
  void prolong_add(int s, const double* xs, double* x) const;
  int local_index(int s, int i) const { return global_to_local_[s][i]; }

 private:
  const SparseSymMatrix* a_;
  const Partition* part_;
  const PartitionOfUnity* pou_;
  std::vector<LocalSplit> splits_;
  std::vector<std::vector<int>> neighbors_;        // sorted, self included
  std::vector<std::vector<int>> global_to_local_;  // per subdomain, -1 outside
};

}  // namespace awg
