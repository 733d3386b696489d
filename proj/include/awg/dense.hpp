// Dense symmetric linear algebra kernels: Jacobi eigensolver, Cholesky,
// generalized eigenproblems via Cholesky reduction, pivoted (rank-revealing)
// factorization. Everything is double precision, column-major.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace awg {

struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  // column-major, a[i + j*rows]

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[std::size_t(i) + std::size_t(j) * rows]; }
  double operator()(int i, int j) const { return a[std::size_t(i) + std::size_t(j) * rows]; }

  double* col(int j) { return a.data() + std::size_t(j) * rows; }
  const double* col(int j) const { return a.data() + std::size_t(j) * rows; }

  static DenseMatrix identity(int n);
};

DenseMatrix transpose(const DenseMatrix& m);
DenseMatrix matmul(const DenseMatrix& x, const DenseMatrix& y);

// y = M x (y must not alias x)
void matvec(const DenseMatrix& m, const double* x, double* y);
// y = M^T x
void matvec_transpose(const DenseMatrix& m, const double* x, double* y);

double frobenius_norm(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);
void symmetrize(DenseMatrix& m);  // m <- (m + m^T)/2

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix eigenvectors;         // column k pairs with eigenvalues[k]
};

/// Full spectrum of a symmetric matrix by cyclic Jacobi iteration.
/// Sweeps until the off-diagonal Frobenius norm is below 1e-14 * ||M||_F.
/// Throws if M is not symmetric (1e-12 relative) or after 100 sweeps.
EigenDecomposition dense_sym_eig(const DenseMatrix& m);

/// Eigenpairs of the pencil (ma, mb) with ma symmetric positive
/// semi-definite and mb symmetric positive definite: ma y = lambda mb y,
/// <y, mb y> = 1, lambda ascending. Reduction mb = L L^T to a standard
/// problem on L^-1 ma L^-T, back-transformed as y = L^-T z.
EigenDecomposition generalized_sym_eig(const DenseMatrix& ma, const DenseMatrix& mb);

struct NotSpdError : std::runtime_error {
  int pivot_index;
  explicit NotSpdError(int k)
      : std::runtime_error("matrix not spd: non-positive pivot at index " + std::to_string(k)),
        pivot_index(k) {}
};

struct CholeskyFactor {
  DenseMatrix l;  // lower triangular, M = L L^T
};

CholeskyFactor cholesky(const DenseMatrix& m);  // throws NotSpdError
void cholesky_solve(const CholeskyFactor& f, const double* b, double* x);
std::vector<double> cholesky_solve(const CholeskyFactor& f, const std::vector<double>& b);

// In-place multi-rhs triangular solves with the factor of `f`.
void forward_solve_multi(const DenseMatrix& l, DenseMatrix& b);   // B <- L^-1 B
void backward_solve_multi(const DenseMatrix& l, DenseMatrix& b);  // B <- L^-T B

/// Pivoted Cholesky of an spsd matrix. Pivots are chosen greedily by largest
/// remaining diagonal; the factorization stops once the best remaining pivot
/// drops to <= drop_tol * (largest pivot). Solves act on the retained
/// subspace only (entries outside it are returned as zero).
struct RankRevealingFactor {
  DenseMatrix l11;            // r x r lower triangle, in pivot order
  std::vector<int> retained;  // original indices of retained pivots, in order
  int original_dim = 0;
  int rank() const { return static_cast<int>(retained.size()); }
};

RankRevealingFactor rank_revealing_sym_factor(const DenseMatrix& m, double drop_tol = 1e-10);
void rank_revealing_solve(const RankRevealingFactor& f, const double* b, double* x);

// LU with partial pivoting, for the (symmetric but possibly indefinite)
// Woodbury core matrix.
struct LuFactor {
  DenseMatrix lu;
  std::vector<int> perm;
};
LuFactor lu_factor(DenseMatrix m);
void lu_solve(const LuFactor& f, const double* b, double* x);

}  // namespace awg
