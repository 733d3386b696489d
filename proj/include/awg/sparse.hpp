// Compressed sparse row storage for symmetric matrices (both triangles
// stored) and coordinate-format file exchange.
#pragma once

#include <string>
#include <vector>

#include "awg/dense.hpp"

namespace awg {

struct SparseSymMatrix {
  int n = 0;
  std::vector<int> row_offsets;  // size n+1
  std::vector<int> col_indices;  // strictly increasing within each row
  std::vector<double> values;

  int nnz() const { return static_cast<int>(col_indices.size()); }
  // Stored entry (i,j), 0.0 if outside the pattern.
  double at(int i, int j) const;
};

// Accumulating COO -> CSR builder. Duplicate (i,j) entries are summed in
// insertion order; contributions added symmetrically in the same order keep
// the two triangles bit-identical.
class TripletBuilder {
 public:
  explicit TripletBuilder(int n) : n_(n) {}
  void add(int i, int j, double v) { rows_.push_back(i); cols_.push_back(j); vals_.push_back(v); }
  void add_sym(int i, int j, double v) {
    add(i, j, v);
    if (i != j) add(j, i, v);
  }
  SparseSymMatrix build() const;

 private:
  int n_;
  std::vector<int> rows_, cols_;
  std::vector<double> vals_;
};

/// y = A x with a fixed (ascending column index per row) summation order.
void spmv(const SparseSymMatrix& a, const double* x, double* y);
std::vector<double> spmv(const SparseSymMatrix& a, const std::vector<double>& x);

DenseMatrix densify(const SparseSymMatrix& a);

// Coordinate-format text exchange ("%%MatrixMarket matrix coordinate real
// symmetric", 1-based). Writes the lower triangle including explicitly
// stored zeros; reading stores both triangles. Values round-trip bit-exactly.
void write_matrix_market(const SparseSymMatrix& a, const std::string& path);
SparseSymMatrix read_matrix_market(const std::string& path);

void write_vector(const std::vector<double>& v, const std::string& path);
std::vector<double> read_vector(const std::string& path);

}  // namespace awg
