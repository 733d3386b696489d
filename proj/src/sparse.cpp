#include "awg/sparse.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace awg {

double SparseSymMatrix::at(int i, int j) const {
  for (int k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
    if (col_indices[k] == j) return values[k];
  return 0.0;
}

SparseSymMatrix TripletBuilder::build() const {
  const std::size_t m = rows_.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rows_[a] != rows_[b]) return rows_[a] < rows_[b];
    return cols_[a] < cols_[b];
  });

  SparseSymMatrix out;
  out.n = n_;
  out.row_offsets.assign(n_ + 1, 0);
  for (std::size_t k = 0; k < m;) {
    const int i = rows_[order[k]];
    const int j = cols_[order[k]];
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
      throw std::out_of_range("TripletBuilder: index out of range");
    double acc = 0.0;
    while (k < m && rows_[order[k]] == i && cols_[order[k]] == j) {
      acc += vals_[order[k]];
      ++k;
    }
    out.col_indices.push_back(j);
    out.values.push_back(acc);
    ++out.row_offsets[i + 1];
  }
  for (int i = 0; i < n_; ++i) out.row_offsets[i + 1] += out.row_offsets[i];
  return out;
}

void spmv(const SparseSymMatrix& a, const double* x, double* y) {
  for (int i = 0; i < a.n; ++i) {
    double acc = 0.0;
    for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
      acc += a.values[k] * x[a.col_indices[k]];
    y[i] = acc;
  }
}

std::vector<double> spmv(const SparseSymMatrix& a, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != a.n) throw std::invalid_argument("spmv: dimension mismatch");
  std::vector<double> y(a.n);
  spmv(a, x.data(), y.data());
  return y;
}

DenseMatrix densify(const SparseSymMatrix& a) {
  DenseMatrix d(a.n, a.n);
  for (int i = 0; i < a.n; ++i)
    for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
      d(i, a.col_indices[k]) = a.values[k];
  return d;
}

void write_matrix_market(const SparseSymMatrix& a, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  int nnz_lower = 0;
  for (int i = 0; i < a.n; ++i)
    for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
      if (a.col_indices[k] <= i) ++nnz_lower;
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate real symmetric\n");
  std::fprintf(f, "%d %d %d\n", a.n, a.n, nnz_lower);
  for (int i = 0; i < a.n; ++i)
    for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
      if (a.col_indices[k] <= i)
        std::fprintf(f, "%d %d %.17g\n", i + 1, a.col_indices[k] + 1, a.values[k]);
  std::fclose(f);
}

SparseSymMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty matrix file: " + path);
  {
    std::istringstream h(line);
    std::string banner, object, format, field, symmetry;
    h >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate" ||
        field != "real" || symmetry != "symmetric")
      throw std::runtime_error("unsupported matrix market header: " + line);
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  int rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream s(line);
    if (!(s >> rows >> cols >> nnz)) throw std::runtime_error("bad size line: " + line);
  }
  if (rows != cols) throw std::runtime_error("matrix not square: " + path);
  TripletBuilder b(rows);
  for (int k = 0; k < nnz; ++k) {
    int i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw std::runtime_error("truncated matrix file: " + path);
    b.add_sym(i - 1, j - 1, v);
  }
  return b.build();
}

void write_vector(const std::vector<double>& v, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::fprintf(f, "%zu\n", v.size());
  for (double x : v) std::fprintf(f, "%.17g\n", x);
  std::fclose(f);
}

std::vector<double> read_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::size_t n = 0;
  if (!(in >> n)) throw std::runtime_error("bad vector file: " + path);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!(in >> v[i])) throw std::runtime_error("truncated vector file: " + path);
  return v;
}

}  // namespace awg
