#include "awg/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace awg {

namespace {

std::vector<std::vector<int>> memberships(const Partition& p) {
  std::vector<std::vector<int>> subs(p.n);
  for (int s = 0; s < p.count(); ++s)
    for (int i : p.omega[s]) subs[i].push_back(s);
  return subs;
}

// Multiplicity of each stored entry: #(s : {i,j} in omega[s]), parallel to
// a.values.
std::vector<int> entry_multiplicities(const SparseSymMatrix& a, const Partition& p) {
  const auto subs = memberships(p);
  std::vector<int> mmu(a.values.size(), 0);
  for (int i = 0; i < a.n; ++i) {
    for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
      const int j = a.col_indices[k];
      int count = 0;
      for (int s : subs[i])
        count += std::binary_search(p.omega[s].begin(), p.omega[s].end(), j) ? 1 : 0;
      mmu[k] = count;
    }
  }
  return mmu;
}

}  // namespace

std::vector<DenseMatrix> build_Bs(const SparseSymMatrix& a, const Partition& p) {
  const auto mmu = entry_multiplicities(a, p);
  for (std::size_t k = 0; k < mmu.size(); ++k)
    if (mmu[k] == 0)
      throw std::runtime_error("build_Bs: minimal overlap violated (uncovered stored entry)");

  std::vector<DenseMatrix> bs;
  bs.reserve(p.count());
  std::vector<int> g2l(a.n, -1);
  for (int s = 0; s < p.count(); ++s) {
    const auto& om = p.omega[s];
    const int ns = static_cast<int>(om.size());
    for (int k = 0; k < ns; ++k) g2l[om[k]] = k;
    DenseMatrix m(ns, ns);
    for (int k = 0; k < ns; ++k) {
      const int i = om[k];
      for (int e = a.row_offsets[i]; e < a.row_offsets[i + 1]; ++e) {
        const int lj = g2l[a.col_indices[e]];
        if (lj >= 0) m(k, lj) = a.values[e] / mmu[e];
      }
    }
    for (int k = 0; k < ns; ++k) g2l[om[k]] = -1;
    bs.push_back(std::move(m));
  }
  return bs;
}

LocalSplit eigsplit(const DenseMatrix& bs, int s) {
  LocalSplit ls;
  ls.s = s;
  ls.bs = bs;
  ls.eig = dense_sym_eig(bs);
  const int ns = bs.rows;
  double max_abs_ev = 0.0;
  for (double v : ls.eig.eigenvalues) max_abs_ev = std::max(max_abs_ev, std::abs(v));
  ls.eps_zero = 1e-12 * max_abs_ev * ns;
  for (int k = 0; k < ns; ++k) {
    if (ls.eig.eigenvalues[k] > ls.eps_zero) break;
    ++ls.n_nonpos;
    if (std::abs(ls.eig.eigenvalues[k]) <= ls.eps_zero) {
      ls.eig.eigenvalues[k] = 0.0;  // snap: zero eigenvalues live in the minus block
      ++ls.n_zero;
    }
  }
  // Snapping can only apply to a contiguous run around zero; re-sorting is
  // unnecessary because values below -eps_zero stay put.
  return ls;
}

Splitting::Splitting(const SparseSymMatrix& a, const Partition& p, const PartitionOfUnity& pou)
    : a_(&a), part_(&p), pou_(&pou) {
  auto bs = build_Bs(a, p);
  splits_.reserve(p.count());
  for (int s = 0; s < p.count(); ++s) splits_.push_back(eigsplit(bs[s], s));

  global_to_local_.assign(p.count(), std::vector<int>(a.n, -1));
  for (int s = 0; s < p.count(); ++s)
    for (int k = 0; k < p.size_of(s); ++k) global_to_local_[s][p.omega[s][k]] = k;

  const auto subs = memberships(p);
  neighbors_.assign(p.count(), {});
  std::vector<std::vector<char>> touch(p.count(), std::vector<char>(p.count(), 0));
  for (int i = 0; i < a.n; ++i)
    for (int s : subs[i])
      for (int t : subs[i]) touch[s][t] = 1;
  for (int s = 0; s < p.count(); ++s)
    for (int t = 0; t < p.count(); ++t)
      if (touch[s][t]) neighbors_[s].push_back(t);
}

int Splitting::n_minus() const {
  int total = 0;
  for (const auto& ls : splits_) total += ls.n_neg();
  return total;
}

std::vector<char> Splitting::has_negative_modes() const {
  std::vector<char> has(splits_.size(), 0);
  for (std::size_t s = 0; s < splits_.size(); ++s) has[s] = splits_[s].n_neg() > 0;
  return has;
}

void Splitting::apply_Aminus(const double* x, double* y) const {
  std::fill(y, y + n(), 0.0);
  std::vector<double> xs, u;
  for (int s = 0; s < part_->count(); ++s) {
    const LocalSplit& ls = splits_[s];
    if (ls.n_neg() == 0) continue;
    const int ns = part_->size_of(s);
    xs.resize(ns);
    restrict_to(s, x, xs.data());
    u.assign(ns, 0.0);
    for (int k = 0; k < ls.n_nonpos; ++k) {
      const double lambda = ls.eig.eigenvalues[k];
      if (lambda == 0.0) continue;
      const double* v = ls.eig.eigenvectors.col(k);
      double dot = 0.0;
      for (int i = 0; i < ns; ++i) dot += v[i] * xs[i];
      const double f = -lambda * dot;  // -lambda > 0
      for (int i = 0; i < ns; ++i) u[i] += f * v[i];
    }
    prolong_add(s, u.data(), y);
  }
}

void Splitting::apply_Aplus(const double* x, double* y) const {
  apply_Aminus(x, y);
  std::vector<double> ax(n());
  spmv(*a_, x, ax.data());
  for (int i = 0; i < n(); ++i) y[i] += ax[i];
}

std::vector<double> Splitting::apply_Aminus(const std::vector<double>& x) const {
  std::vector<double> y(n());
  apply_Aminus(x.data(), y.data());
  return y;
}

std::vector<double> Splitting::apply_Aplus(const std::vector<double>& x) const {
  std::vector<double> y(n());
  apply_Aplus(x.data(), y.data());
  return y;
}

DenseMatrix Splitting::local_A_block(int s) const {
  const auto& om = part_->omega[s];
  const int ns = static_cast<int>(om.size());
  DenseMatrix m(ns, ns);
  for (int k = 0; k < ns; ++k) {
    const int i = om[k];
    for (int e = a_->row_offsets[i]; e < a_->row_offsets[i + 1]; ++e) {
      const int lj = global_to_local_[s][a_->col_indices[e]];
      if (lj >= 0) m(k, lj) = a_->values[e];
    }
  }
  return m;
}

DenseMatrix Splitting::local_Aplus_block(int s) const {
  DenseMatrix m = local_A_block(s);
  const int ns = part_->size_of(s);
  // R^s A+ R^s^T = R^s A R^s^T + sum over neighbors t of the restricted
  // negative blocks; terms with empty overlap vanish.
  for (int t : neighbors_[s]) {
    const LocalSplit& lt = splits_[t];
    if (lt.n_neg() == 0) continue;
    // Shared indices: rows of V^t_- seen from s.
    std::vector<int> in_s, in_t;
    for (int k = 0; k < part_->size_of(t); ++k) {
      const int g = part_->omega[t][k];
      const int l = global_to_local_[s][g];
      if (l >= 0) {
        in_s.push_back(l);
        in_t.push_back(k);
      }
    }
    const int m_shared = static_cast<int>(in_s.size());
    if (m_shared == 0) continue;
    for (int k = 0; k < lt.n_nonpos; ++k) {
      const double lambda = lt.eig.eigenvalues[k];
      if (lambda == 0.0) continue;
      const double w = -lambda;
      const double* v = lt.eig.eigenvectors.col(k);
      for (int b = 0; b < m_shared; ++b) {
        const double f = w * v[in_t[b]];
        if (f == 0.0) continue;
        double* colb = m.col(in_s[b]);
        for (int c = 0; c < m_shared; ++c) colb[in_s[c]] += f * v[in_t[c]];
      }
    }
  }
  return m;
}

void Splitting::local_Aplus_pinv_apply(int s, const double* v, double* w) const {
  const LocalSplit& ls = splits_[s];
  const int ns = part_->size_of(s);
  std::vector<double> u(ns);
  matvec_transpose(ls.eig.eigenvectors, v, u.data());
  for (int k = 0; k < ns; ++k) u[k] = (k < ls.n_nonpos) ? 0.0 : u[k] / ls.eig.eigenvalues[k];
  matvec(ls.eig.eigenvectors, u.data(), w);
}

void Splitting::restrict_to(int s, const double* x, double* xs) const {
  const auto& om = part_->omega[s];
  for (std::size_t k = 0; k < om.size(); ++k) xs[k] = x[om[k]];
}

void Splitting::prolong_add(int s, const double* xs, double* x) const {
  const auto& om = part_->omega[s];
  for (std::size_t k = 0; k < om.size(); ++k) x[om[k]] += xs[k];
}

}  // namespace awg
