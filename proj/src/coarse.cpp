#include "awg/coarse.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace awg {

ThresholdSpec ThresholdSpec::nn(double tau_sharp) {
  if (!(tau_sharp > 0.0 && tau_sharp < 1.0))
    throw std::invalid_argument("NN threshold requires 0 < tau_sharp < 1");
  return {CoarseVariant::NN, tau_sharp, 0.0};
}

ThresholdSpec ThresholdSpec::as_plus(double tau_flat) {
  if (!(tau_flat > 1.0)) throw std::invalid_argument("AS_PLUS threshold requires tau_flat > 1");
  return {CoarseVariant::AS_PLUS, 0.0, tau_flat};
}

ThresholdSpec ThresholdSpec::as(double tau_sharp, double tau_flat) {
  if (!(tau_sharp > 0.0 && tau_sharp < 1.0) || !(tau_flat > 1.0))
    throw std::invalid_argument("AS threshold requires 0 < tau_sharp < 1 and tau_flat > 1");
  return {CoarseVariant::AS, tau_sharp, tau_flat};
}

DenseMatrix select_YL(const EigenDecomposition& eig, double tau) {
  const int m = static_cast<int>(eig.eigenvalues.size());
  int m_l = 0;
  while (m_l < m && eig.eigenvalues[m_l] < tau) ++m_l;  // lambda == tau excluded
  DenseMatrix y(eig.eigenvectors.rows, m_l);
  for (int k = 0; k < m_l; ++k)
    std::copy_n(eig.eigenvectors.col(k), eig.eigenvectors.rows, y.col(k));
  return y;
}

DenseMatrix select_YL(double tau, const DenseMatrix& ma, const DenseMatrix& mb) {
  return select_YL(generalized_sym_eig(ma, mb), tau);
}

DenseMatrix select_YH(const EigenDecomposition& eig, double tau) {
  const int m = static_cast<int>(eig.eigenvalues.size());
  int m_l = 0;
  while (m_l < m && eig.eigenvalues[m_l] < tau) ++m_l;
  DenseMatrix y(eig.eigenvectors.rows, m - m_l);
  for (int k = m_l; k < m; ++k)
    std::copy_n(eig.eigenvectors.col(k), eig.eigenvectors.rows, y.col(k - m_l));
  return y;
}

GeneoContext::GeneoContext(const Splitting& split) : split_(&split) {
  const int ns = split.partition().count();
  a_blocks_.resize(ns);
  aplus_blocks_.resize(ns);
  nn_.resize(ns);
  as1_.resize(ns);
  as2_.resize(ns);
}

const DenseMatrix& GeneoContext::a_block(int s) {
  if (!a_blocks_[s]) a_blocks_[s] = split_->local_A_block(s);
  return *a_blocks_[s];
}

const DenseMatrix& GeneoContext::aplus_block(int s) {
  if (!aplus_blocks_[s]) aplus_blocks_[s] = split_->local_Aplus_block(s);
  return *aplus_blocks_[s];
}

DenseMatrix GeneoContext::weighted_asplus(int s) const {
  const LocalSplit& ls = split_->splits()[s];
  const int n = ls.bs.rows;
  // A^s_+ = B^s + V^s_- |Lambda^s_-| V^s_-^T (rank n_neg update).
  DenseMatrix m = ls.bs;
  for (int k = 0; k < ls.n_nonpos; ++k) {
    const double lambda = ls.eig.eigenvalues[k];
    if (lambda == 0.0) continue;
    const double w = -lambda;
    const double* v = ls.eig.eigenvectors.col(k);
    for (int j = 0; j < n; ++j) {
      const double f = w * v[j];
      if (f == 0.0) continue;
      double* cj = m.col(j);
      for (int i = 0; i < n; ++i) cj[i] += f * v[i];
    }
  }
  // Ds^-1 (...) Ds^-1 with Ds^-1 = diag of multiplicities (integers).
  const auto& om = split_->partition().omega[s];
  const auto& mult = split_->pou().multiplicity;
  for (int j = 0; j < n; ++j) {
    const double mj = static_cast<double>(mult[om[j]]);
    double* cj = m.col(j);
    for (int i = 0; i < n; ++i) cj[i] *= mj * mult[om[i]];
  }
  symmetrize(m);
  return m;
}

const EigenDecomposition& GeneoContext::pencil_nn(int s) {
  if (!nn_[s]) nn_[s] = generalized_sym_eig(weighted_asplus(s), aplus_block(s));
  return *nn_[s];
}

const EigenDecomposition& GeneoContext::pencil_as1(int s) {
  if (!as1_[s]) as1_[s] = generalized_sym_eig(weighted_asplus(s), a_block(s));
  return *as1_[s];
}

const EigenDecomposition& GeneoContext::pencil_as2(int s) {
  if (!as2_[s]) as2_[s] = generalized_sym_eig(a_block(s), aplus_block(s));
  return *as2_[s];
}

CoarseSpace build_coarse(const ThresholdSpec& spec, GeneoContext& ctx) {
  const Splitting& split = ctx.splitting();
  const Partition& part = split.partition();
  const int n = split.n();

  std::vector<std::pair<int, DenseMatrix>> picked;  // (subdomain, local columns)
  for (int s = 0; s < part.count(); ++s) {
    switch (spec.variant) {
      case CoarseVariant::NN:
        picked.emplace_back(s, select_YL(ctx.pencil_nn(s), spec.tau_sharp));
        break;
      case CoarseVariant::AS_PLUS:
        picked.emplace_back(s, select_YL(ctx.pencil_nn(s), 1.0 / spec.tau_flat));
        break;
      case CoarseVariant::AS:
        picked.emplace_back(s, select_YL(ctx.pencil_as1(s), 1.0 / spec.tau_flat));
        picked.emplace_back(s, select_YL(ctx.pencil_as2(s), spec.tau_sharp));
        break;
    }
  }
  int n0 = 0;
  for (const auto& [s, y] : picked) n0 += y.cols;

  CoarseSpace cs;
  cs.z = DenseMatrix(n, n0);
  int col = 0;
  for (const auto& [s, y] : picked) {
    for (int k = 0; k < y.cols; ++k, ++col) split.prolong_add(s, y.col(k), cs.z.col(col));
  }

  // Coarse operator Z^T A+ Z, factorized rank-revealing so that
  // near-dependencies between prolonged vectors are absorbed.
  DenseMatrix g(n0, n0);
  std::vector<double> tmp(n);
  for (int j = 0; j < n0; ++j) {
    split.apply_Aplus(cs.z.col(j), tmp.data());
    matvec_transpose(cs.z, tmp.data(), g.col(j));
  }
  symmetrize(g);
  cs.k0 = rank_revealing_sym_factor(g);
  return cs;
}

void coarse_correct(const CoarseSpace& cs, const double* x, double* y) {
  const int n = cs.z.rows;
  if (cs.dim() == 0) {
    std::fill(y, y + n, 0.0);
    return;
  }
  std::vector<double> zx(cs.dim()), c(cs.dim());
  matvec_transpose(cs.z, x, zx.data());
  rank_revealing_solve(cs.k0, zx.data(), c.data());
  matvec(cs.z, c.data(), y);
}

void apply_projector(const CoarseSpace& cs, const ApplyFn& apply_m, const double* x, double* y) {
  const int n = cs.z.rows;
  if (cs.dim() == 0) {
    std::copy_n(x, n, y);
    return;
  }
  std::vector<double> mx(n), corr(n);
  apply_m(x, mx.data());
  coarse_correct(cs, mx.data(), corr.data());
  for (int i = 0; i < n; ++i) y[i] = x[i] - corr[i];
}

void apply_projector_transpose(const CoarseSpace& cs, const ApplyFn& apply_m, const double* x,
                               double* y) {
  const int n = cs.z.rows;
  if (cs.dim() == 0) {
    std::copy_n(x, n, y);
    return;
  }
  std::vector<double> corr(n), mc(n);
  coarse_correct(cs, x, corr.data());
  apply_m(corr.data(), mc.data());
  for (int i = 0; i < n; ++i) y[i] = x[i] - mc[i];
}

void dump_pencil_spectra(GeneoContext& ctx, CoarseVariant variant, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::fprintf(f, "subdomain,pencil,index,eigenvalue\n");
  const int ns = ctx.splitting().partition().count();
  auto dump = [&](int s, const char* name, const EigenDecomposition& e) {
    for (std::size_t k = 0; k < e.eigenvalues.size(); ++k)
      std::fprintf(f, "%d,%s,%zu,%.12g\n", s, name, k, e.eigenvalues[k]);
  };
  for (int s = 0; s < ns; ++s) {
    switch (variant) {
      case CoarseVariant::NN:
      case CoarseVariant::AS_PLUS:
        dump(s, "nn", ctx.pencil_nn(s));
        break;
      case CoarseVariant::AS:
        dump(s, "as1", ctx.pencil_as1(s));
        dump(s, "as2", ctx.pencil_as2(s));
        break;
    }
  }
  std::fclose(f);
}

}  // namespace awg
