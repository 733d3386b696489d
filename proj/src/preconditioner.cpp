#include "awg/preconditioner.hpp"

#include <cmath>
#include <stdexcept>

namespace awg {

ThresholdSpec PreconditionerConfig::threshold() const {
  switch (one_level) {
    case OneLevelKind::NN:
      return ThresholdSpec::nn(tau_sharp);
    case OneLevelKind::AS_PLUS:
      return ThresholdSpec::as_plus(tau_flat);
    case OneLevelKind::AS:
      return ThresholdSpec::as(tau_sharp, tau_flat);
  }
  throw std::logic_error("unreachable");
}

OneLevel::OneLevel(OneLevelKind kind, const Splitting& split) : kind_(kind), split_(&split) {
  const int ns = split.partition().count();
  if (kind == OneLevelKind::AS || kind == OneLevelKind::AS_PLUS) {
    local_.reserve(ns);
    for (int s = 0; s < ns; ++s) {
      const DenseMatrix block =
          (kind == OneLevelKind::AS) ? split.local_A_block(s) : split.local_Aplus_block(s);
      local_.push_back(cholesky(block));  // NotSpdError here means a broken block
    }
  }
}

void OneLevel::apply(const double* x, double* y) const {
  const Partition& part = split_->partition();
  const int n = split_->n();
  std::fill(y, y + n, 0.0);
  std::vector<double> xs, ys;
  for (int s = 0; s < part.count(); ++s) {
    const int ns = part.size_of(s);
    xs.resize(ns);
    ys.resize(ns);
    split_->restrict_to(s, x, xs.data());
    switch (kind_) {
      case OneLevelKind::AS:
      case OneLevelKind::AS_PLUS:
        cholesky_solve(local_[s], xs.data(), ys.data());
        break;
      case OneLevelKind::NN: {
        const auto& ds = split_->pou().ds[s];
        for (int k = 0; k < ns; ++k) xs[k] *= ds[k];
        split_->local_Aplus_pinv_apply(s, xs.data(), ys.data());
        for (int k = 0; k < ns; ++k) ys[k] *= ds[k];
        break;
      }
    }
    split_->prolong_add(s, ys.data(), y);
  }
}

TwoLevel::TwoLevel(OneLevel one, CoarseSpace coarse, Composition comp, const Splitting& split)
    : one_(std::move(one)), coarse_(std::move(coarse)), comp_(comp), split_(&split) {}

int TwoLevel::n() const { return split_->n(); }

void TwoLevel::apply(const double* x, double* y) const {
  const int n = split_->n();
  if (coarse_.dim() == 0) {
    one_.apply(x, y);
    return;
  }
  const ApplyFn aplus = [this](const double* u, double* v) { split_->apply_Aplus(u, v); };
  std::vector<double> corr(n);
  coarse_correct(coarse_, x, corr.data());
  if (comp_ == Composition::ADDITIVE) {
    one_.apply(x, y);
  } else {
    std::vector<double> pt(n), hp(n);
    apply_projector_transpose(coarse_, aplus, x, pt.data());
    one_.apply(pt.data(), hp.data());
    apply_projector(coarse_, aplus, hp.data(), y);
  }
  for (int i = 0; i < n; ++i) y[i] += corr[i];
}

SecondCoarse build_w(const Splitting& split, const TwoLevel& h2, double w_rtol,
                     int maxit_factor) {
  const int n = split.n();
  const int n_minus = split.n_minus();
  SecondCoarse sc;
  sc.w = DenseMatrix(n, n_minus);
  sc.v_minus = DenseMatrix(n, n_minus);
  sc.neg_weights.reserve(n_minus);
  if (n_minus == 0) return sc;

  const ApplyFn aplus = [&split](const double* u, double* v) { split.apply_Aplus(u, v); };
  const ApplyFn happly = [&h2](const double* u, double* v) { h2.apply(u, v); };

  int col = 0;
  std::vector<double> rhs(n);
  for (int s = 0; s < split.partition().count(); ++s) {
    const LocalSplit& ls = split.splits()[s];
    for (int k = 0; k < ls.n_nonpos; ++k) {
      const double lambda = ls.eig.eigenvalues[k];
      if (lambda == 0.0) continue;  // kernel columns of B^s are dropped
      std::fill(rhs.begin(), rhs.end(), 0.0);
      split.prolong_add(s, ls.eig.eigenvectors.col(k), rhs.data());
      std::copy_n(rhs.data(), n, sc.v_minus.col(col));
      sc.neg_weights.push_back(-lambda);

      auto [w_col, rep] = pcg(aplus, happly, rhs, w_rtol, maxit_factor * n);
      if (!rep.converged)
        throw std::runtime_error("build_w: inner PCG for a W column did not converge");
      std::copy_n(w_col.data(), n, sc.w.col(col));
      sc.inner_iterations.push_back(rep.iterations);
      ++col;
    }
  }

  // Coarse operator W^T A W, rank-revealing in case of linear dependencies.
  DenseMatrix g(n_minus, n_minus);
  std::vector<double> tmp(n);
  for (int j = 0; j < n_minus; ++j) {
    spmv(split.matrix(), sc.w.col(j), tmp.data());
    matvec_transpose(sc.w, tmp.data(), g.col(j));
  }
  symmetrize(g);
  sc.kw = rank_revealing_sym_factor(g);
  return sc;
}

AwgPreconditioner::AwgPreconditioner(AwgMode mode, std::shared_ptr<const TwoLevel> h2,
                                     std::shared_ptr<const SecondCoarse> sc,
                                     const Splitting& split)
    : mode_(mode), h2_(std::move(h2)), sc_(std::move(sc)), split_(&split) {
  if (mode_ == AwgMode::INEX && sc_ && sc_->n_minus() > 0) {
    // Core of the low-rank correction: Lambda_-^-1 - V_-^T (A+^-1 V_-), the
    // A+^-1 V_- columns being exactly the W solves.
    const int m = sc_->n_minus();
    DenseMatrix core(m, m);
    for (int j = 0; j < m; ++j) {
      matvec_transpose(sc_->v_minus, sc_->w.col(j), core.col(j));
      for (int i = 0; i < m; ++i) core(i, j) = -core(i, j);
      core(j, j) += 1.0 / sc_->neg_weights[j];
    }
    core_ = lu_factor(std::move(core));
    has_core_ = true;
  }
}

void AwgPreconditioner::second_correct(const double* x, double* y) const {
  const int n = split_->n();
  if (!sc_ || sc_->n_minus() == 0) {
    std::fill(y, y + n, 0.0);
    return;
  }
  std::vector<double> wx(sc_->n_minus()), c(sc_->n_minus());
  matvec_transpose(sc_->w, x, wx.data());
  rank_revealing_solve(sc_->kw, wx.data(), c.data());
  matvec(sc_->w, c.data(), y);
}

void AwgPreconditioner::apply_pi3(const double* x, double* y) const {
  const int n = split_->n();
  if (!sc_ || sc_->n_minus() == 0) {
    std::copy_n(x, n, y);
    return;
  }
  std::vector<double> ax(n), corr(n);
  spmv(split_->matrix(), x, ax.data());
  second_correct(ax.data(), corr.data());
  for (int i = 0; i < n; ++i) y[i] = x[i] - corr[i];
}

void AwgPreconditioner::apply_pi3_transpose(const double* x, double* y) const {
  const int n = split_->n();
  if (!sc_ || sc_->n_minus() == 0) {
    std::copy_n(x, n, y);
    return;
  }
  std::vector<double> corr(n), ac(n);
  second_correct(x, corr.data());
  spmv(split_->matrix(), corr.data(), ac.data());
  for (int i = 0; i < n; ++i) y[i] = x[i] - ac[i];
}

void AwgPreconditioner::apply(const double* x, double* y) const {
  const int n = split_->n();
  if (mode_ == AwgMode::NONE || !sc_ || sc_->n_minus() == 0) {
    h2_->apply(x, y);
    return;
  }
  switch (mode_) {
    case AwgMode::AD: {
      std::vector<double> corr(n);
      second_correct(x, corr.data());
      h2_->apply(x, y);
      for (int i = 0; i < n; ++i) y[i] += corr[i];
      break;
    }
    case AwgMode::HYB: {
      std::vector<double> corr(n), pt(n), hp(n);
      second_correct(x, corr.data());
      apply_pi3_transpose(x, pt.data());
      h2_->apply(pt.data(), hp.data());
      apply_pi3(hp.data(), y);
      for (int i = 0; i < n; ++i) y[i] += corr[i];
      break;
    }
    case AwgMode::INEX: {
      const int m = sc_->n_minus();
      std::vector<double> wx(m), c(m), corr(n);
      matvec_transpose(sc_->w, x, wx.data());
      lu_solve(core_, wx.data(), c.data());
      matvec(sc_->w, c.data(), corr.data());
      h2_->apply(x, y);
      for (int i = 0; i < n; ++i) y[i] += corr[i];
      break;
    }
    case AwgMode::NONE:
      break;  // handled above
  }
}

}  // namespace awg
