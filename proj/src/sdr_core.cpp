#include "aoisim/sdr_core.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace aoisim {

void UnitDiagSDP::validate() const {
  if (objective.rows() != objective.cols() || objective.rows() < 1) {
    throw std::invalid_argument("UnitDiagSDP: objective must be square");
  }
  const double scale = std::max(objective.cwiseAbs().maxCoeff(), 1.0);
  if (!is_hermitian(objective, 1e-9 * scale)) {
    throw std::invalid_argument("UnitDiagSDP: objective must be Hermitian");
  }
  for (const auto& con : constraints) {
    if (con.matrix.rows() != objective.rows() || con.matrix.cols() != objective.cols()) {
      throw std::invalid_argument("UnitDiagSDP: constraint dimension mismatch");
    }
    if (!std::isfinite(con.rhs)) {
      throw std::invalid_argument("UnitDiagSDP: constraint rhs must be finite");
    }
  }
}

CMat build_rk(const CMat& f_cascade, const CVec& h_d, const CVec& w) {
  const Eigen::Index m = f_cascade.rows();
  const Eigen::Index n = f_cascade.cols();
  if (h_d.size() != m || w.size() != m) {
    throw std::invalid_argument("build_rk: dimension mismatch");
  }
  const CVec fw = f_cascade.adjoint() * w;        // F^H w, length n
  const std::complex<double> hw = (h_d.adjoint() * w)(0);  // h_d^H w

  CMat r = CMat::Zero(n + 1, n + 1);
  r.topLeftCorner(n, n) = fw * fw.adjoint();
  r.topRightCorner(n, 1) = fw * std::conj(hw);
  r.bottomLeftCorner(1, n) = hw * fw.adjoint();
  return r;
}

CMat build_gain_matrix(const CMat& f_cascade, const CVec& h_d) {
  const Eigen::Index m = f_cascade.rows();
  const Eigen::Index n = f_cascade.cols();
  if (h_d.size() != m) {
    throw std::invalid_argument("build_gain_matrix: dimension mismatch");
  }
  CMat r = CMat::Zero(n + 1, n + 1);
  r.topLeftCorner(n, n) = f_cascade.adjoint() * f_cascade;
  r.topRightCorner(n, 1) = f_cascade.adjoint() * h_d;
  r.bottomLeftCorner(1, n) = r.topRightCorner(n, 1).adjoint();
  return r;
}

namespace {

double gershgorin_bound(const CMat& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

// ---------------------------------------------------------------------------
// Dual barrier path-following solver for
//   max Tr(C X)  s.t.  [diag(X) = 1]  Tr(B_j X) >= c_j  X >= 0 (Hermitian)
// The dual is min 1'y - c'z s.t. S = Diag(y) - sum_j z_j B_j - C >= 0, z >= 0
// (the y block is absent when unit_diag is false). The centered primal
// iterate is recovered as X = S^{-1}/t.
// ---------------------------------------------------------------------------

struct IpmProblem {
  CMat c;
  bool unit_diag = true;
  std::vector<CMat> b;      // inequality matrices
  std::vector<double> rhs;  // inequality right-hand sides
};

struct IpmResult {
  CMat x;
  double objective = 0.0;
  SdpStatus status = SdpStatus::max_iter;
};

class IpmSolver {
 public:
  explicit IpmSolver(const IpmProblem& p)
      : prob_(p),
        n_(p.c.rows()),
        nj_(static_cast<Eigen::Index>(p.b.size())),
        ny_(p.unit_diag ? n_ : 0) {}

  IpmResult solve() {
    initialize();
    const double nu = static_cast<double>(n_ + nj_);
    double t = 1.0;
    IpmResult res;
    int newton_budget = 4000;

    for (int outer = 0; outer < 60; ++outer) {
      if (!center(t, newton_budget)) {
        res.status = diverged_ ? SdpStatus::infeasible : SdpStatus::max_iter;
        recover(res, t);
        return res;
      }
      const double dual_obj = dual_objective();
      if (nu / t <= 1e-9 * std::max(1.0, std::abs(dual_obj))) {
        res.status = SdpStatus::optimal;
        recover(res, t);
        return res;
      }
      t *= 20.0;
    }
    res.status = SdpStatus::max_iter;
    recover(res, t);
    return res;
  }

 private:
  void initialize() {
    z_ = Eigen::VectorXd::Ones(nj_);
    CMat m0 = prob_.c;
    for (Eigen::Index j = 0; j < nj_; ++j) m0 += z_(j) * prob_.b[j];
    if (prob_.unit_diag) {
      y_ = (m0.cwiseAbs().rowwise().sum().real().array() + 1.0).matrix();
    } else {
      // raise the multiplier of a negative-definite inequality matrix
      // (the lifted trace bound, B = -I) until S is positive definite
      Eigen::Index tr = -1;
      for (Eigen::Index j = 0; j < nj_; ++j) {
        if ((prob_.b[j] + CMat::Identity(n_, n_)).cwiseAbs().maxCoeff() < 1e-12) {
          tr = j;
          break;
        }
      }
      if (tr < 0) throw std::logic_error("IpmSolver: no trace bound to initialize from");
      CMat rest = prob_.c;
      for (Eigen::Index j = 0; j < nj_; ++j) {
        if (j != tr) rest += z_(j) * prob_.b[j];
      }
      z_(tr) = gershgorin_bound(rest) + 1.0;
    }
  }

  CMat assemble_s(const Eigen::VectorXd& y, const Eigen::VectorXd& z) const {
    CMat s = -prob_.c;
    if (prob_.unit_diag) s += y.cast<std::complex<double>>().asDiagonal();
    for (Eigen::Index j = 0; j < nj_; ++j) s -= z(j) * prob_.b[j];
    return s;
  }

  bool is_pd(const CMat& s) const {
    Eigen::LLT<CMat> llt(s);
    return llt.info() == Eigen::Success;
  }

  double barrier_value(double t, const Eigen::VectorXd& y, const Eigen::VectorXd& z) const {
    const CMat s = assemble_s(y, z);
    Eigen::LLT<CMat> llt(s);
    if (llt.info() != Eigen::Success || (z.array() <= 0.0).any()) {
      return std::numeric_limits<double>::infinity();
    }
    const CMat l = llt.matrixL();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < n_; ++i) logdet += 2.0 * std::log(l(i, i).real());
    double val = -logdet - z.array().log().sum();
    if (prob_.unit_diag) val += t * y.sum();
    for (Eigen::Index j = 0; j < nj_; ++j) val -= t * prob_.rhs[j] * z(j);
    return val;
  }

  double dual_objective() const {
    double v = prob_.unit_diag ? y_.sum() : 0.0;
    for (Eigen::Index j = 0; j < nj_; ++j) v -= prob_.rhs[j] * z_(j);
    return v;
  }

  // Newton iterations toward the t-center. Returns false on divergence or
  // an exhausted budget.
  bool center(double t, int& budget) {
    for (; budget > 0; --budget) {
      const CMat s = assemble_s(y_, z_);
      Eigen::LLT<CMat> llt(s);
      if (llt.info() != Eigen::Success) return false;  // should not happen
      const CMat sinv = llt.solve(CMat::Identity(n_, n_));

      const Eigen::Index dim = ny_ + nj_;
      Eigen::VectorXd grad(dim);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(dim, dim);

      if (prob_.unit_diag) {
        grad.head(ny_) = t * Eigen::VectorXd::Ones(ny_) - sinv.diagonal().real();
        hess.topLeftCorner(ny_, ny_) = sinv.cwiseAbs2();
      }
      std::vector<CMat> p(static_cast<std::size_t>(nj_));
      for (Eigen::Index j = 0; j < nj_; ++j) {
        const CMat half = sinv * prob_.b[j];
        p[static_cast<std::size_t>(j)] = half * sinv;
        grad(ny_ + j) = -t * prob_.rhs[j] + half.trace().real() - 1.0 / z_(j);
        if (prob_.unit_diag) {
          hess.block(0, ny_ + j, ny_, 1) =
              -p[static_cast<std::size_t>(j)].diagonal().real();
          hess.block(ny_ + j, 0, 1, ny_) = hess.block(0, ny_ + j, ny_, 1).transpose();
        }
        for (Eigen::Index l = 0; l <= j; ++l) {
          const double v =
              (p[static_cast<std::size_t>(j)].cwiseProduct(prob_.b[l].transpose())).sum().real();
          hess(ny_ + j, ny_ + l) = v;
          hess(ny_ + l, ny_ + j) = v;
        }
        hess(ny_ + j, ny_ + j) += 1.0 / (z_(j) * z_(j));
      }

      // damped Newton step
      Eigen::VectorXd step;
      double ridge = 0.0;
      for (int attempt = 0; attempt < 6; ++attempt) {
        Eigen::MatrixXd h = hess;
        if (ridge > 0.0) h.diagonal().array() += ridge;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
        step = ldlt.solve(-grad);
        if (ldlt.info() == Eigen::Success && step.allFinite() &&
            -grad.dot(step) >= 0.0) {
          break;
        }
        ridge = (ridge == 0.0) ? 1e-10 * hess.diagonal().maxCoeff() : ridge * 100.0;
      }
      const double decrement2 = -grad.dot(step);
      if (!std::isfinite(decrement2)) return false;
      if (decrement2 <= 1e-9 * std::max(1.0, t)) return true;  // centered

      const double base = barrier_value(t, y_, z_);
      double alpha = 1.0;
      Eigen::VectorXd y_new = y_, z_new = z_;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        if (prob_.unit_diag) y_new = y_ + alpha * step.head(ny_);
        z_new = z_ + alpha * step.tail(nj_);
        const double val = barrier_value(t, y_new, z_new);
        if (val <= base - 0.25 * alpha * decrement2) {
          y_ = y_new;
          z_ = z_new;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) {
        // numerically stuck: fine if already near the center
        return decrement2 <= 1e-3 * std::max(1.0, t);
      }

      if (dual_objective() < -1e12 * scale_hint_) {
        diverged_ = true;  // dual unbounded below: primal infeasible
        return false;
      }
    }
    return false;
  }

  void recover(IpmResult& res, double t) const {
    const CMat s = assemble_s(y_, z_);
    Eigen::LLT<CMat> llt(s);
    CMat x = llt.solve(CMat::Identity(n_, n_)) / t;
    x = 0.5 * (x + x.adjoint().eval());
    if (prob_.unit_diag && res.status == SdpStatus::optimal) {
      // exact unit diagonal: X <- D^{-1/2} X D^{-1/2}
      Eigen::VectorXd d = x.diagonal().real().cwiseMax(1e-300);
      const Eigen::VectorXd dinv = d.cwiseSqrt().cwiseInverse();
      x = dinv.cast<std::complex<double>>().asDiagonal() * x *
          dinv.cast<std::complex<double>>().asDiagonal();
    }
    res.x = x;
    res.objective = (prob_.c.cwiseProduct(x.transpose())).sum().real();
  }

  const IpmProblem& prob_;
  Eigen::Index n_, nj_, ny_;
  Eigen::VectorXd y_, z_;
  double scale_hint_ = 1.0;
  bool diverged_ = false;
};

// ---------------------------------------------------------------------------
// Element-wise coordinate ascent on unit-modulus phases: each coordinate has
// the closed-form optimum theta_i = arg(c_i) holding the others fixed. Used
// as the fast path for unconstrained problems; returns a rank-one solution.
// ---------------------------------------------------------------------------

std::pair<CVec, double> power_top_phases(const CMat& r) {
  // phases of the dominant eigenvector of the PSD shift of r
  const Eigen::Index n = r.rows();
  CMat shifted = r + (gershgorin_bound(r) + 1.0) * CMat::Identity(n, n);
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = std::complex<double>(1.0, 0.1 * static_cast<double>(i + 1));
  }
  v /= v.norm();
  for (int it = 0; it < 200; ++it) {
    CVec w = shifted * v;
    w /= w.norm();
    if ((w - v).norm() < 1e-12) {
      v = w;
      break;
    }
    v = w;
  }
  CVec phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = std::abs(v(i));
    phases(i) = a > 1e-14 ? v(i) / a : std::complex<double>(1.0, 0.0);
  }
  // gauge: rotate so the last coordinate is exactly 1
  phases *= std::conj(phases(n - 1));
  phases(n - 1) = 1.0;
  return {phases, 0.0};
}

double ca_run(const CMat& r, CVec& tb, int max_sweeps) {
  const Eigen::Index n = r.rows();
  CVec u = r * tb;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (Eigen::Index i = 0; i < n - 1; ++i) {
      const std::complex<double> c = u(i) - r(i, i) * tb(i);
      const double mag = std::abs(c);
      if (mag <= 1e-300) continue;
      const std::complex<double> nt = c / mag;
      const std::complex<double> delta = nt - tb(i);
      if (std::abs(delta) > 0.0) {
        u += r.col(i) * delta;
        tb(i) = nt;
        change += std::abs(delta);
      }
    }
    if (change < 1e-12) break;
  }
  return (tb.adjoint() * u).real()(0);
}

std::pair<CVec, double> ca_solve(const CMat& r) {
  const Eigen::Index n = r.rows();
  std::vector<CVec> starts;
  starts.push_back(CVec::Ones(n));
  starts.push_back(power_top_phases(r).first);
  Rng restart_rng(0x51d9a17u);  // fixed seed keeps the solver deterministic
  for (int s = 0; s < 2; ++s) {
    CVec v(n);
    for (Eigen::Index i = 0; i < n - 1; ++i) {
      v(i) = std::polar(1.0, restart_rng.uniform(0.0, 6.283185307179586));
    }
    v(n - 1) = 1.0;
    starts.push_back(v);
  }

  CVec best;
  double best_val = -std::numeric_limits<double>::infinity();
  for (auto& start : starts) {
    CVec tb = start;
    const double val = ca_run(r, tb, 300);
    if (val > best_val) {
      best_val = val;
      best = tb;
    }
  }
  return {best, best_val};
}

SdpSolution make_solution(CMat x, double obj, SdpStatus status) {
  return SdpSolution{HermitianPSD(std::move(x)), obj, status};
}

}  // namespace

SdpSolution solve_sdp(const UnitDiagSDP& prob, SdpMethod method) {
  prob.validate();
  const Eigen::Index n = prob.dim();

  if (n == 1) {
    for (const auto& con : prob.constraints) {
      if (con.matrix(0, 0).real() < con.rhs - 1e-12) {
        return make_solution(CMat::Identity(1, 1), prob.objective(0, 0).real(),
                             SdpStatus::infeasible);
      }
    }
    return make_solution(CMat::Identity(1, 1), prob.objective(0, 0).real(),
                         SdpStatus::optimal);
  }

  const bool use_ca = method == SdpMethod::coordinate_ascent ||
                      (method == SdpMethod::automatic && prob.constraints.empty());
  if (use_ca) {
    auto [tb, val] = ca_solve(prob.objective);
    return make_solution(tb * tb.adjoint(), val, SdpStatus::optimal);
  }

  // scale objective and constraints to unit magnitude for the barrier path
  IpmProblem ipm;
  const double c_scale = std::max(prob.objective.cwiseAbs().maxCoeff(), 1e-300);
  ipm.c = prob.objective / c_scale;
  ipm.unit_diag = true;
  for (const auto& con : prob.constraints) {
    const double b_scale = std::max(con.matrix.cwiseAbs().maxCoeff(), 1e-300);
    ipm.b.push_back(con.matrix / b_scale);
    ipm.rhs.push_back(con.rhs / b_scale);
  }
  IpmResult res = IpmSolver(ipm).solve();
  return make_solution(std::move(res.x), res.objective * c_scale, res.status);
}

SdpSolution solve_trace_sdp(const TraceBoundSDP& prob) {
  const Eigen::Index n = prob.dim();
  if (prob.trace_bound <= 0.0) {
    throw std::invalid_argument("solve_trace_sdp: trace bound must be positive");
  }
  IpmProblem ipm;
  const double c_scale = std::max(prob.objective.cwiseAbs().maxCoeff(), 1e-300);
  ipm.c = prob.objective / c_scale;
  ipm.unit_diag = false;
  // Tr(X) <= bound as Tr(-I X) >= -bound
  ipm.b.push_back(-CMat::Identity(n, n));
  ipm.rhs.push_back(-prob.trace_bound);
  for (const auto& con : prob.constraints) {
    const double b_scale = std::max(con.matrix.cwiseAbs().maxCoeff(), 1e-300);
    ipm.b.push_back(con.matrix / b_scale);
    ipm.rhs.push_back(con.rhs / b_scale);
  }
  IpmResult res = IpmSolver(ipm).solve();
  return make_solution(std::move(res.x), res.objective * c_scale, res.status);
}

PhaseShift randomize_rank_one(const HermitianPSD& phi,
                              const std::function<double(const PhaseShift&)>& evaluate,
                              int samples, Rng& rng) {
  if (samples < 1) throw std::invalid_argument("randomize_rank_one: samples must be >= 1");
  const Eigen::Index n = phi.dim();
  if (n < 2) return PhaseShift(std::vector<double>{});

  Eigen::SelfAdjointEigenSolver<CMat> es(phi.mat());
  Eigen::VectorXd vals = es.eigenvalues();
  const double vmax = std::max(vals.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    vals(i) = vals(i) > 1e-10 * vmax ? std::sqrt(vals(i)) : 0.0;
  }
  const CMat factor = es.eigenvectors() * vals.asDiagonal();

  auto project = [&](const CVec& xi) {
    std::vector<double> theta(static_cast<std::size_t>(n - 1));
    const double ref = std::arg(xi(n - 1));
    for (Eigen::Index i = 0; i < n - 1; ++i) {
      theta[static_cast<std::size_t>(i)] = std::arg(xi(i)) - ref;
    }
    return PhaseShift(std::move(theta));
  };

  PhaseShift best = project(es.eigenvectors().col(n - 1));  // dominant eigenvector
  double best_val = evaluate(best);
  for (int s = 0; s < samples; ++s) {
    PhaseShift cand = project(factor * sample_cn(rng, static_cast<int>(n)));
    const double val = evaluate(cand);
    if (val > best_val) {
      best_val = val;
      best = std::move(cand);
    }
  }
  return best;
}

}  // namespace aoisim
