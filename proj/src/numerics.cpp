#include "aoisim/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace aoisim {

bool is_hermitian(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

namespace {

// Smallest eigenvalue of a Hermitian matrix via power iteration on the
// spectrally shifted matrix sI - M with s an upper bound on lambda_max.
double min_eigenvalue(const CMat& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0).real();
  const double shift = m.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
  CMat shifted = CMat::Identity(n, n) * shift - m;
  CVec v = CVec::Ones(n) / std::sqrt(static_cast<double>(n));
  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    CVec w = shifted * v;
    const double nw = w.norm();
    if (nw == 0.0) return shift;  // shifted matrix annihilates v: M = s I on v
    w /= nw;
    const double next = (w.adjoint() * shifted * w).real()(0);
    const bool settled = std::abs(next - lambda) < 1e-13 * std::max(1.0, std::abs(next));
    lambda = next;
    v = w;
    if (settled && it > 4) break;
  }
  return shift - lambda;
}

}  // namespace

HermitianPSD::HermitianPSD(CMat m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) {
    throw std::invalid_argument("HermitianPSD: matrix must be square");
  }
  if (!is_hermitian(mat_, 1e-9 * std::max(1.0, mat_.cwiseAbs().maxCoeff()))) {
    throw std::invalid_argument("HermitianPSD: matrix is not Hermitian");
  }
  // exact symmetrization so downstream algebra sees M = M^H
  mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
  const double n = static_cast<double>(mat_.rows());
  const double floor = -1e-9 * std::max(mat_.trace().real() / n, 1e-300);
  if (min_eigenvalue(mat_) < floor) {
    throw std::invalid_argument("HermitianPSD: matrix has a significantly negative eigenvalue");
  }
}

CVec sample_cn(Rng& rng, int n) {
  if (n < 1) throw std::invalid_argument("sample_cn: n must be >= 1");
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

double quad_form(const CVec& x, const CMat& m) {
  if (m.rows() != m.cols() || x.size() != m.rows()) {
    throw std::invalid_argument("quad_form: dimension mismatch");
  }
  const std::complex<double> q = x.adjoint() * m * x;
  if (std::abs(q.imag()) > 1e-9 * std::max(std::abs(q.real()), 1e-12)) {
    throw std::domain_error("quad_form: non-Hermitian input (imaginary residue)");
  }
  return q.real();
}

std::pair<CVec, double> top_eigvec(const HermitianPSD& m) {
  const CMat& a = m.mat();
  const Eigen::Index n = a.rows();
  CVec v(n);
  // deterministic start with nonzero overlap against any eigenvector
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = std::complex<double>(1.0, static_cast<double>(i + 1) / static_cast<double>(n));
  }
  v /= v.norm();

  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    CVec w = a * v;
    const double nw = w.norm();
    if (nw <= scale * 1e-250) {
      // matrix is (numerically) zero on the current iterate: zero matrix case
      return {v, 0.0};
    }
    w /= nw;
    lambda = (w.adjoint() * a * w).real()(0);
    v = w;
    if ((a * v - lambda * v).norm() <= 1e-8 * std::max(lambda, scale * 1e-16)) {
      return {v, lambda};
    }
  }
  throw std::runtime_error("top_eigvec: power iteration did not converge (degenerate input)");
}

std::pair<double, double> golden_min(const std::function<double(double)>& f,
                                     double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("golden_min: requires lo < hi");
  const double invphi = 0.6180339887498948482;  // 1/phi
  const double invphi2 = 1.0 - invphi;          // 1/phi^2

  auto eval = [&](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) throw std::domain_error("golden_min: non-finite objective value");
    return y;
  };

  double a = lo, b = hi;
  double c = a + invphi2 * (b - a);
  double d = a + invphi * (b - a);
  double fc = eval(c), fd = eval(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = a + invphi2 * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, eval(x)};
}

}  // namespace aoisim
