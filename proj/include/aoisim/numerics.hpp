#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <utility>

#include "aoisim/rng.hpp"

namespace aoisim {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

/// Entrywise Hermitian symmetry check, |M - M^H| < tol.
bool is_hermitian(const CMat& m, double tol = 1e-12);

/// Hermitian positive semidefinite matrix. Construction validates symmetry
/// and floors the minimum eigenvalue at -1e-9 * trace/n (size-independent
/// tolerance).
class HermitianPSD {
 public:
  explicit HermitianPSD(CMat m);

  const CMat& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  CMat mat_;
};

/// n i.i.d. CN(0,1) entries from the given generator.
CVec sample_cn(Rng& rng, int n);

/// Real part of x^H M x for Hermitian M. Throws on dimension mismatch or a
/// non-negligible imaginary residue.
double quad_form(const CVec& x, const CMat& m);

/// Dominant eigenpair of a Hermitian PSD matrix by power iteration.
/// Returns (unit eigenvector, eigenvalue); residual ||Mv - lambda v|| is
/// driven below 1e-8 * lambda. Throws after the iteration cap.
std::pair<CVec, double> top_eigvec(const HermitianPSD& m);

/// Golden-section minimization of a unimodal function on [lo, hi].
/// Returns (x*, f(x*)) with the minimizer located to within tol.
std::pair<double, double> golden_min(const std::function<double(double)>& f,
                                     double lo, double hi, double tol);

}  // namespace aoisim
