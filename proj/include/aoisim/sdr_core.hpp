#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "aoisim/channel.hpp"
#include "aoisim/numerics.hpp"

namespace aoisim {

/// Linear trace constraint Tr(matrix * Phi) >= rhs with Hermitian matrix.
struct TraceConstraint {
  CMat matrix;
  double rhs;
};

/// Maximize Tr(objective * Phi) over Hermitian PSD Phi with unit diagonal,
/// subject to the listed trace constraints. Dimension is N+1: the phase
/// vector plus the appended unit-modulus slack coordinate.
struct UnitDiagSDP {
  CMat objective;
  std::vector<TraceConstraint> constraints;

  Eigen::Index dim() const { return objective.rows(); }
  void validate() const;
};

/// Maximize Tr(objective * W) over Hermitian PSD W with Tr(W) <= trace_bound,
/// subject to trace constraints; used for the transmit-beamformer
/// subproblem where ||w|| <= 1 lifts to Tr(W) <= 1.
struct TraceBoundSDP {
  CMat objective;
  double trace_bound = 1.0;
  std::vector<TraceConstraint> constraints;

  Eigen::Index dim() const { return objective.rows(); }
};

enum class SdpStatus { optimal, infeasible, max_iter };

struct SdpSolution {
  HermitianPSD phi;
  double objective_value = 0.0;
  SdpStatus status = SdpStatus::max_iter;
};

enum class SdpMethod {
  /// coordinate ascent for unconstrained problems, interior point otherwise
  automatic,
  interior_point,
  coordinate_ascent,
};

/// Quadratic coupling matrix of the lifted phase problem for one node:
///   [[F^H w w^H F, F^H w w^H h_d], [h_d^H w w^H F, 0]]
/// so that |f^H w|^2 = theta_bar^H R theta_bar + |h_d^H w|^2 for every
/// unit-modulus theta_bar with last entry 1, where f = h_d + F theta.
CMat build_rk(const CMat& f_cascade, const CVec& h_d, const CVec& w);

/// Same lifting for the aggregate channel gain ||h_d + F theta||^2
/// (equals sum over receive antennas of build_rk with unit basis beams):
///   [[F^H F, F^H h_d], [h_d^H F, 0]].
CMat build_gain_matrix(const CMat& f_cascade, const CVec& h_d);

SdpSolution solve_sdp(const UnitDiagSDP& prob, SdpMethod method = SdpMethod::automatic);
SdpSolution solve_trace_sdp(const TraceBoundSDP& prob);

/// Recovers a unit-modulus phase vector from a relaxed solution by Gaussian
/// randomization: draws xi ~ CN(0, Phi) through an eigenvalue-floored
/// factorization, projects each draw to unit modulus relative to the last
/// (slack) coordinate, adds the dominant-eigenvector candidate, and returns
/// the candidate with the best callback value.
PhaseShift randomize_rank_one(const HermitianPSD& phi,
                              const std::function<double(const PhaseShift&)>& evaluate,
                              int samples, Rng& rng);

}  // namespace aoisim
