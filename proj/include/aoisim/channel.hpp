#pragma once

#include <vector>

#include "aoisim/numerics.hpp"

namespace aoisim {

/// AP / IRS / node positions in meters.
struct Geometry {
  Eigen::Vector3d ap_pos;
  Eigen::Vector3d irs_pos;
  std::vector<Eigen::Vector3d> node_pos;

  int num_nodes() const { return static_cast<int>(node_pos.size()); }
  /// Throws if any pair of the involved endpoints coincides.
  void validate() const;
};

/// Log-distance path loss, offset + slope * log10(d). Defaults reproduce
/// 32.6 + 36.7 log10(d).
struct PathLossModel {
  double offset_db = 32.6;
  double slope_db = 36.7;
};

double path_loss_db(double d_meters, const PathLossModel& model = {});

/// One slot's channel realization. All entries are noise-normalized
/// amplitude gains: the raw gain divided by the noise standard deviation,
/// so downstream SNR expressions use unit noise power.
struct LinkSet {
  CMat g;                   // AP-IRS, M x N
  std::vector<CVec> h_d;    // direct AP-node, each M
  std::vector<CVec> h_r;    // IRS-node, each N

  int num_nodes() const { return static_cast<int>(h_d.size()); }
  Eigen::Index m() const { return g.rows(); }
  Eigen::Index n() const { return g.cols(); }
};

/// IRS phase configuration; angles are kept in (0, 2pi].
class PhaseShift {
 public:
  PhaseShift() = default;
  /// Wraps each angle into (0, 2pi]. A zero angle maps to 2pi.
  explicit PhaseShift(std::vector<double> theta);
  static PhaseShift uniform(int n, double theta);

  int size() const { return static_cast<int>(theta_.size()); }
  double angle(int i) const { return theta_[i]; }
  const std::vector<double>& angles() const { return theta_; }
  /// [e^{j theta_1}, ..., e^{j theta_N}]
  CVec unit_vector() const;

 private:
  std::vector<double> theta_;
};

/// Draws an i.i.d. Rayleigh-faded realization of all links. Sampling order
/// is fixed (G first, then per node h_d, h_r) so equal seeds give equal
/// link sets.
LinkSet sample_links(const Geometry& geom, Rng& rng, int m, int n,
                     double noise_dbm, const PathLossModel& model = {});

/// Composite AP-node channel h_d + G diag(e^{j theta}) h_r (uplink and
/// downlink share this form under channel reciprocity).
CVec effective_channel(const LinkSet& links, int k, const PhaseShift& phases);

}  // namespace aoisim
