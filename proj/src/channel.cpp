#include "aoisim/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aoisim {

void Geometry::validate() const {
  auto check = [](const Eigen::Vector3d& a, const Eigen::Vector3d& b, const char* what) {
    if ((a - b).norm() <= 0.0) {
      throw std::invalid_argument(std::string("Geometry: zero distance between ") + what);
    }
  };
  check(ap_pos, irs_pos, "AP and IRS");
  for (const auto& p : node_pos) {
    check(ap_pos, p, "AP and node");
    check(irs_pos, p, "IRS and node");
  }
}

double path_loss_db(double d_meters, const PathLossModel& model) {
  if (d_meters <= 0.0) throw std::invalid_argument("path_loss_db: distance must be positive");
  return model.offset_db + model.slope_db * std::log10(d_meters);
}

PhaseShift::PhaseShift(std::vector<double> theta) : theta_(std::move(theta)) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (double& t : theta_) {
    t = std::fmod(t, two_pi);
    if (t <= 0.0) t += two_pi;  // (0, 2pi], zero maps to 2pi
  }
}

PhaseShift PhaseShift::uniform(int n, double theta) {
  return PhaseShift(std::vector<double>(static_cast<std::size_t>(n), theta));
}

CVec PhaseShift::unit_vector() const {
  CVec v(size());
  for (int i = 0; i < size(); ++i) {
    v(i) = std::polar(1.0, theta_[i]);
  }
  return v;
}

namespace {

// Noise-normalized amplitude gain: 10^(-PL/20) divided by the noise
// standard deviation 10^(noise_dbW/20).
double normalized_amplitude(double pl_db, double noise_dbm) {
  const double noise_dbw = noise_dbm - 30.0;
  return std::pow(10.0, (-pl_db - noise_dbw) / 20.0);
}

}  // namespace

LinkSet sample_links(const Geometry& geom, Rng& rng, int m, int n,
                     double noise_dbm, const PathLossModel& model) {
  if (m < 1 || n < 1 || geom.num_nodes() < 1) {
    throw std::invalid_argument("sample_links: dimensions must be >= 1");
  }
  geom.validate();

  LinkSet links;
  const double d_ap_irs = (geom.ap_pos - geom.irs_pos).norm();
  const double beta_g = normalized_amplitude(path_loss_db(d_ap_irs, model), noise_dbm);
  links.g.resize(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      links.g(i, j) = beta_g * rng.complex_normal();
    }
  }

  links.h_d.reserve(geom.node_pos.size());
  links.h_r.reserve(geom.node_pos.size());
  for (const auto& pos : geom.node_pos) {
    const double beta_d =
        normalized_amplitude(path_loss_db((geom.ap_pos - pos).norm(), model), noise_dbm);
    const double beta_r =
        normalized_amplitude(path_loss_db((geom.irs_pos - pos).norm(), model), noise_dbm);
    links.h_d.push_back(beta_d * sample_cn(rng, m));
    links.h_r.push_back(beta_r * sample_cn(rng, n));
  }
  return links;
}

CVec effective_channel(const LinkSet& links, int k, const PhaseShift& phases) {
  if (k < 0 || k >= links.num_nodes()) {
    throw std::out_of_range("effective_channel: node index out of range");
  }
  if (phases.size() != links.n()) {
    throw std::invalid_argument("effective_channel: phase vector dimension mismatch");
  }
  return links.h_d[static_cast<std::size_t>(k)] +
         links.g * phases.unit_vector().asDiagonal() *
             links.h_r[static_cast<std::size_t>(k)];
}

}  // namespace aoisim
