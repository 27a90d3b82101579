#pragma once

#include <vector>

#include "aoisim/numerics.hpp"

namespace aoisim {

/// Per-node age, battery and cache flags. Value semantics; the step
/// functions return the successor state.
struct NodeState {
  long long aoi = 0;          // slots since last successful update
  double energy = 0.0;        // joules, in [0, e_max]
  bool cache_occupied = false;
};

/// Energy harvesting model: linear conversion or a piecewise-linear
/// saturation at p_sat.
struct EhModel {
  enum class Kind { linear, piecewise };
  Kind kind = Kind::linear;
  double eta = 0.9;     // conversion efficiency, in (0, 1]
  double p_sat = 0.0;   // saturation power, used by the piecewise kind

  void validate() const;
};

/// Energy harvested in one slot from the beam (w_d) through the composite
/// channel f_k: eta * p_s * |f_k^H w_d|^2, saturated at p_sat for the
/// piecewise model. Slot duration is normalized to 1.
double harvest(const EhModel& model, double p_s, const CVec& f_k, const CVec& w_d);

/// Battery update: energy' = min((energy - [up] cost)^+ + [down] harvest, e_max).
NodeState energy_step(const NodeState& s, bool scheduled_uplink, bool scheduled_downlink,
                      double e_cost, double e_harv, double e_max);

/// Age update: resets to 1 on a successful scheduled upload of cached data,
/// increments otherwise. Success clears the cache.
NodeState aoi_step(const NodeState& s, bool scheduled, bool tx_success);

/// Bernoulli sensing arrival.
bool sample_arrival(Rng& rng, double rate);

/// Per-slot weighted-age summand (1/K) sum_k lambda_k A_k.
double weighted_aoi(const std::vector<NodeState>& states, const std::vector<double>& lambda);

}  // namespace aoisim
