#include "aoisim/nodestate.hpp"

#include <algorithm>
#include <stdexcept>

namespace aoisim {

void EhModel::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("EhModel: eta must be in (0, 1]");
  }
  if (kind == Kind::piecewise && !(p_sat > 0.0)) {
    throw std::invalid_argument("EhModel: piecewise model requires p_sat > 0");
  }
}

double harvest(const EhModel& model, double p_s, const CVec& f_k, const CVec& w_d) {
  const double received = std::norm((f_k.adjoint() * w_d)(0));
  const double linear = model.eta * p_s * received;
  return model.kind == EhModel::Kind::piecewise ? std::min(linear, model.p_sat) : linear;
}

NodeState energy_step(const NodeState& s, bool scheduled_uplink, bool scheduled_downlink,
                      double e_cost, double e_harv, double e_max) {
  if (e_cost < 0.0 || e_harv < 0.0) {
    throw std::invalid_argument("energy_step: negative energy amounts");
  }
  NodeState next = s;
  double e = s.energy - (scheduled_uplink ? e_cost : 0.0);
  e = std::max(e, 0.0);
  e += scheduled_downlink ? e_harv : 0.0;
  next.energy = std::min(e, e_max);
  return next;
}

NodeState aoi_step(const NodeState& s, bool scheduled, bool tx_success) {
  NodeState next = s;
  if (s.cache_occupied && scheduled && tx_success) {
    next.aoi = 1;
    next.cache_occupied = false;
  } else {
    next.aoi = s.aoi + 1;
  }
  return next;
}

bool sample_arrival(Rng& rng, double rate) {
  if (rate < 0.0 || rate > 1.0) {
    throw std::invalid_argument("sample_arrival: rate must be in [0, 1]");
  }
  if (rate >= 1.0) return true;
  if (rate <= 0.0) return false;
  return rng.bernoulli(rate);
}

double weighted_aoi(const std::vector<NodeState>& states, const std::vector<double>& lambda) {
  if (states.size() != lambda.size()) {
    throw std::invalid_argument("weighted_aoi: length mismatch");
  }
  if (states.empty()) throw std::invalid_argument("weighted_aoi: empty state list");
  double sum = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    sum += lambda[k] * static_cast<double>(states[k].aoi);
  }
  return sum / static_cast<double>(states.size());
}

}  // namespace aoisim
