#pragma once

#include <cstdint>
#include <map>
#include <mutex>

#include "pathloc/signal.hpp"

namespace pathloc {

// Upper bound on E[exp(s * max of l iid N(0, sigma^2))] at a fixed eta in
// [0, 1]:
//   l eta^(l-1) e^(s^2 sigma^2 / 2) Phi(Phi^{-1}(eta) - s sigma)
//   + sqrt(l^2 / (2l - 1) (1 - eta^(2l-1))) e^(s^2 sigma^2) sqrt(Q(Phi^{-1}(eta) - 2 s sigma))
double mgf_bound_at(double sigma, double s, std::int64_t l, double eta);

struct MgfMinimum {
  double value = 0.0;
  double eta = 1.0;
};

// Minimum of mgf_bound_at over eta: 1025-point grid, then golden-section
// refinement around the best grid point.
MgfMinimum mgf_bound(double sigma, double s, std::int64_t l);

// theta(s, l) at s = mu / (2 sigma^2): bound on P(max of l off-path draws
// beats the on-path draw), clamped to l exp(-mu^2 / (4 sigma^2)).
double theta(const NoiseModel& noise, std::int64_t l);

inline double theta_exponent(const NoiseModel& noise) {
  return noise.mu / (2.0 * noise.sigma * noise.sigma);
}

// Memoized theta per cluster size. Safe for concurrent readers.
class ThetaTable {
 public:
  explicit ThetaTable(const NoiseModel& noise);
  ThetaTable(const ThetaTable&) = delete;
  ThetaTable& operator=(const ThetaTable&) = delete;

  const NoiseModel& noise() const { return noise_; }
  double s() const { return theta_exponent(noise_); }
  double operator()(std::int64_t l) const;
  double log_theta(std::int64_t l) const;

 private:
  NoiseModel noise_;
  mutable std::mutex mutex_;
  mutable std::map<std::int64_t, double> values_;
};

}  // namespace pathloc
