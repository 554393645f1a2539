#include "pathloc/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathloc/gaussian.hpp"

namespace pathloc {

double mgf_bound_at(double sigma, double s, std::int64_t l, double eta) {
  if (l < 1) throw ValidationError("mgf bound: l must be at least 1");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("mgf bound: eta must lie in [0, 1]");
  const double a = s * sigma;
  const double dl = static_cast<double>(l);
  const double gain1 = std::exp(0.5 * a * a);
  const double gain2 = std::exp(a * a);
  if (eta == 1.0) return dl * gain1;
  if (eta == 0.0) return dl / std::sqrt(2.0 * dl - 1.0) * gain2;

  const double q = gaussian_quantile(eta);
  const double log_eta = std::log(eta);
  const double term1 = dl * std::exp((dl - 1.0) * log_eta) * gain1 * gaussian_cdf(q - a);
  const double rest = -std::expm1((2.0 * dl - 1.0) * log_eta);
  const double term2 =
      std::sqrt(dl * dl / (2.0 * dl - 1.0) * rest) * gain2 * std::sqrt(gaussian_tail(q - 2.0 * a));
  return term1 + term2;
}

MgfMinimum mgf_bound(double sigma, double s, std::int64_t l) {
  constexpr int kGrid = 1024;
  auto f = [&](double eta) { return mgf_bound_at(sigma, s, l, eta); };
  MgfMinimum best{f(1.0), 1.0};
  int best_i = kGrid;
  for (int i = 0; i < kGrid; ++i) {
    const double eta = static_cast<double>(i) / kGrid;
    const double v = f(eta);
    if (v < best.value) {
      best = {v, eta};
      best_i = i;
    }
  }
  double lo = static_cast<double>(std::max(best_i - 1, 0)) / kGrid;
  double hi = static_cast<double>(std::min(best_i + 1, kGrid)) / kGrid;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 60 && hi - lo > 1e-14; ++iter) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  if (f1 < best.value) best = {f1, x1};
  if (f2 < best.value) best = {f2, x2};
  return best;
}

double theta(const NoiseModel& noise, std::int64_t l) {
  noise.validate();
  if (l < 1) throw ValidationError("theta: cluster size must be at least 1");
  const double s = theta_exponent(noise);
  const double mu = noise.mu;
  const double sigma = noise.sigma;
  const double scale = std::exp(0.5 * s * s * sigma * sigma - mu * s);
  const double clamp = static_cast<double>(l) * std::exp(-mu * mu / (4.0 * sigma * sigma));
  return std::min(clamp, scale * mgf_bound(sigma, s, l).value);
}

ThetaTable::ThetaTable(const NoiseModel& noise) : noise_(noise) { noise_.validate(); }

double ThetaTable::operator()(std::int64_t l) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = values_.find(l);
    if (it != values_.end()) return it->second;
  }
  const double value = theta(noise_, l);
  std::lock_guard<std::mutex> lock(mutex_);
  return values_.emplace(l, value).first->second;
}

double ThetaTable::log_theta(std::int64_t l) const { return std::log((*this)(l)); }

}  // namespace pathloc
