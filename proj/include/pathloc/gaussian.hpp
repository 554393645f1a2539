#pragma once

namespace pathloc {

// Standard normal upper tail Q(x) = P(Z > x).
double gaussian_tail(double x);
// Standard normal CDF Phi(x).
double gaussian_cdf(double x);
// Phi^{-1}(p). p = 0 gives -inf, p = 1 gives +inf; NaN outside [0, 1].
double gaussian_quantile(double p);
// Q^{-1}(p) = -Phi^{-1}(p).
double gaussian_tail_inverse(double p);

}  // namespace pathloc
