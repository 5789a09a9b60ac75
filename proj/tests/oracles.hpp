#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the simulator.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

/// sum_{i=1..n} i^-gamma in extended precision, largest term first.
inline long double zipf_normalizer(std::size_t n, double gamma) {
  long double s = 0.0L;
  for (std::size_t i = 1; i <= n; ++i) s += std::pow(static_cast<long double>(i), -static_cast<long double>(gamma));
  return s;
}

/// Popularity mass of ids 1..k.
inline double zipf_head_mass(std::size_t k, std::size_t n, double gamma) {
  return static_cast<double>(zipf_normalizer(k, gamma) / zipf_normalizer(n, gamma));
}

/// E[min(X, cap)] for X ~ Poisson(mu) by direct term-wise summation over
/// all k until the remaining tail mass drops below 1e-12.
inline double poisson_capped_mean(double mu, std::size_t cap) {
  if (mu == 0.0) return 0.0;
  long double pmf = std::exp(-static_cast<long double>(mu));
  long double cdf = 0.0L;
  long double sum = 0.0L;
  for (std::size_t k = 0;; ++k) {
    if (k > 0) pmf *= static_cast<long double>(mu) / static_cast<long double>(k);
    sum += static_cast<long double>(std::min(k, cap)) * pmf;
    cdf += pmf;
    if (static_cast<double>(k) > mu && 1.0L - cdf < 1e-12L) {
      // Remaining terms all contribute at least cap * tail; add it.
      sum += static_cast<long double>(cap) * std::max(0.0L, 1.0L - cdf);
      break;
    }
  }
  return static_cast<double>(sum);
}

/// Kolmogorov-Smirnov statistic of samples against a continuous CDF.
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic KS critical value c(alpha) / sqrt(n) for alpha = 0.001.
inline double ks_critical_001(std::size_t n) { return 1.94947 / std::sqrt(static_cast<double>(n)); }

}  // namespace oracle
