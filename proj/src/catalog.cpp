#include "scsim/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace scsim {

Catalog Catalog::zipf(std::size_t n_files, double gamma) {
  if (n_files == 0) throw std::invalid_argument("catalog: n_files must be at least 1");
  if (!std::isfinite(gamma) || gamma < 0.0)
    throw std::invalid_argument("catalog: gamma must be finite and non-negative");

  Catalog c;
  c.gamma_ = gamma;
  c.popularity_.resize(n_files);
  for (std::size_t i = 0; i < n_files; ++i)
    c.popularity_[i] = std::pow(static_cast<double>(i + 1), -gamma);

  // Summing smallest-first keeps the normalizer accurate for long tails.
  double norm = 0.0;
  for (std::size_t i = n_files; i-- > 0;) norm += c.popularity_[i];
  for (double& p : c.popularity_) p /= norm;

  c.cdf_.resize(n_files);
  std::partial_sum(c.popularity_.begin(), c.popularity_.end(), c.cdf_.begin());
  c.cdf_.back() = 1.0;
  return c;
}

double Catalog::popularity(ContentId id) const {
  if (!valid(id)) throw std::out_of_range("catalog: content id " + std::to_string(id) + " out of range");
  return popularity_[id - 1];
}

double hit_rate(const Catalog& catalog, std::span<const ContentId> cache) {
  std::vector<char> seen(catalog.size() + 1, 0);
  double total = 0.0;
  for (ContentId id : cache) {
    if (!catalog.valid(id))
      throw std::out_of_range("hit_rate: content id " + std::to_string(id) + " out of range");
    if (seen[id]) continue;
    seen[id] = 1;
    total += catalog.popularity()[id - 1];
  }
  return std::min(total, 1.0);
}

ContentId sample_request(const Catalog& catalog, Rng& rng) {
  const double u = rng.uniform();
  auto it = std::upper_bound(catalog.cdf_.begin(), catalog.cdf_.end(), u);
  if (it == catalog.cdf_.end()) --it;
  return static_cast<ContentId>(it - catalog.cdf_.begin()) + 1;
}

std::vector<ContentId> top_k(const Catalog& catalog, std::size_t k) {
  if (k > catalog.size()) throw std::invalid_argument("top_k: k exceeds catalog size");
  std::vector<ContentId> ids(k);
  std::iota(ids.begin(), ids.end(), ContentId{1});
  return ids;
}

}  // namespace scsim
