#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scsim/rng.hpp"

namespace scsim {

/// Content identifier. Ids are 1-based and sorted by decreasing popularity.
using ContentId = std::uint32_t;

/// Content library with Zipf popularity p(i) proportional to i^-gamma.
class Catalog {
 public:
  /// Throws std::invalid_argument for n_files == 0 or a negative or
  /// non-finite exponent.
  static Catalog zipf(std::size_t n_files, double gamma);

  std::size_t size() const { return popularity_.size(); }
  double gamma() const { return gamma_; }

  /// Request probability of `id`; throws std::out_of_range outside 1..size().
  double popularity(ContentId id) const;

  /// Probability vector indexed by id - 1.
  std::span<const double> popularity() const { return popularity_; }

  bool valid(ContentId id) const { return id >= 1 && id <= popularity_.size(); }

 private:
  Catalog() = default;

  double gamma_ = 0.0;
  std::vector<double> popularity_;
  // cdf_[i] = P(id <= i + 1); the last entry is pinned to exactly 1.
  std::vector<double> cdf_;

  friend ContentId sample_request(const Catalog&, Rng&);
};

/// Sum of popularity over `cache`. Duplicate ids are counted once.
double hit_rate(const Catalog& catalog, std::span<const ContentId> cache);

/// Draws one id with probability popularity(id). Consumes one rng output.
ContentId sample_request(const Catalog& catalog, Rng& rng);

/// The k most popular ids, i.e. 1..k in order.
std::vector<ContentId> top_k(const Catalog& catalog, std::size_t k);

}  // namespace scsim
