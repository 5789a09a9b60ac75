#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "scsim/catalog.hpp"
#include "scsim/energy.hpp"
#include "scsim/mobility.hpp"

namespace scsim {

enum class Mode { Active, Sleep };

/// Linear load-dependent power model, normalized to 1.0 at full load.
struct PowerModel {
  double p_const = 0.5;
  double p_per_user = 0.05;
  double p_sleep = 0.01;
  std::size_t max_users = 10;
  double rate_per_user_mbps = 10.0;

  double p_max() const { return p_const + static_cast<double>(max_users) * p_per_user; }

  /// Throws std::invalid_argument unless p_sleep < p_const, the model reaches
  /// exactly 1.0 at max_users (within 1e-9) and all terms are non-negative.
  void validate() const;
};

/// Throws std::invalid_argument when served exceeds max_users or a sleeping
/// station is asked to serve.
double power_draw(const PowerModel& model, Mode mode, std::size_t served);

/// Two-partition content store.
///
/// The popular partition holds at most ceil(split_ratio * capacity) ids and is
/// refreshed at the large timescale; the prefetch partition takes the rest of
/// the slots and evicts first-in-first-out.
class CacheStore {
 public:
  CacheStore() = default;
  CacheStore(std::size_t n_files, std::size_t capacity, double split_ratio);

  std::size_t capacity() const { return capacity_; }
  std::size_t popular_budget() const { return popular_budget_; }
  std::size_t prefetch_budget() const { return capacity_ - popular_budget_; }

  bool contains(ContentId id) const {
    return id < in_popular_.size() && (in_popular_[id] || in_prefetch_[id]);
  }
  bool in_popular(ContentId id) const { return id < in_popular_.size() && in_popular_[id]; }
  bool in_prefetch(ContentId id) const { return id < in_prefetch_.size() && in_prefetch_[id]; }

  /// Popular ids in increasing id order.
  std::vector<ContentId> popular() const;
  /// Prefetch ids, oldest first.
  const std::deque<ContentId>& prefetch() const { return prefetch_; }

  /// Applies a popular-partition plan; evictions first. Throws
  /// std::logic_error if the result would exceed the partition budget.
  void apply_popular(std::span<const ContentId> evict, std::span<const ContentId> fetch);

  /// Inserts into the prefetch partition, evicting the oldest entry when
  /// full. Returns false when the partition has no slots or already holds id.
  bool prefetch_insert(ContentId id);

 private:
  std::size_t capacity_ = 0;
  std::size_t popular_budget_ = 0;
  std::size_t popular_count_ = 0;
  std::vector<char> in_popular_;
  std::vector<char> in_prefetch_;
  std::deque<ContentId> prefetch_;
};

struct StationState {
  std::size_t index = 0;
  Mode mode = Mode::Active;
  Battery battery;
  CacheStore cache;
  std::size_t quota = 0;
};

inline bool cache_contains(const StationState& state, ContentId id) { return state.cache.contains(id); }

struct Admission {
  std::vector<std::size_t> served;    // vehicle indices
  std::vector<std::size_t> rejected;  // vehicle indices
};

/// Radio admission for vehicles whose content is cached here.
///
/// Serves the first min(|hits|, quota, max_users, limit) vehicles ordered by
/// (entry_time, position); a sleeping station serves none.
Admission admit(const StationState& state, const PowerModel& model, std::span<const std::size_t> hit_requests,
                const VehicleSet& vehicles, std::size_t limit = static_cast<std::size_t>(-1));

struct MbsService {
  std::size_t served = 0;
  std::size_t backhaul_fetches = 0;
};

/// The macro station serves everything handed to it and fetches each item
/// over its wired backhaul.
inline MbsService mbs_serve(std::size_t n_vehicles) { return {n_vehicles, n_vehicles}; }

}  // namespace scsim
