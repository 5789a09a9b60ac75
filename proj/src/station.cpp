#include "scsim/station.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace scsim {

void PowerModel::validate() const {
  if (!(p_const >= 0.0) || !(p_per_user >= 0.0) || !(p_sleep >= 0.0))
    throw std::invalid_argument("power model: power terms must be non-negative");
  if (!(p_sleep < p_const)) throw std::invalid_argument("power model: p_sleep must be below p_const");
  if (max_users == 0) throw std::invalid_argument("power model: max_users must be at least 1");
  if (std::fabs(p_max() - 1.0) > 1e-9)
    throw std::invalid_argument("power model: p_const + max_users * p_per_user must equal 1.0");
  if (!(rate_per_user_mbps > 0.0)) throw std::invalid_argument("power model: rate_per_user must be positive");
}

double power_draw(const PowerModel& model, Mode mode, std::size_t served) {
  if (served > model.max_users) throw std::invalid_argument("power_draw: served exceeds max_users");
  if (mode == Mode::Sleep) {
    if (served != 0) throw std::invalid_argument("power_draw: a sleeping station serves no users");
    return model.p_sleep;
  }
  return model.p_const + static_cast<double>(served) * model.p_per_user;
}

CacheStore::CacheStore(std::size_t n_files, std::size_t capacity, double split_ratio)
    : capacity_(capacity), in_popular_(n_files + 1, 0), in_prefetch_(n_files + 1, 0) {
  if (!(split_ratio >= 0.0 && split_ratio <= 1.0))
    throw std::invalid_argument("cache: split_ratio must lie in [0, 1]");
  const double slots = std::ceil(split_ratio * static_cast<double>(capacity) - 1e-9);
  popular_budget_ = std::min(capacity, static_cast<std::size_t>(std::max(0.0, slots)));
}

std::vector<ContentId> CacheStore::popular() const {
  std::vector<ContentId> out;
  out.reserve(popular_count_);
  for (std::size_t id = 1; id < in_popular_.size(); ++id)
    if (in_popular_[id]) out.push_back(static_cast<ContentId>(id));
  return out;
}

void CacheStore::apply_popular(std::span<const ContentId> evict, std::span<const ContentId> fetch) {
  for (ContentId id : evict) {
    if (!in_popular(id)) throw std::logic_error("cache: evicting an id that is not cached");
    in_popular_[id] = 0;
    --popular_count_;
  }
  for (ContentId id : fetch) {
    if (id == 0 || id >= in_popular_.size()) throw std::out_of_range("cache: content id out of range");
    if (in_popular_[id]) continue;
    if (popular_count_ == popular_budget_) throw std::logic_error("cache: popular partition over budget");
    in_popular_[id] = 1;
    ++popular_count_;
  }
}

bool CacheStore::prefetch_insert(ContentId id) {
  if (prefetch_budget() == 0 || in_prefetch(id)) return false;
  if (id == 0 || id >= in_prefetch_.size()) throw std::out_of_range("cache: content id out of range");
  if (prefetch_.size() == prefetch_budget()) {
    in_prefetch_[prefetch_.front()] = 0;
    prefetch_.pop_front();
  }
  prefetch_.push_back(id);
  in_prefetch_[id] = 1;
  return true;
}

Admission admit(const StationState& state, const PowerModel& model, std::span<const std::size_t> hit_requests,
                const VehicleSet& vehicles, std::size_t limit) {
  Admission out;
  std::vector<std::size_t> order(hit_requests.begin(), hit_requests.end());
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Vehicle& va = vehicles[a];
    const Vehicle& vb = vehicles[b];
    return std::tie(va.entry_time, va.position, a) < std::tie(vb.entry_time, vb.position, b);
  });
  const std::size_t cap =
      state.mode == Mode::Sleep ? 0 : std::min({order.size(), state.quota, model.max_users, limit});
  out.served.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cap));
  out.rejected.assign(order.begin() + static_cast<std::ptrdiff_t>(cap), order.end());
  return out;
}

}  // namespace scsim
