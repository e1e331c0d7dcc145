#include "fpois/chart.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "fpois/error.hpp"

namespace fpois {

const Chart& Chart::get(const std::vector<std::string>& coords) {
  static std::mutex mutex;
  static std::map<std::vector<std::string>, std::unique_ptr<Chart>> registry;

  if (coords.empty() || coords.size() > kMaxChartDim)
    throw DomainError("chart dimension must be in 1.." + std::to_string(kMaxChartDim));
  std::set<std::string> unique(coords.begin(), coords.end());
  if (unique.size() != coords.size()) throw DomainError("chart coordinate names must be unique");

  std::lock_guard lock(mutex);
  auto& slot = registry[coords];
  if (!slot) slot.reset(new Chart(coords));
  return *slot;
}

const Chart& Chart::numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return get(names);
}

std::optional<std::size_t> Chart::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] == name) return i;
  return std::nullopt;
}

}  // namespace fpois
