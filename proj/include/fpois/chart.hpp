#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fpois {

/// Maximum number of coordinates a chart may carry. Exponent vectors are
/// stored inline with this capacity.
inline constexpr std::size_t kMaxChartDim = 12;

/// An ordered list of coordinate names.
///
/// Charts are interned: `Chart::get` returns a reference to a process-wide
/// immortal instance, so two charts are equal exactly when their addresses
/// are. Polynomials and tensors store a plain pointer to their chart.
class Chart {
public:
  static const Chart& get(const std::vector<std::string>& coords);

  /// Chart with coordinates `prefix1 .. prefixN`.
  static const Chart& numbered(const std::string& prefix, std::size_t n);

  std::size_t dim() const { return coords_.size(); }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::string& name(std::size_t i) const { return coords_.at(i); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  Chart(const Chart&) = delete;
  Chart& operator=(const Chart&) = delete;

private:
  explicit Chart(std::vector<std::string> coords) : coords_(std::move(coords)) {}
  std::vector<std::string> coords_;
};

}  // namespace fpois
