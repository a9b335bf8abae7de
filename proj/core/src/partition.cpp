#include "ftvol/partition.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ftvol/error.hpp"

namespace ftvol {

std::string_view to_string(Shape shape) noexcept {
  return shape == Shape::Hat ? "hat" : "z";
}

double ActiveSet::sum() const noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < count; ++k) s += weight[k];
  return s;
}

double ActiveSet::sum_of_squares() const noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < count; ++k) s += weight[k] * weight[k];
  return s;
}

FuzzyPartition FuzzyPartition::build_uniform(double domain_start,
                                             double domain_end, double spacing,
                                             Shape shape) {
  const double width = domain_end - domain_start;
  if (!std::isfinite(width) || !std::isfinite(spacing) || !(spacing > 0.0) ||
      spacing > width) {
    throw Error(ErrorCode::BadSpacing,
                "spacing must satisfy 0 < T <= domain width");
  }
  // The small slack keeps e.g. 0.3 / 0.1 from flooring to 2.
  const auto intervals =
      static_cast<std::size_t>(std::floor(width / spacing + 1e-9));
  return FuzzyPartition(domain_start, spacing, intervals + 1, shape);
}

FuzzyPartition FuzzyPartition::over_samples(std::size_t sample_count,
                                            int horizon, Shape shape) {
  if (horizon < 1) {
    throw Error(ErrorCode::BadSpacing, "horizon must be at least 1 day");
  }
  const std::size_t count = sample_count / static_cast<std::size_t>(horizon);
  if (count < 2) {
    throw Error(ErrorCode::BadSpacing,
                std::to_string(sample_count) + " samples fit fewer than two " +
                    "nodes at spacing " + std::to_string(horizon));
  }
  return FuzzyPartition(0.0, static_cast<double>(horizon), count, shape);
}

std::vector<double> FuzzyPartition::nodes() const {
  std::vector<double> out(node_count_);
  for (std::size_t i = 0; i < node_count_; ++i) out[i] = node(i);
  return out;
}

double FuzzyPartition::profile(double u) const noexcept {
  if (u >= 1.0) return 0.0;
  if (shape_ == Shape::Hat) return 1.0 - u;
  return 0.5 * (std::cos(std::numbers::pi * u) + 1.0);
}

double FuzzyPartition::membership(std::size_t i, double x) const {
  if (i >= node_count_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "node " + std::to_string(i) + " of " +
                    std::to_string(node_count_));
  }
  if (!contains(x)) return 0.0;
  return profile(std::abs(x - node(i)) / spacing_);
}

ActiveSet FuzzyPartition::active(double x) const {
  if (!contains(x)) {
    throw Error(ErrorCode::OutOfDomain,
                "point " + std::to_string(x) + " outside partition domain");
  }
  // Locate the interval [x_k, x_{k+1}] holding x.
  auto k = static_cast<std::size_t>(std::floor((x - start_) / spacing_));
  if (k >= node_count_ - 1) k = node_count_ - 2;
  if (x < node(k)) --k;  // guards floor rounding past a node
  ActiveSet set;
  for (std::size_t j = k; j <= k + 1; ++j) {
    const double w = profile(std::abs(x - node(j)) / spacing_);
    if (w > 0.0) {
      set.node[set.count] = j;
      set.weight[set.count] = w;
      ++set.count;
    }
  }
  return set;
}

std::vector<double> FuzzyPartition::membership_row(double x) const {
  const ActiveSet set = active(x);
  std::vector<double> row(node_count_, 0.0);
  for (std::size_t k = 0; k < set.count; ++k) row[set.node[k]] = set.weight[k];
  return row;
}

double FuzzyPartition::cardinality(std::size_t i,
                                   std::span<const double> samples) const {
  double total = 0.0;
  for (double t : samples) total += membership(i, t);
  if (samples.empty()) (void)membership(i, start_);  // index check only
  return total;
}

double FuzzyPartition::lambda_sq(double x) const {
  return active(x).sum_of_squares();
}

}  // namespace ftvol
