#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ftvol {

enum class Shape {
  Hat,      // triangular
  ZShaped,  // raised cosine
};

std::string_view to_string(Shape shape) noexcept;

/// Nonzero memberships at a single point. A uniform partition has at most
/// two basic functions active anywhere in its domain.
struct ActiveSet {
  std::array<std::size_t, 2> node{};
  std::array<double, 2> weight{};
  std::size_t count = 0;

  double sum() const noexcept;
  double sum_of_squares() const noexcept;
};

/// Uniform fuzzy partition of a closed interval [x_0, x_{n-1}] with nodes
/// spaced T apart. Node indices are zero-based.
///
/// Basic function i has support (x_i - T, x_i + T), truncated to the domain
/// at the two boundary nodes. With u = |x - x_i| / T:
///   hat:      A_i(x) = 1 - u
///   z-shaped: A_i(x) = (cos(pi u) + 1) / 2
/// The z-shaped formula is even in (x - x_i), so the rising and falling halves
/// share one expression; A_i(x_{i-1}) = 0 and A_i(x_i) = 1 on both sides.
class FuzzyPartition {
 public:
  /// Nodes at start + k T for k = 0..floor((end - start) / T). The domain
  /// ends at the last node, which may fall short of `end`.
  /// Throws BadSpacing unless 0 < spacing <= end - start.
  static FuzzyPartition build_uniform(double domain_start, double domain_end,
                                      double spacing, Shape shape);

  /// Partition over sample positions 0..m-1 with floor(m / T) nodes anchored
  /// at position 0. A 4040-sample series gives 16, 192 and 808 nodes for
  /// T = 252, 21 and 5. Throws BadSpacing when fewer than two nodes fit.
  static FuzzyPartition over_samples(std::size_t sample_count, int horizon,
                                     Shape shape);

  std::size_t node_count() const noexcept { return node_count_; }
  double spacing() const noexcept { return spacing_; }
  Shape shape() const noexcept { return shape_; }
  double node(std::size_t i) const noexcept {
    return start_ + static_cast<double>(i) * spacing_;
  }
  std::vector<double> nodes() const;
  double domain_start() const noexcept { return start_; }
  double domain_end() const noexcept { return node(node_count_ - 1); }
  bool contains(double x) const noexcept {
    return x >= domain_start() && x <= domain_end();
  }

  /// A_i(x). Zero outside the (truncated) support. Throws IndexOutOfRange.
  double membership(std::size_t i, double x) const;

  /// The (at most two) basic functions positive at x. Throws OutOfDomain.
  ActiveSet active(double x) const;

  /// [A_0(x), ..., A_{n-1}(x)]. Throws OutOfDomain.
  std::vector<double> membership_row(double x) const;

  /// Sum of A_i over the given sample points. Throws IndexOutOfRange.
  double cardinality(std::size_t i, std::span<const double> samples) const;

  /// Sum of A_i(x)^2 over all nodes; in (0, 1], equal to 1 at nodes.
  double lambda_sq(double x) const;

 private:
  FuzzyPartition(double start, double spacing, std::size_t count, Shape shape)
      : start_(start), spacing_(spacing), node_count_(count), shape_(shape) {}

  double profile(double u) const noexcept;

  double start_;
  double spacing_;
  std::size_t node_count_;
  Shape shape_;
};

}  // namespace ftvol
