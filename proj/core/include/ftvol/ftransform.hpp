#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "ftvol/partition.hpp"

namespace ftvol {

/// How a component's weighted sum is normalized.
///   Exact: divide by the sum of memberships over the samples (weighted mean).
///   Paper: divide by the spacing T. Identical to Exact wherever the
///          memberships over the support add up to T, which holds for
///          interior nodes on an integer grid with integer T.
enum class Normalization { Exact, Paper };

std::string_view to_string(Normalization normalization) noexcept;

struct FTransformResult {
  std::vector<double> components;
  FuzzyPartition partition;
  Normalization normalization = Normalization::Exact;
  /// Sum of A_i(t_j) over the samples, per node.
  std::vector<double> weights;
};

/// Discrete direct transform of samples (times[j], values[j]).
/// Throws BadArgument on length mismatch, OutOfDomain if a time lies outside
/// the partition, and EmptySupport if some node sees no sample.
FTransformResult direct_discrete(std::span<const double> times,
                                 std::span<const double> values,
                                 const FuzzyPartition& partition,
                                 Normalization normalization = Normalization::Exact);

/// Sum_i F_i A_i(t) at each evaluation point. Throws OutOfDomain.
std::vector<double> inverse_discrete(const FTransformResult& ft,
                                     std::span<const double> eval_points);
double inverse_at(const FTransformResult& ft, double t);

enum class QuadratureRule { Trapezoid, Simpson };

struct Quadrature {
  QuadratureRule rule = QuadratureRule::Simpson;
  /// Subintervals per inter-node interval; must be even for Simpson.
  int points_per_interval = 64;
};

/// Continuous direct transform: ratio of the integrals of f A_i and A_i over
/// each support, both computed with the same composite rule. Each support is
/// integrated interval by interval so the kink at the node is a breakpoint.
/// Throws BadQuadratureSpec.
FTransformResult direct_continuous(const std::function<double(double)>& f,
                                   const FuzzyPartition& partition,
                                   const Quadrature& quadrature = {});

/// Sum_j (values[j] - candidate)^2 A_i(times[j]); minimized by the exact
/// component F_i. Throws IndexOutOfRange.
double error_functional(std::span<const double> times,
                        std::span<const double> values,
                        const FuzzyPartition& partition, std::size_t node,
                        double candidate);

}  // namespace ftvol
