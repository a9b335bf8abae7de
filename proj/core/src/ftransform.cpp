#include "ftvol/ftransform.hpp"

#include <string>

#include "ftvol/error.hpp"

namespace ftvol {

std::string_view to_string(Normalization normalization) noexcept {
  return normalization == Normalization::Exact ? "exact" : "paper";
}

FTransformResult direct_discrete(std::span<const double> times,
                                 std::span<const double> values,
                                 const FuzzyPartition& partition,
                                 Normalization normalization) {
  if (times.size() != values.size()) {
    throw Error(ErrorCode::BadArgument, "times and values differ in length");
  }
  const std::size_t n = partition.node_count();
  std::vector<double> numerator(n, 0.0);
  std::vector<double> weights(n, 0.0);
  for (std::size_t j = 0; j < times.size(); ++j) {
    const ActiveSet set = partition.active(times[j]);
    for (std::size_t k = 0; k < set.count; ++k) {
      numerator[set.node[k]] += values[j] * set.weight[k];
      weights[set.node[k]] += set.weight[k];
    }
  }

  std::vector<double> components(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weights[i] > 0.0)) {
      throw Error(ErrorCode::EmptySupport,
                  "node " + std::to_string(i) + " covers no sample");
    }
    const double denominator =
        normalization == Normalization::Exact ? weights[i] : partition.spacing();
    components[i] = numerator[i] / denominator;
  }
  return FTransformResult{std::move(components), partition, normalization,
                          std::move(weights)};
}

double inverse_at(const FTransformResult& ft, double t) {
  const ActiveSet set = ft.partition.active(t);
  double value = 0.0;
  for (std::size_t k = 0; k < set.count; ++k) {
    value += ft.components[set.node[k]] * set.weight[k];
  }
  return value;
}

std::vector<double> inverse_discrete(const FTransformResult& ft,
                                     std::span<const double> eval_points) {
  std::vector<double> out(eval_points.size());
  for (std::size_t j = 0; j < eval_points.size(); ++j) {
    out[j] = inverse_at(ft, eval_points[j]);
  }
  return out;
}

namespace {

// Composite rule over [lo, hi] with `steps` subintervals.
template <typename G>
double integrate(const G& g, double lo, double hi, int steps,
                 QuadratureRule rule) {
  const double h = (hi - lo) / steps;
  double sum = g(lo) + g(hi);
  if (rule == QuadratureRule::Trapezoid) {
    for (int k = 1; k < steps; ++k) sum += 2.0 * g(lo + k * h);
    return sum * h / 2.0;
  }
  for (int k = 1; k < steps; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * g(lo + k * h);
  return sum * h / 3.0;
}

}  // namespace

FTransformResult direct_continuous(const std::function<double(double)>& f,
                                   const FuzzyPartition& partition,
                                   const Quadrature& quadrature) {
  const int steps = quadrature.points_per_interval;
  if (steps < 2) {
    throw Error(ErrorCode::BadQuadratureSpec,
                "points per interval must be at least 2");
  }
  if (quadrature.rule == QuadratureRule::Simpson && steps % 2 != 0) {
    throw Error(ErrorCode::BadQuadratureSpec,
                "Simpson's rule needs an even number of subintervals");
  }

  const std::size_t n = partition.node_count();
  std::vector<double> components(n);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto basic = [&](double x) { return partition.membership(i, x); };
    const auto weighted = [&](double x) { return f(x) * partition.membership(i, x); };
    double num = 0.0;
    double den = 0.0;
    if (i > 0) {
      num += integrate(weighted, partition.node(i - 1), partition.node(i), steps,
                       quadrature.rule);
      den += integrate(basic, partition.node(i - 1), partition.node(i), steps,
                       quadrature.rule);
    }
    if (i + 1 < n) {
      num += integrate(weighted, partition.node(i), partition.node(i + 1), steps,
                       quadrature.rule);
      den += integrate(basic, partition.node(i), partition.node(i + 1), steps,
                       quadrature.rule);
    }
    components[i] = num / den;
    weights[i] = den;
  }
  return FTransformResult{std::move(components), partition,
                          Normalization::Exact, std::move(weights)};
}

double error_functional(std::span<const double> times,
                        std::span<const double> values,
                        const FuzzyPartition& partition, std::size_t node,
                        double candidate) {
  if (times.size() != values.size()) {
    throw Error(ErrorCode::BadArgument, "times and values differ in length");
  }
  double phi = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double residual = values[j] - candidate;
    phi += residual * residual * partition.membership(node, times[j]);
  }
  if (times.empty()) (void)partition.membership(node, partition.domain_start());
  return phi;
}

}  // namespace ftvol
