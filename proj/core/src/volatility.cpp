#include "ftvol/volatility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ftvol/error.hpp"

namespace ftvol {

std::string_view to_string(VolMethod method) noexcept {
  return method == VolMethod::FT ? "FT" : "STD";
}

std::string_view to_string(StdEstimator estimator) noexcept {
  return estimator == StdEstimator::Population ? "population" : "sample";
}

std::size_t VolatilitySeries::defined_count() const noexcept {
  return static_cast<std::size_t>(std::count(defined.begin(), defined.end(), true));
}

namespace {

void require_ft_length(const ReturnSeries& returns, int horizon) {
  if (horizon < 1) {
    throw Error(ErrorCode::BadHorizon, "horizon must be at least 1 day");
  }
  const auto needed = 2 * static_cast<std::size_t>(horizon) + 1;
  if (returns.size() < needed) {
    throw Error(ErrorCode::SeriesTooShort,
                "horizon " + std::to_string(horizon) + " needs at least " +
                    std::to_string(needed) + " returns, got " +
                    std::to_string(returns.size()));
  }
}

std::vector<double> positions(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t t = 0; t < count; ++t) out[t] = static_cast<double>(t);
  return out;
}

}  // namespace

FtVolDecomposition ft_volatility(const ReturnSeries& returns, int horizon,
                                 Shape shape, Normalization normalization) {
  require_ft_length(returns, horizon);
  const auto partition =
      FuzzyPartition::over_samples(returns.size(), horizon, shape);
  const auto covered =
      static_cast<std::size_t>(partition.domain_end()) + 1;

  const auto times = positions(covered);
  const auto signed_values = returns.values().first(covered);
  std::vector<double> absolute(covered);
  std::transform(signed_values.begin(), signed_values.end(), absolute.begin(),
                 [](double r) { return std::abs(r); });

  FtVolDecomposition out{
      direct_discrete(times, signed_values, partition, normalization),
      direct_discrete(times, absolute, partition, normalization),
      {},
      {},
      {},
      returns.first_index(),
      returns.size(),
      horizon};
  out.baseline = inverse_discrete(out.returns_transform, times);
  out.envelope = inverse_discrete(out.absolute_transform, times);
  out.deviation.resize(covered);
  for (std::size_t t = 0; t < covered; ++t) {
    out.deviation[t] = out.envelope[t] - out.baseline[t];
  }
  return out;
}

VolatilitySeries to_series(const FtVolDecomposition& decomposition,
                           FtComponent component) {
  const std::vector<double>* source = &decomposition.deviation;
  if (component == FtComponent::Baseline) source = &decomposition.baseline;
  if (component == FtComponent::Envelope) source = &decomposition.envelope;

  VolatilitySeries series;
  series.first_index = decomposition.first_index;
  series.method = VolMethod::FT;
  series.horizon = decomposition.horizon;
  series.values.assign(decomposition.total_size, 0.0);
  series.defined.assign(decomposition.total_size, false);
  for (std::size_t t = 0; t < source->size(); ++t) {
    series.values[t] = (*source)[t];
    series.defined[t] = true;
  }
  return series;
}

std::optional<std::pair<std::size_t, std::size_t>> rolling_window(
    std::size_t position, std::size_t size, int window, bool centered) {
  const auto w = static_cast<std::size_t>(window);
  const std::size_t behind = centered ? w / 2 : w - 1;
  if (position < behind) return std::nullopt;
  const std::size_t first = position - behind;
  const std::size_t last = first + w;  // one past the end
  if (last > size) return std::nullopt;
  return std::make_pair(first, last);
}

namespace {

void require_window(const ReturnSeries& returns, int window) {
  if (window < 2) {
    throw Error(ErrorCode::BadHorizon, "rolling window must be at least 2");
  }
  if (returns.size() < static_cast<std::size_t>(window)) {
    throw Error(ErrorCode::SeriesTooShort,
                "window " + std::to_string(window) + " exceeds series length " +
                    std::to_string(returns.size()));
  }
}

double mean_of(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

}  // namespace

VolatilitySeries std_volatility(const ReturnSeries& returns, int window,
                                const StdOptions& options) {
  require_window(returns, window);
  const auto values = returns.values();
  const double divisor = options.estimator == StdEstimator::Population
                             ? static_cast<double>(window)
                             : static_cast<double>(window - 1);

  VolatilitySeries series;
  series.first_index = returns.first_index();
  series.method = VolMethod::STD;
  series.horizon = window;
  series.values.assign(values.size(), 0.0);
  series.defined.assign(values.size(), false);
  for (std::size_t t = 0; t < values.size(); ++t) {
    const auto range = rolling_window(t, values.size(), window, options.centered);
    if (!range) continue;
    const auto slice = values.subspan(range->first, range->second - range->first);
    const double mean = mean_of(slice);
    double ss = 0.0;
    for (double x : slice) ss += (x - mean) * (x - mean);
    series.values[t] = std::sqrt(ss / divisor);
    series.defined[t] = true;
  }
  return series;
}

std::vector<std::optional<double>> rolling_mean(const ReturnSeries& returns,
                                                int window, bool centered) {
  require_window(returns, window);
  const auto values = returns.values();
  std::vector<std::optional<double>> out(values.size());
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (const auto range = rolling_window(t, values.size(), window, centered)) {
      out[t] = mean_of(values.subspan(range->first, range->second - range->first));
    }
  }
  return out;
}

VolatilitySeries annualize(const VolatilitySeries& series,
                           double periods_per_year) {
  if (series.annualized) {
    throw Error(ErrorCode::AlreadyAnnualized, "series is already annualized");
  }
  if (!(periods_per_year > 0.0)) {
    throw Error(ErrorCode::BadArgument, "periods per year must be positive");
  }
  const double factor = std::sqrt(periods_per_year);
  VolatilitySeries out = series;
  for (std::size_t t = 0; t < out.values.size(); ++t) {
    if (out.defined[t]) out.values[t] *= factor;
  }
  out.annualized = true;
  return out;
}

double theta_deviation(std::span<const double> returns, double theta) {
  if (returns.empty()) throw Error(ErrorCode::EmptySeries, "no returns");
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw Error(ErrorCode::BadTheta, "theta must be positive");
  }
  const double mean = mean_of(returns);
  double total = 0.0;
  for (double r : returns) {
    const double dev = std::abs(r - mean);
    total += theta == 2.0 ? dev * dev : std::pow(dev, theta);
  }
  return total / static_cast<double>(returns.size());
}

double theta_deviation(const ReturnSeries& returns, double theta) {
  return theta_deviation(returns.values(), theta);
}

double luce_risk(std::span<const double> returns, const LuceRiskParams& params) {
  if (returns.empty()) throw Error(ErrorCode::EmptySeries, "no returns");
  if (!(params.k_gain >= 0.0) || !(params.k_loss >= 0.0) ||
      !(params.theta > 0.0)) {
    throw Error(ErrorCode::BadArgument,
                "Luce risk needs nonnegative weights and positive theta");
  }
  double gains = 0.0;
  double losses = 0.0;
  for (double r : returns) {
    const double mag = std::pow(std::abs(r), params.theta);
    if (r > 0.0) gains += mag;
    if (r < 0.0) losses += mag;
  }
  const auto q = static_cast<double>(returns.size());
  return params.k_gain * gains / q + params.k_loss * losses / q;
}

double luce_risk(const ReturnSeries& returns, const LuceRiskParams& params) {
  return luce_risk(returns.values(), params);
}

double u_function(double frequency, double return_value, std::size_t sample_count,
                  double horizon, double lambda_sq) {
  if (!(frequency >= 0.0 && frequency <= 1.0) || sample_count < 1 ||
      !(horizon >= 1.0) || !(lambda_sq > 0.0 && lambda_sq <= 1.0)) {
    throw Error(ErrorCode::BadArgument,
                "u_function needs frequency in [0,1], q >= 1, T >= 1 and "
                "lambda_sq in (0,1]");
  }
  if (return_value >= 0.0) return 0.0;
  return 2.0 * static_cast<double>(sample_count) * lambda_sq / horizon * frequency;
}

std::vector<double> deviation_upper_bound(const ReturnSeries& returns,
                                          int horizon, Shape shape,
                                          Normalization normalization) {
  require_ft_length(returns, horizon);
  const auto partition =
      FuzzyPartition::over_samples(returns.size(), horizon, shape);
  const auto covered = static_cast<std::size_t>(partition.domain_end()) + 1;
  const auto values = returns.values();

  std::vector<double> node_weights;
  if (normalization == Normalization::Exact) {
    const auto times = positions(covered);
    node_weights.assign(partition.node_count(), 0.0);
    for (std::size_t i = 0; i < partition.node_count(); ++i) {
      node_weights[i] = partition.cardinality(i, times);
    }
  }

  const auto T = static_cast<std::size_t>(horizon);
  const std::size_t last_node = partition.node_count() - 1;
  std::vector<double> bound(covered);
  for (std::size_t t = 0; t < covered; ++t) {
    const ActiveSet set = partition.active(static_cast<double>(t));
    const std::size_t lo_node = set.node[0];
    const std::size_t hi_node = set.node[set.count - 1];
    // Open union of supports (x_{lo-1}, x_{hi+1}) clipped to the domain.
    const std::size_t first = lo_node == 0 ? 0 : (lo_node - 1) * T + 1;
    const std::size_t past = hi_node == last_node ? covered : (hi_node + 1) * T;
    double denominator = partition.spacing();
    if (normalization == Normalization::Exact) {
      denominator = node_weights[set.node[0]];
      for (std::size_t k = 1; k < set.count; ++k) {
        denominator = std::min(denominator, node_weights[set.node[k]]);
      }
    }
    double negative_mass = 0.0;
    for (std::size_t s = first; s < past; ++s) {
      if (values[s] < 0.0) negative_mass -= values[s];
    }
    bound[t] = 2.0 * negative_mass / denominator;
  }
  return bound;
}

}  // namespace ftvol
