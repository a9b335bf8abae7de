#include "ftvol/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ftvol/error.hpp"

namespace ftvol {

AlignedPairs align(const VolatilitySeries& ft, const VolatilitySeries& std_vol,
                   int lag) {
  if (ft.first_index != std_vol.first_index || ft.size() != std_vol.size()) {
    throw Error(ErrorCode::BadArgument,
                "FT and STD series must share the same return index");
  }
  AlignedPairs pairs;
  pairs.lag = lag;
  const auto size = static_cast<std::ptrdiff_t>(ft.size());
  for (std::ptrdiff_t t = 0; t < size; ++t) {
    const std::ptrdiff_t s = t - lag;
    if (s < 0 || s >= size) continue;
    const auto tu = static_cast<std::size_t>(t);
    const auto su = static_cast<std::size_t>(s);
    if (!ft.defined[tu] || !std_vol.defined[su]) continue;
    pairs.indices.push_back(ft.index_at(tu));
    pairs.x.push_back(ft.values[tu]);
    pairs.y.push_back(std_vol.values[su]);
  }
  if (pairs.indices.empty()) {
    throw Error(ErrorCode::NoOverlap, "no index is defined in both series");
  }
  return pairs;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::BadArgument, "pearson needs equal-length inputs");
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::TooFewPairs, "pearson needs at least 2 pairs");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw Error(ErrorCode::DegenerateVariance,
                "correlation undefined: a coordinate has zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson(const AlignedPairs& pairs) { return pearson(pairs.x, pairs.y); }

std::vector<Horizon> default_horizons() {
  return {{"yearly", 252}, {"monthly", 21}, {"weekly", 5}};
}

InputSummary describe_input(const PriceSeries& prices, ReturnKind kind) {
  InputSummary summary;
  summary.rows = prices.size();
  summary.return_kind = kind;
  if (prices.has_dates()) {
    summary.start = format_date(prices.dates().front());
    summary.end = format_date(prices.dates().back());
  }
  return summary;
}

namespace {

HorizonAnalysis analyse_horizon(const ReturnSeries& returns,
                                const Horizon& horizon,
                                const CompareOptions& options) {
  if (horizon.days < 2) {
    throw Error(ErrorCode::BadHorizon,
                "horizon '" + horizon.name + "' must be at least 2 days");
  }
  HorizonAnalysis out{horizon,
                      0,
                      ft_volatility(returns, horizon.days, options.shape,
                                    options.normalization),
                      {},
                      {},
                      {},
                      {},
                      std::nullopt,
                      {},
                      0.0,
                      0.0};
  out.nodes = out.decomposition.partition().node_count();
  out.ft = to_series(out.decomposition, FtComponent::Deviation);
  out.std = std_volatility(returns, horizon.days, options.std_options);
  out.rolling_mean =
      rolling_mean(returns, horizon.days, options.std_options.centered);
  if (options.annualize) {
    out.ft = annualize(out.ft);
    out.std = annualize(out.std);
  }
  out.pairs = align(out.ft, out.std, options.lag);

  double sum_ft = 0.0, sum_std = 0.0;
  for (std::size_t k = 0; k < out.pairs.size(); ++k) {
    sum_ft += out.pairs.x[k];
    sum_std += out.pairs.y[k];
  }
  out.mean_ft = sum_ft / static_cast<double>(out.pairs.size());
  out.mean_std = sum_std / static_cast<double>(out.pairs.size());

  try {
    out.pearson = pearson(out.pairs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateVariance &&
        e.code() != ErrorCode::TooFewPairs) {
      throw;
    }
    out.pearson_error = std::string(to_string(e.code()));
  }
  return out;
}

}  // namespace

ComparisonReport compare(const ReturnSeries& returns,
                         const std::vector<Horizon>& horizons,
                         const CompareOptions& options, InputSummary input) {
  if (horizons.empty()) {
    throw Error(ErrorCode::BadArgument, "at least one horizon is required");
  }
  if (input.rows == 0) {
    input.rows = returns.size() + 1;
    input.return_kind = returns.kind();
  }
  ComparisonReport report{std::move(input), options, {}};
  report.horizons.reserve(horizons.size());
  for (const auto& horizon : horizons) {
    report.horizons.push_back(analyse_horizon(returns, horizon, options));
  }
  return report;
}

}  // namespace ftvol
