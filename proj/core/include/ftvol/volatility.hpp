#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ftvol/ftransform.hpp"
#include "ftvol/partition.hpp"
#include "ftvol/timeseries.hpp"

namespace ftvol {

inline constexpr double kTradingDaysPerYear = 252.0;

enum class VolMethod { FT, STD };

std::string_view to_string(VolMethod method) noexcept;

/// Per-day volatility on the return index. Positions without a value (the
/// edges of a rolling window, or past the last FT node) are masked out and
/// hold 0 in `values`; never read them without checking `defined`.
struct VolatilitySeries {
  std::size_t first_index = 1;
  std::vector<double> values;
  std::vector<bool> defined;
  VolMethod method = VolMethod::STD;
  int horizon = 0;
  bool annualized = false;

  std::size_t size() const noexcept { return values.size(); }
  std::size_t index_at(std::size_t position) const noexcept {
    return first_index + position;
  }
  std::optional<double> at(std::size_t position) const {
    if (!defined[position]) return std::nullopt;
    return values[position];
  }
  std::size_t defined_count() const noexcept;
};

/// Everything the FT estimator produces for one horizon. The series b, h and
/// d cover sample positions 0..covered()-1, i.e. the closed span between the
/// first and the last node.
struct FtVolDecomposition {
  FTransformResult returns_transform;   // B_i
  FTransformResult absolute_transform;  // H_i
  std::vector<double> baseline;         // b_t
  std::vector<double> envelope;         // h_t
  std::vector<double> deviation;        // d_t = h_t - b_t
  std::size_t first_index = 1;
  std::size_t total_size = 0;           // length of the source return series
  int horizon = 0;

  const FuzzyPartition& partition() const noexcept {
    return returns_transform.partition;
  }
  std::size_t covered() const noexcept { return deviation.size(); }
  std::span<const double> B() const noexcept { return returns_transform.components; }
  std::span<const double> H() const noexcept { return absolute_transform.components; }
};

/// FT volatility over a horizon of T trading days. Nodes sit at positions
/// 0, T, 2T, ... (floor(m/T) of them). Throws BadHorizon (T < 1) or
/// SeriesTooShort (fewer than 2T + 1 returns).
FtVolDecomposition ft_volatility(const ReturnSeries& returns, int horizon,
                                 Shape shape = Shape::Hat,
                                 Normalization normalization = Normalization::Exact);

enum class FtComponent { Deviation, Baseline, Envelope };

/// Spreads one FT series over the full return index, masking positions past
/// the last node.
VolatilitySeries to_series(const FtVolDecomposition& decomposition,
                           FtComponent component = FtComponent::Deviation);

enum class StdEstimator { Population, Sample };

std::string_view to_string(StdEstimator estimator) noexcept;

struct StdOptions {
  bool centered = true;
  StdEstimator estimator = StdEstimator::Population;
};

/// Window of T returns ending at t (trailing) or spanning
/// [t - floor(T/2), t + ceil(T/2) - 1] (centered). Returns the first and
/// one-past-last positions, or nullopt when the window leaves the series.
std::optional<std::pair<std::size_t, std::size_t>> rolling_window(
    std::size_t position, std::size_t size, int window, bool centered);

/// Rolling standard deviation. Throws BadHorizon (T < 2) or SeriesTooShort.
VolatilitySeries std_volatility(const ReturnSeries& returns, int window,
                                const StdOptions& options = {});

/// Rolling arithmetic mean over the same windows as std_volatility.
std::vector<std::optional<double>> rolling_mean(const ReturnSeries& returns,
                                                int window, bool centered = true);

/// Scales every value by sqrt(periods_per_year). Throws AlreadyAnnualized.
VolatilitySeries annualize(const VolatilitySeries& series,
                           double periods_per_year = kTradingDaysPerYear);

/// E[|r - mean|^theta] over the whole series (population).
/// Throws EmptySeries or BadTheta.
double theta_deviation(std::span<const double> returns, double theta);
double theta_deviation(const ReturnSeries& returns, double theta);

struct LuceRiskParams {
  double k_gain = 1.0;  // weight on positive returns
  double k_loss = 1.0;  // weight on negative returns
  double theta = 2.0;
};

/// Empirical Luce risk: k_gain * mean over positive returns of |r|^theta plus
/// k_loss * the same over negative returns, both divided by the full sample
/// count. Throws EmptySeries or BadArgument.
double luce_risk(std::span<const double> returns, const LuceRiskParams& params);
double luce_risk(const ReturnSeries& returns, const LuceRiskParams& params);

/// Pointwise risk density of the FT deviation: 2 q lambda_sq frequency / T for
/// negative returns and 0 otherwise. Throws BadArgument.
double u_function(double frequency, double return_value, std::size_t sample_count,
                  double horizon, double lambda_sq = 1.0);

/// Upper bound u_t >= d_t: (2 / D) times the sum of |r_s| over negative r_s
/// lying in the union of the supports active at t. D is T for Paper
/// normalization; for Exact it is the smallest membership sum among the
/// active nodes (which is T away from the boundary nodes).
/// Covers the same positions as ft_volatility. Throws SeriesTooShort.
std::vector<double> deviation_upper_bound(
    const ReturnSeries& returns, int horizon, Shape shape = Shape::Hat,
    Normalization normalization = Normalization::Paper);

}  // namespace ftvol
