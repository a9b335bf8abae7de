#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftvol/ftransform.hpp"
#include "ftvol/partition.hpp"
#include "ftvol/timeseries.hpp"
#include "ftvol/volatility.hpp"

namespace ftvol {

struct AlignedPairs {
  std::vector<std::size_t> indices;  // trading-day ordinals of the FT side
  std::vector<double> x;             // FT
  std::vector<double> y;             // STD
  int lag = 0;

  std::size_t size() const noexcept { return indices.size(); }
};

/// Pairs ft[t] with std[t - lag] wherever both are defined. Both series must
/// live on the same return index. Throws BadArgument or NoOverlap.
AlignedPairs align(const VolatilitySeries& ft, const VolatilitySeries& std_vol,
                   int lag = 0);

/// Product-moment correlation, clamped to [-1, 1].
/// Throws TooFewPairs (< 2) or DegenerateVariance.
double pearson(std::span<const double> x, std::span<const double> y);
double pearson(const AlignedPairs& pairs);

struct Horizon {
  std::string name;
  int days = 0;
};

/// yearly 252, monthly 21, weekly 5.
std::vector<Horizon> default_horizons();

struct CompareOptions {
  Shape shape = Shape::Hat;
  Normalization normalization = Normalization::Exact;
  StdOptions std_options{};
  int lag = 0;
  bool annualize = false;
};

struct HorizonAnalysis {
  Horizon horizon;
  std::size_t nodes = 0;
  FtVolDecomposition decomposition;
  VolatilitySeries ft;   // annualized when requested
  VolatilitySeries std;  // annualized when requested
  std::vector<std::optional<double>> rolling_mean;
  AlignedPairs pairs;
  std::optional<double> pearson;
  std::string pearson_error;  // set when pearson is null
  double mean_ft = 0.0;       // over the aligned pairs
  double mean_std = 0.0;
};

struct InputSummary {
  std::size_t rows = 0;
  std::string start;
  std::string end;
  ReturnKind return_kind = ReturnKind::Simple;
};

InputSummary describe_input(const PriceSeries& prices, ReturnKind kind);

struct ComparisonReport {
  InputSummary input;
  CompareOptions options;
  std::vector<HorizonAnalysis> horizons;
};

/// Runs FT and STD volatility for each horizon, aligns and correlates them.
/// Horizons are independent of each other. A degenerate correlation is
/// recorded in the report (null pearson); other failures propagate.
ComparisonReport compare(const ReturnSeries& returns,
                         const std::vector<Horizon>& horizons,
                         const CompareOptions& options = {},
                         InputSummary input = {});

}  // namespace ftvol
