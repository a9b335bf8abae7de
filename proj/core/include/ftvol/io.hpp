#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "ftvol/analysis.hpp"
#include "ftvol/ftransform.hpp"
#include "ftvol/partition.hpp"
#include "ftvol/timeseries.hpp"
#include "ftvol/volatility.hpp"

// Plot-ready output. All CSVs are comma-delimited with a header row, LF line
// endings and numbers at 10 significant digits. Undefined values are empty
// cells, never NaN.
namespace ftvol::io {

std::string format_number(double value);

/// index,date,return
std::string returns_csv(const ReturnSeries& returns);

/// date,close
std::string prices_csv(const PriceSeries& prices);

/// index,date,value,defined
std::string volatility_csv(const VolatilitySeries& series,
                           std::span<const Date> dates = {});

/// node,index,B,H
std::string components_csv(const FtVolDecomposition& decomposition);

/// index,date,ft,std,defined_std
std::string pointwise_csv(const HorizonAnalysis& analysis,
                          std::span<const Date> dates = {});

/// index,ft,std
std::string scatter_csv(const AlignedPairs& pairs);

/// index,date,return,baseline,baseline_adjusted,rolling_mean,mean_adjusted
std::string adjusted_returns_csv(const ReturnSeries& returns,
                                 const HorizonAnalysis& analysis);

/// {input: {rows, start, end, return_kind},
///  horizons: [{name, T, nodes, pairs, pearson, mean_ft, mean_std}]}
/// A null pearson carries a sibling "pearson_error" naming the cause.
std::string report_json(const ComparisonReport& report);

struct SeriesMetadata {
  VolMethod method = VolMethod::FT;
  int horizon = 0;
  std::optional<Shape> shape;
  std::optional<Normalization> normalization;
  std::optional<StdEstimator> estimator;
  std::optional<bool> centered;
  bool annualized = false;
  ReturnKind return_kind = ReturnKind::Simple;
};

/// Sidecar description of one volatility series. Annualized FT output is
/// flagged as an extension since only the STD convention is standard.
std::string metadata_json(const SeriesMetadata& metadata);

/// Writes via a temporary sibling and rename. Throws Error(Io).
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace ftvol::io
