#include "ftvol/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "ftvol/error.hpp"

namespace ftvol::io {
namespace {

using nlohmann::ordered_json;

std::string date_cell(std::span<const Date> dates, std::size_t position) {
  return position < dates.size() ? format_date(dates[position]) : std::string{};
}

std::string optional_cell(bool defined, double value) {
  return defined ? format_number(value) : std::string{};
}

ordered_json number_or_null(std::optional<double> value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value == 0.0 ? 0.0 : value);
  return buf;
}

std::string returns_csv(const ReturnSeries& returns) {
  std::ostringstream out;
  out << "index,date,return\n";
  for (std::size_t t = 0; t < returns.size(); ++t) {
    out << returns.index_at(t) << ',' << date_cell(returns.dates(), t) << ','
        << format_number(returns[t]) << '\n';
  }
  return out.str();
}

std::string prices_csv(const PriceSeries& prices) {
  std::ostringstream out;
  out << "date,close\n";
  for (std::size_t t = 0; t < prices.size(); ++t) {
    out << date_cell(prices.dates(), t) << ',' << format_number(prices[t]) << '\n';
  }
  return out.str();
}

std::string volatility_csv(const VolatilitySeries& series,
                           std::span<const Date> dates) {
  std::ostringstream out;
  out << "index,date,value,defined\n";
  for (std::size_t t = 0; t < series.size(); ++t) {
    const bool defined = series.defined[t];
    out << series.index_at(t) << ',' << date_cell(dates, t) << ','
        << optional_cell(defined, series.values[t]) << ',' << (defined ? 1 : 0)
        << '\n';
  }
  return out.str();
}

std::string components_csv(const FtVolDecomposition& decomposition) {
  std::ostringstream out;
  out << "node,index,B,H\n";
  const auto& partition = decomposition.partition();
  for (std::size_t i = 0; i < partition.node_count(); ++i) {
    const auto position = static_cast<std::size_t>(partition.node(i));
    out << i << ',' << decomposition.first_index + position << ','
        << format_number(decomposition.B()[i]) << ','
        << format_number(decomposition.H()[i]) << '\n';
  }
  return out.str();
}

std::string pointwise_csv(const HorizonAnalysis& analysis,
                          std::span<const Date> dates) {
  std::ostringstream out;
  out << "index,date,ft,std,defined_std\n";
  const auto& ft = analysis.ft;
  const auto& sd = analysis.std;
  for (std::size_t t = 0; t < ft.size(); ++t) {
    out << ft.index_at(t) << ',' << date_cell(dates, t) << ','
        << optional_cell(ft.defined[t], ft.values[t]) << ','
        << optional_cell(sd.defined[t], sd.values[t]) << ','
        << (sd.defined[t] ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string scatter_csv(const AlignedPairs& pairs) {
  std::ostringstream out;
  out << "index,ft,std\n";
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    out << pairs.indices[k] << ',' << format_number(pairs.x[k]) << ','
        << format_number(pairs.y[k]) << '\n';
  }
  return out.str();
}

std::string adjusted_returns_csv(const ReturnSeries& returns,
                                 const HorizonAnalysis& analysis) {
  std::ostringstream out;
  out << "index,date,return,baseline,baseline_adjusted,rolling_mean,mean_adjusted\n";
  const auto& baseline = analysis.decomposition.baseline;
  for (std::size_t t = 0; t < returns.size(); ++t) {
    const double r = returns[t];
    const bool has_baseline = t < baseline.size();
    const auto& mean = analysis.rolling_mean[t];
    out << returns.index_at(t) << ',' << date_cell(returns.dates(), t) << ','
        << format_number(r) << ','
        << optional_cell(has_baseline, has_baseline ? baseline[t] : 0.0) << ','
        << optional_cell(has_baseline, has_baseline ? r - baseline[t] : 0.0) << ','
        << optional_cell(mean.has_value(), mean.value_or(0.0)) << ','
        << optional_cell(mean.has_value(), r - mean.value_or(0.0)) << '\n';
  }
  return out.str();
}

std::string report_json(const ComparisonReport& report) {
  ordered_json doc;
  doc["input"] = {
      {"rows", report.input.rows},
      {"start", report.input.start.empty() ? ordered_json(nullptr)
                                           : ordered_json(report.input.start)},
      {"end", report.input.end.empty() ? ordered_json(nullptr)
                                       : ordered_json(report.input.end)},
      {"return_kind", std::string(to_string(report.input.return_kind))},
  };
  ordered_json horizons = ordered_json::array();
  for (const auto& h : report.horizons) {
    ordered_json entry = {
        {"name", h.horizon.name},
        {"T", h.horizon.days},
        {"nodes", h.nodes},
        {"pairs", h.pairs.size()},
        {"pearson", number_or_null(h.pearson)},
        {"mean_ft", h.mean_ft},
        {"mean_std", h.mean_std},
    };
    if (!h.pearson) entry["pearson_error"] = h.pearson_error;
    horizons.push_back(std::move(entry));
  }
  doc["horizons"] = std::move(horizons);
  return doc.dump(2) + "\n";
}

std::string metadata_json(const SeriesMetadata& m) {
  ordered_json doc;
  doc["method"] = std::string(to_string(m.method));
  doc["horizon"] = m.horizon;
  doc["shape"] = m.shape ? ordered_json(std::string(to_string(*m.shape)))
                         : ordered_json(nullptr);
  doc["normalization"] =
      m.normalization ? ordered_json(std::string(to_string(*m.normalization)))
                      : ordered_json(nullptr);
  doc["estimator"] = m.estimator
                         ? ordered_json(std::string(to_string(*m.estimator)))
                         : ordered_json(nullptr);
  doc["centered"] = m.centered ? ordered_json(*m.centered) : ordered_json(nullptr);
  doc["annualized"] = m.annualized;
  doc["periods_per_year"] = m.annualized ? ordered_json(kTradingDaysPerYear)
                                         : ordered_json(nullptr);
  doc["return_kind"] = std::string(to_string(m.return_kind));
  doc["ft_annualization_extension"] = m.method == VolMethod::FT && m.annualized;
  return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  auto temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + temp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed writing " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw Error(ErrorCode::Io, "cannot move output into " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace ftvol::io
