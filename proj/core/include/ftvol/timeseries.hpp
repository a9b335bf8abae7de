#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ftvol {

using Date = std::chrono::year_month_day;

enum class DateFormat {
  Iso,       // 2000-09-20
  DayFirst,  // 20-09-2000, 20/09/2000, 20-Sep-2000
};

std::optional<Date> parse_date(std::string_view text, DateFormat format);
std::string format_date(const Date& date);

/// Daily closing prices on a dense trading-day index 0..m-1.
///
/// Weekends and holidays are invisible: position in the series is the only
/// notion of time used downstream. Dates are informational and may be
/// absent (an empty date vector), e.g. for prices built in code.
class PriceSeries {
 public:
  /// Throws TooShort (m < 2), NonPositivePrice, DuplicateDate, or
  /// BadArgument (dates decreasing or length mismatch).
  explicit PriceSeries(std::vector<double> prices, std::vector<Date> dates = {});

  std::size_t size() const noexcept { return prices_.size(); }
  std::span<const double> prices() const noexcept { return prices_; }
  std::span<const Date> dates() const noexcept { return dates_; }
  bool has_dates() const noexcept { return !dates_.empty(); }
  double operator[](std::size_t t) const { return prices_[t]; }

 private:
  std::vector<double> prices_;
  std::vector<Date> dates_;
};

enum class ReturnKind { Simple, Log };

std::string_view to_string(ReturnKind kind) noexcept;

/// Daily returns indexed by the trading-day ordinal of the later price
/// (1..m-1 for a price series of length m).
class ReturnSeries {
 public:
  /// Returns built directly from values; indices run first_index, first_index+1, ...
  explicit ReturnSeries(std::vector<double> values,
                        ReturnKind kind = ReturnKind::Simple,
                        std::vector<Date> dates = {},
                        std::size_t first_index = 1);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const Date> dates() const noexcept { return dates_; }
  bool has_dates() const noexcept { return !dates_.empty(); }
  ReturnKind kind() const noexcept { return kind_; }
  std::size_t first_index() const noexcept { return first_index_; }
  std::size_t index_at(std::size_t position) const noexcept {
    return first_index_ + position;
  }
  double operator[](std::size_t position) const { return values_[position]; }

  ReturnSeries scaled(double alpha) const;

 private:
  std::vector<double> values_;
  ReturnKind kind_;
  std::vector<Date> dates_;
  std::size_t first_index_;
};

struct CsvOptions {
  DateFormat date_format = DateFormat::Iso;
  std::string date_column = "date";
  std::string close_column = "close";
};

/// Reads a header-led CSV, locating the date and close columns by
/// case-insensitive name. Rows may arrive in any order; they are sorted by
/// date. Missing or non-numeric cells are MalformedCsv.
PriceSeries load_prices(std::istream& in, const CsvOptions& options = {});

ReturnSeries simple_returns(const PriceSeries& prices);
ReturnSeries log_returns(const PriceSeries& prices);
ReturnSeries compute_returns(const PriceSeries& prices, ReturnKind kind);

struct Regime {
  std::size_t start = 0;
  double vol = 0.0;
};

struct SynthSpec {
  double drift = 0.0;          // per-day log drift
  double vol = 0.01;           // per-day volatility before the first regime
  double initial_price = 100.0;
  std::size_t length = 1000;
  std::uint64_t seed = 1;
  std::vector<Regime> regimes;
  Date start_date = Date{std::chrono::year{2000}, std::chrono::month{1},
                         std::chrono::day{3}};
};

/// Geometric Brownian motion accumulated in log space. Dates step over
/// weekends. Throws InvalidSpec when the spec invariants do not hold.
PriceSeries synth_prices(const SynthSpec& spec);

/// Volatility in force at day t under the spec's regime schedule.
double regime_vol_at(const SynthSpec& spec, std::size_t t) noexcept;

}  // namespace ftvol
