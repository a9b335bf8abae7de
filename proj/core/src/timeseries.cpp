#include "ftvol/timeseries.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "ftvol/error.hpp"

namespace ftvol {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

// RFC 4180 style: quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return value;
}

std::optional<unsigned> parse_month_name(std::string_view s) {
  static constexpr std::array<std::string_view, 12> kNames = {
      "jan", "feb", "mar", "apr", "may", "jun",
      "jul", "aug", "sep", "oct", "nov", "dec"};
  if (s.size() < 3) return std::nullopt;
  for (unsigned m = 0; m < kNames.size(); ++m) {
    if (iequals(s.substr(0, 3), kNames[m])) return m + 1;
  }
  return std::nullopt;
}

std::optional<double> parse_price(std::string_view text) {
  std::string cleaned;
  for (char c : trim(text)) {
    if (c != ',') cleaned.push_back(c);  // thousands separators inside quotes
  }
  if (cleaned.empty()) return std::nullopt;
  double value = 0.0;
  const char* end = cleaned.data() + cleaned.size();
  auto [ptr, ec] = std::from_chars(cleaned.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

void require_length(const PriceSeries& prices) {
  if (prices.size() < 2) {
    throw Error(ErrorCode::TooShort, "at least two prices are required");
  }
}

}  // namespace

std::optional<Date> parse_date(std::string_view text, DateFormat format) {
  text = trim(text);
  const char sep = format == DateFormat::Iso ? '-'
                   : text.find('/') != std::string_view::npos ? '/'
                                                              : '-';
  const auto p1 = text.find(sep);
  if (p1 == std::string_view::npos) return std::nullopt;
  const auto p2 = text.find(sep, p1 + 1);
  if (p2 == std::string_view::npos) return std::nullopt;
  const auto a = text.substr(0, p1);
  const auto b = text.substr(p1 + 1, p2 - p1 - 1);
  const auto c = text.substr(p2 + 1);

  std::optional<int> year, month, day;
  if (format == DateFormat::Iso) {
    if (a.size() != 4) return std::nullopt;
    year = parse_int(a);
    month = parse_int(b);
    day = parse_int(c);
  } else {
    if (c.size() != 4) return std::nullopt;
    day = parse_int(a);
    month = parse_int(b);
    if (!month) {
      if (auto named = parse_month_name(b)) month = static_cast<int>(*named);
    }
    year = parse_int(c);
  }
  if (!year || !month || !day || *month < 1 || *day < 1) return std::nullopt;
  const Date date{std::chrono::year{*year},
                  std::chrono::month{static_cast<unsigned>(*month)},
                  std::chrono::day{static_cast<unsigned>(*day)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

PriceSeries::PriceSeries(std::vector<double> prices, std::vector<Date> dates)
    : prices_(std::move(prices)), dates_(std::move(dates)) {
  if (prices_.size() < 2) {
    throw Error(ErrorCode::TooShort, "price series needs at least 2 rows, got " +
                                         std::to_string(prices_.size()));
  }
  for (std::size_t t = 0; t < prices_.size(); ++t) {
    if (!(prices_[t] > 0.0) || !std::isfinite(prices_[t])) {
      throw Error(ErrorCode::NonPositivePrice,
                  "price at position " + std::to_string(t) + " is not positive");
    }
  }
  if (!dates_.empty()) {
    if (dates_.size() != prices_.size()) {
      throw Error(ErrorCode::BadArgument, "dates and prices differ in length");
    }
    for (std::size_t t = 1; t < dates_.size(); ++t) {
      if (dates_[t] == dates_[t - 1]) {
        throw Error(ErrorCode::DuplicateDate,
                    "duplicate date " + format_date(dates_[t]));
      }
      if (dates_[t] < dates_[t - 1]) {
        throw Error(ErrorCode::BadArgument, "dates are not increasing at " +
                                                format_date(dates_[t]));
      }
    }
  }
}

std::string_view to_string(ReturnKind kind) noexcept {
  return kind == ReturnKind::Simple ? "simple" : "log";
}

ReturnSeries::ReturnSeries(std::vector<double> values, ReturnKind kind,
                           std::vector<Date> dates, std::size_t first_index)
    : values_(std::move(values)),
      kind_(kind),
      dates_(std::move(dates)),
      first_index_(first_index) {
  if (!dates_.empty() && dates_.size() != values_.size()) {
    throw Error(ErrorCode::BadArgument, "dates and returns differ in length");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::BadArgument, "returns must be finite");
    }
  }
}

ReturnSeries ReturnSeries::scaled(double alpha) const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(),
                 [alpha](double v) { return alpha * v; });
  return ReturnSeries(std::move(out), kind_, dates_, first_index_);
}

PriceSeries load_prices(std::istream& in, const CsvOptions& options) {
  std::string line;
  std::optional<std::vector<std::string>> header;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (!header) throw Error(ErrorCode::MalformedCsv, "input has no header row");

  std::optional<std::size_t> date_col, close_col;
  for (std::size_t c = 0; c < header->size(); ++c) {
    const auto name = trim((*header)[c]);
    if (!date_col && iequals(name, options.date_column)) date_col = c;
    if (!close_col && iequals(name, options.close_column)) close_col = c;
  }
  if (!date_col || !close_col) {
    throw Error(ErrorCode::MalformedCsv, "header must contain '" +
                                             options.date_column + "' and '" +
                                             options.close_column + "' columns");
  }
  const std::size_t needed = std::max(*date_col, *close_col) + 1;

  std::vector<std::pair<Date, double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const auto where = " on line " + std::to_string(line_no);
    if (fields.size() < needed) {
      throw Error(ErrorCode::MalformedCsv, "too few fields" + where);
    }
    const auto date = parse_date(fields[*date_col], options.date_format);
    if (!date) {
      throw Error(ErrorCode::MalformedCsv,
                  "unparseable date '" + fields[*date_col] + "'" + where);
    }
    const auto price = parse_price(fields[*close_col]);
    if (!price) {
      throw Error(ErrorCode::MalformedCsv,
                  "missing or non-numeric price '" + fields[*close_col] + "'" +
                      where);
    }
    if (!(*price > 0.0)) {
      throw Error(ErrorCode::NonPositivePrice,
                  "price " + fields[*close_col] + where);
    }
    rows.emplace_back(*date, *price);
  }
  if (in.bad()) throw Error(ErrorCode::Io, "failed reading price stream");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first == rows[i - 1].first) {
      throw Error(ErrorCode::DuplicateDate,
                  "duplicate date " + format_date(rows[i].first));
    }
  }
  if (rows.size() < 2) {
    throw Error(ErrorCode::TooShort, "need at least 2 price rows, got " +
                                         std::to_string(rows.size()));
  }

  std::vector<double> prices;
  std::vector<Date> dates;
  prices.reserve(rows.size());
  dates.reserve(rows.size());
  for (const auto& [d, p] : rows) {
    dates.push_back(d);
    prices.push_back(p);
  }
  return PriceSeries(std::move(prices), std::move(dates));
}

namespace {

template <typename F>
ReturnSeries make_returns(const PriceSeries& prices, ReturnKind kind, F&& f) {
  require_length(prices);
  const auto p = prices.prices();
  std::vector<double> values(p.size() - 1);
  for (std::size_t t = 1; t < p.size(); ++t) values[t - 1] = f(p[t - 1], p[t]);
  std::vector<Date> dates;
  if (prices.has_dates()) {
    dates.assign(prices.dates().begin() + 1, prices.dates().end());
  }
  return ReturnSeries(std::move(values), kind, std::move(dates), 1);
}

}  // namespace

ReturnSeries simple_returns(const PriceSeries& prices) {
  return make_returns(prices, ReturnKind::Simple,
                      [](double prev, double cur) { return (cur - prev) / prev; });
}

ReturnSeries log_returns(const PriceSeries& prices) {
  return make_returns(prices, ReturnKind::Log,
                      [](double prev, double cur) { return std::log(cur / prev); });
}

ReturnSeries compute_returns(const PriceSeries& prices, ReturnKind kind) {
  return kind == ReturnKind::Simple ? simple_returns(prices) : log_returns(prices);
}

double regime_vol_at(const SynthSpec& spec, std::size_t t) noexcept {
  double vol = spec.vol;
  for (const auto& regime : spec.regimes) {
    if (regime.start > t) break;
    vol = regime.vol;
  }
  return vol;
}

PriceSeries synth_prices(const SynthSpec& spec) {
  if (spec.length < 2) {
    throw Error(ErrorCode::InvalidSpec, "length must be at least 2");
  }
  if (!(spec.initial_price > 0.0) || !std::isfinite(spec.initial_price)) {
    throw Error(ErrorCode::InvalidSpec, "initial price must be positive");
  }
  if (!(spec.vol >= 0.0) || !std::isfinite(spec.drift)) {
    throw Error(ErrorCode::InvalidSpec, "vol must be nonnegative, drift finite");
  }
  for (std::size_t k = 0; k < spec.regimes.size(); ++k) {
    const auto& regime = spec.regimes[k];
    if (regime.start >= spec.length) {
      throw Error(ErrorCode::InvalidSpec, "regime start beyond series length");
    }
    if (k > 0 && regime.start <= spec.regimes[k - 1].start) {
      throw Error(ErrorCode::InvalidSpec,
                  "regime starts must be strictly increasing");
    }
    if (!(regime.vol >= 0.0) || !std::isfinite(regime.vol)) {
      throw Error(ErrorCode::InvalidSpec, "regime vol must be nonnegative");
    }
  }
  if (!spec.start_date.ok()) {
    throw Error(ErrorCode::InvalidSpec, "start date is not a valid date");
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> prices(spec.length);
  double log_growth = 0.0;
  prices[0] = spec.initial_price;
  for (std::size_t t = 1; t < spec.length; ++t) {
    const double vol = regime_vol_at(spec, t);
    const double z = normal(rng);
    log_growth += spec.drift - 0.5 * vol * vol + vol * z;
    prices[t] = spec.initial_price * std::exp(log_growth);
  }

  using std::chrono::sys_days;
  using std::chrono::weekday;
  std::vector<Date> dates(spec.length);
  sys_days day{spec.start_date};
  for (std::size_t t = 0; t < spec.length; ++t) {
    while (weekday{day} == std::chrono::Saturday ||
           weekday{day} == std::chrono::Sunday) {
      day += std::chrono::days{1};
    }
    dates[t] = Date{day};
    day += std::chrono::days{1};
  }
  return PriceSeries(std::move(prices), std::move(dates));
}

}  // namespace ftvol
