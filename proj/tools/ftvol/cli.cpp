#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftvol/ftvol.hpp"

namespace ftvol::cli {
namespace {

using nlohmann::ordered_json;

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trimmed(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::BadArgument, "cannot parse " + what + " '" + text + "'");
  }
  return value;
}

ordered_json config_json(const RunConfig& c) {
  ordered_json horizons = ordered_json::array();
  for (const auto& h : c.horizons) horizons.push_back({{"name", h.name}, {"T", h.days}});
  ordered_json regimes = ordered_json::array();
  for (const auto& r : c.synth.regimes) regimes.push_back({{"start", r.start}, {"vol", r.vol}});
  return {
      {"command", c.command},
      {"input", c.input.string()},
      {"date_format", c.date_format == DateFormat::Iso ? "iso" : "dmy"},
      {"return_kind", std::string(to_string(c.kind))},
      {"shape", std::string(to_string(c.shape))},
      {"normalization", std::string(to_string(c.normalization))},
      {"horizon", c.horizon},
      {"horizons", horizons},
      {"std_centered", c.std_options.centered},
      {"std_estimator", std::string(to_string(c.std_options.estimator))},
      {"lag", c.lag},
      {"annualize", c.annualize},
      {"output_dir", c.output_dir.string()},
      {"synth",
       {{"days", c.synth.length},
        {"drift", c.synth.drift},
        {"vol", c.synth.vol},
        {"initial", c.synth.initial_price},
        {"seed", c.synth.seed},
        {"regimes", regimes},
        {"start_date", format_date(c.synth.start_date)}}},
  };
}

class OutputWriter {
 public:
  explicit OutputWriter(const RunConfig& config) : config_(config) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
      throw Error(ErrorCode::Io, "cannot create output directory " +
                                     config.output_dir.string());
    }
  }

  // Writes `name` into the output directory together with `name.meta.json`.
  void write(const std::filesystem::path& path, const std::string& content,
             const std::optional<io::SeriesMetadata>& series = std::nullopt) {
    const auto target = path.is_absolute() ? path : config_.output_dir / path;
    io::write_file_atomic(target, content);
    ordered_json meta;
    meta["file"] = target.filename().string();
    meta["series"] = series ? ordered_json::parse(io::metadata_json(*series))
                            : ordered_json(nullptr);
    meta["config"] = config_json(config_);
    auto meta_path = target;
    meta_path += ".meta.json";
    io::write_file_atomic(meta_path, meta.dump(2) + "\n");
    written_.push_back(target);
  }

  const std::vector<std::filesystem::path>& written() const { return written_; }

 private:
  const RunConfig& config_;
  std::vector<std::filesystem::path> written_;
};

PriceSeries load_input(const RunConfig& config) {
  if (config.input.empty()) {
    throw Error(ErrorCode::BadArgument, "missing --input price file");
  }
  std::ifstream in(config.input, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + config.input.string());
  return load_prices(in, CsvOptions{config.date_format, config.date_column,
                                    config.close_column});
}

io::SeriesMetadata ft_metadata(const RunConfig& c, int horizon) {
  io::SeriesMetadata m;
  m.method = VolMethod::FT;
  m.horizon = horizon;
  m.shape = c.shape;
  m.normalization = c.normalization;
  m.annualized = c.annualize;
  m.return_kind = c.kind;
  return m;
}

io::SeriesMetadata std_metadata(const RunConfig& c, int horizon) {
  io::SeriesMetadata m;
  m.method = VolMethod::STD;
  m.horizon = horizon;
  m.estimator = c.std_options.estimator;
  m.centered = c.std_options.centered;
  m.annualized = c.annualize;
  m.return_kind = c.kind;
  return m;
}

void cmd_returns(const RunConfig& config, std::ostream& out) {
  const auto prices = load_input(config);
  const auto returns = compute_returns(prices, config.kind);
  OutputWriter writer(config);
  writer.write("returns.csv", io::returns_csv(returns));
  out << "wrote " << returns.size() << " " << to_string(config.kind)
      << " returns to " << writer.written().front().string() << "\n";
}

void cmd_ftvol(const RunConfig& config, std::ostream& out) {
  const auto prices = load_input(config);
  const auto returns = compute_returns(prices, config.kind);
  const auto decomposition =
      ft_volatility(returns, config.horizon, config.shape, config.normalization);

  OutputWriter writer(config);
  const std::string stem = "ftvol_T" + std::to_string(config.horizon);
  const auto meta = ft_metadata(config, config.horizon);
  const std::pair<FtComponent, const char*> parts[] = {
      {FtComponent::Deviation, "deviation"},
      {FtComponent::Baseline, "baseline"},
      {FtComponent::Envelope, "envelope"}};
  for (const auto& [component, name] : parts) {
    auto series = to_series(decomposition, component);
    if (config.annualize) series = annualize(series);
    writer.write(stem + "_" + name + ".csv",
                 io::volatility_csv(series, returns.dates()), meta);
  }
  writer.write(stem + "_components.csv", io::components_csv(decomposition), meta);
  out << "FT volatility, T=" << config.horizon << ", "
      << decomposition.partition().node_count() << " nodes, "
      << decomposition.covered() << " of " << returns.size()
      << " days covered; wrote " << writer.written().size() << " files to "
      << config.output_dir.string() << "\n";
}

void cmd_compare(const RunConfig& config, std::ostream& out) {
  const auto prices = load_input(config);
  const auto returns = compute_returns(prices, config.kind);
  CompareOptions options;
  options.shape = config.shape;
  options.normalization = config.normalization;
  options.std_options = config.std_options;
  options.lag = config.lag;
  options.annualize = config.annualize;
  const auto report = compare(returns, config.horizons, options,
                              describe_input(prices, config.kind));

  OutputWriter writer(config);
  writer.write("report.json", io::report_json(report));
  for (const auto& h : report.horizons) {
    const auto& name = h.horizon.name;
    const auto ftm = ft_metadata(config, h.horizon.days);
    const auto stdm = std_metadata(config, h.horizon.days);
    writer.write(name + "_ft.csv", io::volatility_csv(h.ft, returns.dates()), ftm);
    writer.write(name + "_std.csv", io::volatility_csv(h.std, returns.dates()), stdm);
    writer.write(name + "_pointwise.csv", io::pointwise_csv(h, returns.dates()));
    writer.write(name + "_scatter.csv", io::scatter_csv(h.pairs));
    writer.write(name + "_adjusted_returns.csv", io::adjusted_returns_csv(returns, h));
    out << name << " (T=" << h.horizon.days << "): nodes=" << h.nodes
        << " pairs=" << h.pairs.size() << " pearson="
        << (h.pearson ? io::format_number(*h.pearson) : "null (" + h.pearson_error + ")")
        << "\n";
  }
}

void cmd_synth(const RunConfig& config, std::ostream& out) {
  const auto prices = synth_prices(config.synth);
  OutputWriter writer(config);
  const auto path = config.output_file.empty() ? std::filesystem::path("synth_prices.csv")
                                               : config.output_file;
  writer.write(path, io::prices_csv(prices));
  out << "wrote " << prices.size() << " synthetic prices to "
      << writer.written().front().string() << "\n";
}

}  // namespace

std::vector<Horizon> parse_horizons(const std::string& text) {
  std::vector<Horizon> horizons;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    Horizon h;
    if (colon == std::string::npos) {
      h.days = parse_number<int>(item, "horizon");
      h.name = "T" + item;
    } else {
      h.name = trimmed(item.substr(0, colon));
      h.days = parse_number<int>(trimmed(item.substr(colon + 1)), "horizon");
    }
    if (h.name.empty() || h.days < 2) {
      throw Error(ErrorCode::BadHorizon,
                  "horizon '" + item + "' needs a name and T >= 2");
    }
    horizons.push_back(std::move(h));
  }
  if (horizons.empty()) throw Error(ErrorCode::BadHorizon, "no horizons given");
  return horizons;
}

std::vector<Regime> parse_regimes(const std::string& text) {
  std::vector<Regime> regimes;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::InvalidSpec, "regime '" + item + "' is not start:vol");
    }
    regimes.push_back({parse_number<std::size_t>(trimmed(item.substr(0, colon)), "regime start"),
                       parse_number<double>(trimmed(item.substr(colon + 1)), "regime vol")});
  }
  return regimes;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig config;
  CLI::App app{"Historical volatility via the discrete fuzzy transform", "ftvol"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value configuration file; flags override it");

  std::string input, kind = "simple", shape = "hat", normalization = "exact",
                     date_format = "iso";
  bool trailing = false, sample = false;
  std::string output_dir = ".";
  app.add_option("-i,--input", input, "CSV with date and close columns");
  app.add_option("--date-format", date_format, "iso (YYYY-MM-DD) or dmy (DD-MM-YYYY, DD/MM/YYYY, DD-Mon-YYYY)")
      ->check(CLI::IsMember({"iso", "dmy"}));
  app.add_option("--date-column", config.date_column, "Name of the date column");
  app.add_option("--close-column", config.close_column, "Name of the close-price column");
  app.add_option("--kind", kind, "Return kind")->check(CLI::IsMember({"simple", "log"}));
  app.add_option("--shape", shape, "Basic function shape")->check(CLI::IsMember({"hat", "z"}));
  app.add_option("--normalization", normalization, "Component normalization")
      ->check(CLI::IsMember({"exact", "paper"}));
  app.add_flag("--annualize", config.annualize, "Scale volatility by sqrt(252)");
  app.add_flag("--trailing", trailing, "Trailing instead of centered STD window");
  app.add_flag("--sample", sample, "STD with N-1 instead of N");
  app.add_option("-o,--output-dir", output_dir, "Directory for output files")
      ->envname(kOutputDirEnv);

  auto* returns_cmd = app.add_subcommand("returns", "Write daily returns");
  auto* ftvol_cmd = app.add_subcommand("ftvol", "Write the FT volatility decomposition for one horizon");
  ftvol_cmd->add_option("--horizon", config.horizon, "Node spacing T in trading days");
  auto* compare_cmd = app.add_subcommand("compare", "Compare FT and STD volatility over several horizons");
  std::string horizons = "yearly:252,monthly:21,weekly:5";
  compare_cmd->add_option("--horizons", horizons, "name:T list");
  compare_cmd->add_option("--lag", config.lag, "Pair ft[t] with std[t - lag]");
  auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded GBM price path");
  std::string regimes, start_date = "2000-01-03", output_file;
  synth_cmd->add_option("--days", config.synth.length, "Number of prices");
  synth_cmd->add_option("--drift", config.synth.drift, "Per-day log drift");
  synth_cmd->add_option("--vol", config.synth.vol, "Per-day volatility");
  synth_cmd->add_option("--initial", config.synth.initial_price, "Initial price");
  synth_cmd->add_option("--seed", config.synth.seed, "RNG seed");
  synth_cmd->add_option("--regimes", regimes, "start:vol list switching volatility");
  synth_cmd->add_option("--start-date", start_date, "First trading date (ISO)");
  synth_cmd->add_option("--output", output_file, "Output CSV (default <output-dir>/synth_prices.csv)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  try {
    config.input = input;
    config.output_dir = output_dir;
    config.output_file = output_file;
    config.kind = kind == "log" ? ReturnKind::Log : ReturnKind::Simple;
    config.shape = shape == "z" ? Shape::ZShaped : Shape::Hat;
    config.normalization =
        normalization == "paper" ? Normalization::Paper : Normalization::Exact;
    config.date_format = date_format == "dmy" ? DateFormat::DayFirst : DateFormat::Iso;
    config.std_options.centered = !trailing;
    config.std_options.estimator = sample ? StdEstimator::Sample : StdEstimator::Population;
    config.horizons = parse_horizons(horizons);
    config.synth.regimes = parse_regimes(regimes);
    const auto start = parse_date(start_date, DateFormat::Iso);
    if (!start) throw Error(ErrorCode::InvalidSpec, "bad --start-date " + start_date);
    config.synth.start_date = *start;

    if (returns_cmd->parsed()) {
      config.command = "returns";
      cmd_returns(config, out);
    } else if (ftvol_cmd->parsed()) {
      config.command = "ftvol";
      cmd_ftvol(config, out);
    } else if (compare_cmd->parsed()) {
      config.command = "compare";
      cmd_compare(config, out);
    } else if (synth_cmd->parsed()) {
      config.command = "synth";
      cmd_synth(config, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_io() ? kIoError : kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kSuccess;
}

}  // namespace ftvol::cli
