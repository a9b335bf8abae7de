#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "ftvol/error.hpp"
#include "ftvol/io.hpp"
#include "ftvol/timeseries.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace ftvol;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ftvol_cli_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "ftvol");
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  std::string synth(std::size_t days, std::uint64_t seed = 7) {
    const auto file = path("prices_" + std::to_string(days) + ".csv");
    EXPECT_EQ(run({"synth", "--days", std::to_string(days), "--seed",
                   std::to_string(seed), "--output", file}),
              0)
        << err_.str();
    return file;
  }

  static std::size_t count_lines(const std::string& file) {
    std::ifstream in(file);
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

}  // namespace

TEST(CliParsing, Horizons) {
  const auto h = cli::parse_horizons("yearly:252, monthly:21,5");
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h[0].name, "yearly");
  EXPECT_EQ(h[1].days, 21);
  EXPECT_EQ(h[2].name, "T5");
  EXPECT_THROW(cli::parse_horizons("x:1"), Error);
  EXPECT_THROW(cli::parse_horizons("x:abc"), Error);
  EXPECT_THROW(cli::parse_horizons(""), Error);
}

TEST(CliParsing, Regimes) {
  const auto r = cli::parse_regimes("0:0.005,1000:0.03");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1].start, 1000u);
  EXPECT_DOUBLE_EQ(r[1].vol, 0.03);
  EXPECT_TRUE(cli::parse_regimes("").empty());
  EXPECT_THROW(cli::parse_regimes("10"), Error);
}

TEST_F(CliTest, ReturnsRowCount) {
  const auto prices = synth(4040);
  ASSERT_EQ(run({"returns", "--input", prices, "--kind", "log", "-o", dir_.string()}), 0)
      << err_.str();
  EXPECT_EQ(count_lines(path("returns.csv")), 4040u);  // header + 4039 rows
  const auto meta = nlohmann::json::parse(io::read_file(path("returns.csv.meta.json")));
  EXPECT_EQ(meta["config"]["return_kind"], "log");
  EXPECT_EQ(meta["config"]["command"], "returns");
}

TEST_F(CliTest, ReturnsTwoRows) {
  write("two.csv", "date,close\n2000-09-20,100\n2000-09-21,110\n");
  ASSERT_EQ(run({"returns", "-i", path("two.csv"), "--kind", "simple", "-o", dir_.string()}), 0);
  EXPECT_EQ(io::read_file(path("returns.csv")), "index,date,return\n1,2000-09-21,0.1\n");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"returns", "-o", dir_.string()}), 2);
  EXPECT_NE(err_.str().find("--input"), std::string::npos);
  EXPECT_EQ(run({"returns", "-i", path("absent.csv"), "-o", dir_.string()}), 1);
  write("empty.csv", "");
  EXPECT_EQ(run({"compare", "-i", path("empty.csv"), "-o", dir_.string()}), 2);
  EXPECT_EQ(run({"bogus"}), 2);
  EXPECT_EQ(run({"--help"}), 0);
  write("zero.csv", "date,close\n2000-09-20,0\n2000-09-21,1\n");
  EXPECT_EQ(run({"returns", "-i", path("zero.csv"), "-o", dir_.string()}), 2);
  EXPECT_EQ(run({"compare", "-i", path("zero.csv"), "--kind", "cubic"}), 2);
}

TEST_F(CliTest, FtvolSixteenNodes) {
  const auto prices = synth(4041);  // 4040 returns
  ASSERT_EQ(run({"ftvol", "-i", prices, "--horizon", "252", "--shape", "hat", "-o",
                 dir_.string()}),
            0)
      << err_.str();
  EXPECT_EQ(count_lines(path("ftvol_T252_components.csv")), 17u);
  EXPECT_EQ(count_lines(path("ftvol_T252_deviation.csv")), 4041u);
  for (const char* f : {"deviation", "baseline", "envelope", "components"}) {
    EXPECT_TRUE(fs::exists(path(std::string("ftvol_T252_") + f + ".csv.meta.json")));
  }
  const auto meta =
      nlohmann::json::parse(io::read_file(path("ftvol_T252_deviation.csv.meta.json")));
  EXPECT_EQ(meta["series"]["method"], "FT");
  EXPECT_EQ(meta["series"]["horizon"], 252);
  EXPECT_EQ(meta["series"]["shape"], "hat");
  EXPECT_EQ(meta["series"]["normalization"], "exact");

  EXPECT_EQ(run({"ftvol", "-i", prices, "--horizon", "5000", "-o", dir_.string()}), 2);
  EXPECT_NE(err_.str().find("SeriesTooShort"), std::string::npos);
}

TEST_F(CliTest, NormalizationsDifferOnlyNearBoundaries) {
  const auto prices = synth(400);
  const auto exact_dir = (dir_ / "exact").string();
  const auto paper_dir = (dir_ / "paper").string();
  ASSERT_EQ(run({"ftvol", "-i", prices, "--horizon", "21", "-o", exact_dir}), 0);
  ASSERT_EQ(run({"ftvol", "-i", prices, "--horizon", "21", "--normalization", "paper",
                 "-o", paper_dir}),
            0);
  std::istringstream a(io::read_file(exact_dir + "/ftvol_T21_deviation.csv"));
  std::istringstream b(io::read_file(paper_dir + "/ftvol_T21_deviation.csv"));
  std::string la, lb;
  std::getline(a, la);
  std::getline(b, lb);
  // 399 returns -> 19 nodes at positions 0..378 (indices 1..379)
  std::size_t differing = 0;
  while (std::getline(a, la) && std::getline(b, lb)) {
    if (la == lb) continue;
    ++differing;
    const auto index = std::stoul(la.substr(0, la.find(',')));
    const auto position = index - 1;
    EXPECT_TRUE(position < 21 || (position > 378 - 21 && position <= 378)) << la;
  }
  EXPECT_GT(differing, 0u);
}

TEST_F(CliTest, CompareReport) {
  const auto prices = synth(4041);
  ASSERT_EQ(run({"compare", "-i", prices, "-o", dir_.string()}), 0) << err_.str();
  const auto report = nlohmann::json::parse(io::read_file(path("report.json")));
  ASSERT_EQ(report["horizons"].size(), 3u);
  EXPECT_EQ(report["horizons"][0]["T"], 252);
  EXPECT_EQ(report["horizons"][1]["T"], 21);
  EXPECT_EQ(report["horizons"][2]["T"], 5);
  EXPECT_EQ(report["horizons"][0]["nodes"], 16);
  EXPECT_EQ(report["horizons"][1]["nodes"], 192);
  EXPECT_EQ(report["horizons"][2]["nodes"], 808);
  EXPECT_EQ(report["input"]["rows"], 4041);
  for (const char* name : {"yearly", "monthly", "weekly"}) {
    for (const char* kind : {"_ft.csv", "_std.csv", "_pointwise.csv", "_scatter.csv",
                             "_adjusted_returns.csv"}) {
      const auto file = path(std::string(name) + kind);
      EXPECT_TRUE(fs::exists(file)) << file;
      EXPECT_TRUE(fs::exists(file + ".meta.json")) << file;
    }
  }
  EXPECT_TRUE(fs::exists(path("report.json.meta.json")));
}

TEST_F(CliTest, SynthDeterministicAndByteIdentical) {
  ASSERT_EQ(run({"synth", "--days", "2000", "--seed", "7", "--output", path("a.csv")}), 0);
  ASSERT_EQ(run({"synth", "--days", "2000", "--seed", "7", "--output", path("b.csv")}), 0);
  EXPECT_EQ(io::read_file(path("a.csv")), io::read_file(path("b.csv")));
  ASSERT_EQ(run({"synth", "--days", "2000", "--seed", "8", "--output", path("c.csv")}), 0);
  EXPECT_NE(io::read_file(path("a.csv")), io::read_file(path("c.csv")));
}

TEST_F(CliTest, SynthZeroVolAndRegimes) {
  ASSERT_EQ(run({"synth", "--days", "50", "--vol", "0", "--output", path("flat.csv")}), 0);
  std::ifstream flat_in(path("flat.csv"));
  const auto flat = load_prices(flat_in);
  for (double p : flat.prices()) EXPECT_EQ(p, 100.0);

  ASSERT_EQ(run({"synth", "--days", "2000", "--regimes", "0:0.005,1000:0.03", "--output",
                 path("reg.csv")}),
            0);
  std::ifstream reg_in(path("reg.csv"));
  const auto r = simple_returns(load_prices(reg_in)).values();
  const std::vector<double> first(r.begin(), r.begin() + 999);
  const std::vector<double> second(r.begin() + 999, r.end());
  EXPECT_GT(oracle::population_std(second), oracle::population_std(first));

  EXPECT_EQ(run({"synth", "--days", "100", "--regimes", "50:0.1,20:0.2", "--output",
                 path("bad.csv")}),
            2);
}

TEST_F(CliTest, OutputDirFromEnvironmentAndConfigFile) {
  const auto prices = synth(300);
  const auto env_dir = dir_ / "from_env";
  ::setenv(cli::kOutputDirEnv, env_dir.c_str(), 1);
  const int code = run({"returns", "-i", prices});
  ::unsetenv(cli::kOutputDirEnv);
  ASSERT_EQ(code, 0) << err_.str();
  EXPECT_TRUE(fs::exists(env_dir / "returns.csv"));

  write("run.ini", "kind = log\nshape = z\ninput = " + prices + "\n");
  const auto cfg_dir = (dir_ / "from_cfg").string();
  ASSERT_EQ(run({"--config", path("run.ini"), "ftvol", "--horizon", "21", "-o", cfg_dir}), 0)
      << err_.str();
  auto meta = nlohmann::json::parse(io::read_file(cfg_dir + "/ftvol_T21_deviation.csv.meta.json"));
  EXPECT_EQ(meta["config"]["return_kind"], "log");
  EXPECT_EQ(meta["config"]["shape"], "z");

  // flags override the file
  ASSERT_EQ(run({"--config", path("run.ini"), "ftvol", "--horizon", "21", "--kind", "simple",
                 "-o", cfg_dir}),
            0);
  meta = nlohmann::json::parse(io::read_file(cfg_dir + "/ftvol_T21_deviation.csv.meta.json"));
  EXPECT_EQ(meta["config"]["return_kind"], "simple");
}

TEST_F(CliTest, CommandsAreDeterministic) {
  const auto prices = synth(700);
  const auto a = (dir_ / "a").string();
  const auto b = (dir_ / "b").string();
  ASSERT_EQ(run({"compare", "-i", prices, "--horizons", "m:21,w:5", "-o", a}), 0);
  ASSERT_EQ(run({"compare", "-i", prices, "--horizons", "m:21,w:5", "-o", b}), 0);
  for (const char* f : {"report.json", "m_pointwise.csv", "w_scatter.csv"}) {
    EXPECT_EQ(io::read_file(a + "/" + f), io::read_file(b + "/" + f)) << f;
  }
}
