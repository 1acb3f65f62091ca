#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nppe/cli.hpp"
#include "nppe/matrix_io.hpp"

namespace fs = std::filesystem;
using namespace nppe;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome nppe_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const fs::path& p) {
  const std::string text = slurp(p);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nppe_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

double max_abs_up_to_column_sign(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Index r = 0; r < a.rows(); ++r) {
    worst = std::max(worst, std::min((a.row(r) - b.row(r)).cwiseAbs().maxCoeff(),
                                     (a.row(r) + b.row(r)).cwiseAbs().maxCoeff()));
  }
  return worst;
}

}  // namespace

TEST_F(CliTest, GenerateWritesAlignedFilesDeterministically) {
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "1000", "--seed", "7", "--out-dir", path("a")}).code, 0);
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "1000", "--seed", "7", "--out-dir", path("b")}).code, 0);
  EXPECT_EQ(line_count(path("a/X.csv")), 1000u);
  EXPECT_EQ(line_count(path("a/Z.csv")), 1000u);
  EXPECT_EQ(slurp(path("a/X.csv")), slurp(path("b/X.csv")));
  EXPECT_EQ(slurp(path("a/Z.csv")), slurp(path("b/Z.csv")));

  const auto manifest = nlohmann::json::parse(slurp(path("a/manifest.json")));
  EXPECT_EQ(manifest["format_version"], cli::kManifestVersion);
  EXPECT_EQ(manifest["config"]["seed"], 7);
  EXPECT_EQ(manifest["config"]["manifold"], "swissroll");
}

TEST_F(CliTest, GenerateBinaryFormat) {
  ASSERT_EQ(nppe_cli({"generate", "gaussian", "--n", "50", "--format", "pemb", "--out-dir", path("g")}).code, 0);
  const DataMatrix x = load_matrix(path("g/X.pemb"));
  EXPECT_EQ(x.rows(), 3);
  EXPECT_EQ(x.cols(), 50);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(nppe_cli({"generate", "swisshole", "--n", "0", "--out-dir", path("z")}).code, cli::kExitUsage);
  EXPECT_EQ(nppe_cli({"generate", "torus", "--out-dir", path("z")}).code, cli::kExitUsage);
  EXPECT_EQ(nppe_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(nppe_cli({"fit", "nppe", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(nppe_cli({"--help"}).code, 0);
}

TEST_F(CliTest, FitWritesModelAndLogsConstraint) {
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "1000", "--seed", "3", "--out-dir", path("d")}).code, 0);
  const auto r = nppe_cli({"fit", "nppe", "--in", path("d/X.csv"), "--k", "10", "--p", "2", "--m", "2",
                           "--out-dir", path("fit")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("constraint error"), std::string::npos);
  EXPECT_NE(r.out.find("(ok)"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("fit/model.json")));
  EXPECT_EQ(line_count(path("fit/embedding.csv")), 1000u);
  EXPECT_EQ(line_count(path("fit/eigenvalues.csv")), 2u);
  const auto manifest = nlohmann::json::parse(slurp(path("fit/manifest.json")));
  EXPECT_EQ(manifest["config"]["k"], 10);
  EXPECT_EQ(manifest["config"]["mode"], "hadamard");
  EXPECT_EQ(manifest["config"]["center"], true);
}

TEST_F(CliTest, FitDefaultsResolveInManifest) {
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "500", "--out-dir", path("d")}).code, 0);
  ASSERT_EQ(nppe_cli({"fit", "snppe", "--in", path("d/X.csv"), "--out-dir", path("fit")}).code, 0);
  const auto manifest = nlohmann::json::parse(slurp(path("fit/manifest.json")));
  EXPECT_EQ(manifest["config"]["k"], 5);
  EXPECT_EQ(manifest["config"]["k_default"], true);
  EXPECT_EQ(manifest["config"]["p"], 2);
  EXPECT_EQ(manifest["config"]["m"], 2);
  EXPECT_EQ(nppe_cli({"fit", "snppe", "--mode", "kronecker", "--in", path("d/X.csv"), "--out-dir", path("f2")}).code,
            cli::kExitUsage);
}

TEST_F(CliTest, NppDegreeOneEquivalence) {
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "300", "--seed", "4", "--out-dir", path("d")}).code, 0);
  ASSERT_EQ(nppe_cli({"fit", "npp", "--in", path("d/X.csv"), "--k", "8", "--out-dir", path("npp")}).code, 0);
  ASSERT_EQ(nppe_cli({"fit", "nppe", "--in", path("d/X.csv"), "--k", "8", "--p", "1", "--no-center",
                      "--out-dir", path("p1")})
                .code,
            0);
  const Eigen::MatrixXd a = load_matrix(path("npp/embedding.csv"));
  const Eigen::MatrixXd b = load_matrix(path("p1/embedding.csv"));
  EXPECT_LE(max_abs_up_to_column_sign(a, b), 1e-6);
}

TEST_F(CliTest, ErrorTaxonomyExitCodes) {
  const auto missing = nppe_cli({"fit", "nppe", "--in", path("nope.csv"), "--out-dir", path("x")});
  EXPECT_EQ(missing.code, cli::kExitData);

  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "300", "--seed", "2", "--out-dir", path("d")}).code, 0);
  const auto degenerate = nppe_cli({"fit", "nppe", "--in", path("d/X.csv"), "--k", "8", "--p", "3", "--mode",
                                    "kronecker", "--out-dir", path("x")});
  EXPECT_EQ(degenerate.code, cli::kExitNumerical);
  EXPECT_NE(degenerate.err.find("raise the ridge"), std::string::npos);
  EXPECT_NE(missing.code, degenerate.code);
}

TEST_F(CliTest, TransformReproducesFitAndMapsHeldOut) {
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "1000", "--seed", "5", "--out-dir", path("train")}).code, 0);
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "1000", "--seed", "6", "--out-dir", path("test")}).code, 0);
  ASSERT_EQ(nppe_cli({"fit", "nppe", "--in", path("train/X.csv"), "--k", "10", "--out-dir", path("fit")}).code, 0);
  ASSERT_EQ(nppe_cli({"transform", "--model", path("fit/model.json"), "--in", path("train/X.csv"), "--out",
                      path("self.csv")})
                .code,
            0);
  const Eigen::MatrixXd fitted = load_matrix(path("fit/embedding.csv"));
  const Eigen::MatrixXd mapped = load_matrix(path("self.csv"));
  EXPECT_LE((fitted - mapped).cwiseAbs().maxCoeff(), 1e-8);

  ASSERT_EQ(nppe_cli({"transform", "--model", path("fit/model.json"), "--in", path("test/X.csv"), "--out",
                      path("held.csv")})
                .code,
            0);
  const Eigen::MatrixXd held = load_matrix(path("held.csv"));
  EXPECT_EQ(held.cols(), 1000);
  EXPECT_EQ(held.rows(), 2);
  EXPECT_TRUE(fs::exists(path("held.csv.manifest.json")));

  const auto mismatch = nppe_cli({"transform", "--model", path("fit/model.json"), "--in",
                                  path("test/Z.csv"), "--out", path("bad.csv")});
  EXPECT_EQ(mismatch.code, cli::kExitData);
  EXPECT_NE(mismatch.err.find("n = 3"), std::string::npos);
  EXPECT_NE(mismatch.err.find("n = 2"), std::string::npos);
}

TEST_F(CliTest, EvalRowsAndVariants) {
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "200", "--out-dir", path("d")}).code, 0);
  auto r = nppe_cli({"eval", "--truth", path("d/Z.csv"), "--embedding", "self=" + path("d/Z.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("self,distance,0\n"), std::string::npos) << r.out;

  r = nppe_cli({"eval", "--truth", path("d/Z.csv"), "--embedding", "self=" + path("d/Z.csv"), "--variant",
                "entries", "--out", path("m.csv")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(slurp(path("m.csv")).find("self,entries,0\n"), std::string::npos);

  r = nppe_cli({"eval", "--truth", path("d/Z.csv"), "--embedding", path("d/X.csv"), "--variant", "entries"});
  EXPECT_EQ(r.code, cli::kExitData);
}

TEST_F(CliTest, EvalFourMethodsNppeLowest) {
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "1000", "--seed", "1", "--out-dir", path("d")}).code, 0);
  std::vector<std::string> args{"eval", "--truth", path("d/Z.csv")};
  for (const std::string m : {"nppe", "npp", "onpp", "lle"}) {
    ASSERT_EQ(nppe_cli({"fit", m, "--in", path("d/X.csv"), "--k", "10", "--out-dir", path(m)}).code, 0);
    args.push_back("--embedding");
    args.push_back(m + "=" + path(m + "/embedding.csv"));
  }
  args.push_back("--out");
  args.push_back(path("cmp.csv"));
  ASSERT_EQ(nppe_cli(args).code, 0);

  std::istringstream table(slurp(path("cmp.csv")));
  std::string line;
  std::getline(table, line);
  std::map<std::string, double> rho;
  while (std::getline(table, line)) {
    const auto a = line.find(',');
    const auto b = line.rfind(',');
    rho[line.substr(0, a)] = std::stod(line.substr(b + 1));
  }
  ASSERT_EQ(rho.size(), 4u);
  EXPECT_LT(rho["nppe"], rho["npp"]);
  EXPECT_LT(rho["nppe"], rho["onpp"]);
  EXPECT_LT(rho["nppe"], rho["lle"]);
}

TEST_F(CliTest, BenchSweepAndThreadGuard) {
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "500", "--seed", "1", "--out-dir", path("train")}).code, 0);
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "10000", "--seed", "2", "--out-dir", path("test")}).code, 0);
  ASSERT_EQ(nppe_cli({"fit", "nppe", "--in", path("train/X.csv"), "--out-dir", path("fit")}).code, 0);
  EXPECT_EQ(nppe_cli({"bench", "--model", path("fit/model.json"), "--in", path("test/X.csv"), "--out",
                      path("t.csv"), "--threads", "4"})
                .code,
            cli::kExitUsage);

  const auto r = nppe_cli({"bench", "--model", path("fit/model.json"), "--in", path("test/X.csv"), "--out",
                           path("t.csv"), "--step", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(path("t.csv")), 11u);
  EXPECT_NE(r.out.find("linear fit R^2"), std::string::npos);
}

TEST_F(CliTest, PlotSvg) {
  ASSERT_EQ(nppe_cli({"generate", "swissroll", "--n", "300", "--out-dir", path("d")}).code, 0);
  ASSERT_EQ(nppe_cli({"plot", "--in", path("d/Z.csv"), "--color", path("d/Z.csv"), "--color-column", "0",
                      "--out", path("z.svg")})
                .code,
            0);
  const std::string svg = slurp(path("z.svg"));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t markers = 0;
  for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++markers;
  EXPECT_EQ(markers, 300u);

  EXPECT_EQ(nppe_cli({"plot", "--in", path("d/X.csv"), "--out", path("x.svg")}).code, cli::kExitUsage);
}

TEST(SvgRender, DeterministicPalette) {
  Eigen::MatrixXd p(2, 3);
  p << 0, 1, 2, 0, 1, 0;
  Eigen::VectorXd c(3);
  c << 0, 0.5, 1;
  const std::string a = cli::render_svg(p, &c);
  EXPECT_EQ(a, cli::render_svg(p, &c));
  EXPECT_NE(a.find("#440154"), std::string::npos);
  EXPECT_NE(a.find("#fde725"), std::string::npos);
}

TEST_F(CliTest, PipelineTableAndOutputs) {
  const auto r = nppe_cli({"pipeline", "--n-train", "400", "--n-test", "200", "--seed", "3", "--k", "8",
                           "--out-dir", path("run")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("method,train_rho,test_rho\n", 0), 0u);
  EXPECT_EQ(line_count(path("run/comparison.csv")), 5u);
  EXPECT_TRUE(fs::exists(path("run/nppe_test.csv")));
  EXPECT_FALSE(fs::exists(path("run/lle_test.csv")));
  const auto manifest = nlohmann::json::parse(slurp(path("run/manifest.json")));
  EXPECT_EQ(manifest["config"]["train_indices"].size(), 400u);
  EXPECT_EQ(manifest["config"]["test_indices"].size(), 200u);
}
