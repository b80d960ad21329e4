#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "qspf/io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int code = qspf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() /
           ("qspf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_target(const std::string& name, std::vector<double> coeffs) const
  {
    const std::string p = path(name);
    std::ofstream(p) << json{{"degree_half", coeffs.size() - 1}, {"coeffs", coeffs}}.dump();
    return p;
  }

  fs::path dir_;
};

std::vector<std::string> csv_rows(const std::string& file)
{
  std::ifstream in(file);
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

}  // namespace

TEST_F(CliTest, SolveHcRandom)
{
  const Result r = run({"solve", "--method", "hc", "--target", "random", "--degree", "100", "--inf-norm", "0.5",
                        "--seed", "7", "--tol", "1e-12"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LE(j.at("residual").get<double>(), 1e-12);
  EXPECT_EQ(j.at("psi").size(), 101u);
  EXPECT_EQ(j.at("method"), "hc");
  EXPECT_EQ(j.at("iterations"), 0);
  EXPECT_GT(j.at("wall_ms").get<double>(), 0.0);
  EXPECT_TRUE(j.at("warnings").empty());
  EXPECT_NEAR(j.at("meta").at("eta").get<double>(), 0.5, 1e-10);
}

TEST_F(CliTest, SolveFromFileConstant)
{
  const std::string t = write_target("t.json", {0.6});
  for (const char* method : {"hc", "ffpi", "fpi_direct", "rhw_oracle"}) {
    const Result r = run({"solve", "--method", method, "--target", "file", "--input", t});
    ASSERT_EQ(r.code, 0) << method << ": " << r.err;
    const json j = json::parse(r.out);
    ASSERT_EQ(j.at("psi").size(), 1u);
    EXPECT_NEAR(j.at("psi")[0].get<double>(), 0.6435011087932844, 1e-12) << method;
  }
}

TEST_F(CliTest, SolveFfpiHamsimWarnsOrFails)
{
  const Result r = run({"solve", "--method", "ffpi", "--target", "hamsim", "--tau", "100", "--tol", "1e-12"});
  const std::string text = r.code == 0 ? r.out : r.err;
  EXPECT_NE(text.find("0.861"), std::string::npos) << text;
  if (r.code != 0) {
    EXPECT_EQ(r.code, 1);
    const json e = json::parse(r.err);
    EXPECT_TRUE(e.contains("error"));
  }
}

TEST_F(CliTest, SolveIsReproducible)
{
  const std::vector<std::string> args{"solve", "--method", "ffpi", "--degree", "40", "--seed", "3"};
  const json a = json::parse(run(args).out), b = json::parse(run(args).out);
  EXPECT_EQ(a.at("psi"), b.at("psi"));
  EXPECT_EQ(a.at("residual"), b.at("residual"));
}

TEST_F(CliTest, SolveWritesOutputFile)
{
  const std::string out = path("p.json");
  ASSERT_EQ(run({"solve", "--method", "hc", "--degree", "12", "--output", out}).code, 0);
  EXPECT_EQ(qspf::phases_from_json(qspf::read_json_file(out)).degree_half(), 12);
}

TEST_F(CliTest, SolveFlagErrors)
{
  EXPECT_EQ(run({"solve", "--degree", "4"}).code, 2);
  EXPECT_EQ(run({"solve", "--method", "newton", "--degree", "4"}).code, 2);
  EXPECT_EQ(run({"solve", "--method", "hc"}).code, 2);
  EXPECT_EQ(run({"solve", "--method", "hc", "--target", "hamsim"}).code, 2);
  EXPECT_EQ(run({"solve", "--method", "hc", "--target", "unknown"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, SolveReportsSolverErrors)
{
  const std::string t = write_target("big.json", {0.5, 0.4, 0.3});
  const Result r = run({"solve", "--method", "ffpi", "--target", "file", "--input", t, "--max-iter", "2"});
  EXPECT_EQ(r.code, 1);
  const json e = json::parse(r.err);
  EXPECT_EQ(e.at("error"), "MaxIterReached");
  EXPECT_EQ(e.at("iterations"), 2);
}

TEST_F(CliTest, VerifyRoundTripAndPerturbation)
{
  const std::string p = path("p.json");
  ASSERT_EQ(run({"solve", "--method", "hc", "--degree", "30", "--seed", "5", "--output", p}).code, 0);
  Result r = run({"verify", "--phases", p, "--degree", "30", "--seed", "5"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(json::parse(r.out).at("ok").get<bool>());

  json j = qspf::read_json_file(p);
  j["psi"][0] = j["psi"][0].get<double>() + 1e-3;
  qspf::write_json_file(p, j);
  r = run({"verify", "--phases", p, "--degree", "30", "--seed", "5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_GT(json::parse(r.out).at("residual").get<double>(), 1e-4);
}

TEST_F(CliTest, VerifyZeroPhasesZeroTarget)
{
  const std::string t = write_target("zero.json", {0.0, 0.0, 0.0});
  const std::string p = path("zp.json");
  std::ofstream(p) << R"({"psi": [0, 0, 0], "meta": {}})";
  const Result r = run({"verify", "--phases", p, "--target", "file", "--input", t});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("residual").get<double>(), 0.0);
}

TEST_F(CliTest, VerifyPadsShorterSide)
{
  const std::string t = write_target("t.json", {0.5, 0.0});
  const std::string p = path("p.json");
  std::ofstream(p) << R"({"psi": [0.5235987755982988]})";
  const Result r = run({"verify", "--phases", p, "--target", "file", "--input", t});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST_F(CliTest, BenchRandomGrid)
{
  const std::string csv = path("b.csv");
  const Result r = run({"bench", "--methods", "hc,ffpi,fpi_direct", "--degrees", "256,512,1024", "--target", "random",
                        "--inf-norm", "0.5", "--output", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  std::string first, header;
  std::getline(in, first);
  std::getline(in, header);
  EXPECT_EQ(first, "# schema=1");
  EXPECT_EQ(header, "method,d,eta,wall_ms,residual,iterations,seed,grid_size");
  const auto rows = csv_rows(csv);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::stringstream s(rows[i]);
    std::vector<std::string> f;
    for (std::string cell; std::getline(s, cell, ',');) f.push_back(cell);
    ASSERT_EQ(f.size(), 8u);
    EXPECT_GT(std::stod(f[3]), 0.0);
    EXPECT_LE(std::stod(f[4]), 1e-12) << rows[i];
    if (f[0] == "hc")
      EXPECT_GT(std::stol(f[7]), 0);
    else
      EXPECT_GT(std::stoi(f[5]), 0);
  }
}

TEST_F(CliTest, BenchHamsimDegrees)
{
  const Result r = run({"bench", "--methods", "hc", "--target", "hamsim", "--taus", "50,100,200"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::stringstream s(r.out);
  std::vector<std::string> lines;
  for (std::string line; std::getline(s, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  const double taus[] = {50, 100, 200};
  for (int i = 0; i < 3; ++i) {
    const int d = std::stoi(lines[2 + i].substr(lines[2 + i].find(',') + 1));
    EXPECT_NEAR(d, 0.7 * taus[i], 20.0);
  }
}

TEST_F(CliTest, BenchValidation)
{
  EXPECT_EQ(run({"bench", "--methods", "--degrees", "8"}).code, 2);
  EXPECT_EQ(run({"bench", "--degrees", "8"}).code, 2);
  EXPECT_EQ(run({"bench", "--methods", "hc,bogus", "--degrees", "8"}).code, 2);
  EXPECT_EQ(run({"bench", "--methods", "hc"}).code, 2);
}

TEST_F(CliTest, BenchFileSafety)
{
  const std::string csv = path("b.csv");
  ASSERT_EQ(run({"bench", "--methods", "hc", "--degrees", "8", "--output", csv}).code, 0);
  EXPECT_EQ(run({"bench", "--methods", "hc", "--degrees", "8", "--output", csv}).code, 2);
  EXPECT_EQ(csv_rows(csv).size(), 2u);
  ASSERT_EQ(run({"bench", "--methods", "hc", "--degrees", "9,10", "--output", csv, "--append"}).code, 0);
  EXPECT_EQ(csv_rows(csv).size(), 4u);
  ASSERT_EQ(run({"bench", "--methods", "ffpi", "--degrees", "8", "--output", csv, "--force"}).code, 0);
  EXPECT_EQ(csv_rows(csv).size(), 2u);

  const std::string other = path("other.csv");
  std::ofstream(other) << "a,b\n1,2\n";
  EXPECT_EQ(run({"bench", "--methods", "hc", "--degrees", "8", "--output", other, "--append"}).code, 2);
}

TEST_F(CliTest, BenchCellFailure)
{
  const std::vector<std::string> base{"bench", "--methods", "ffpi,hc", "--target", "hamsim",
                                      "--taus", "50",  "--max-iter", "5"};
  EXPECT_EQ(run(base).code, 1);
  auto keep = base;
  keep.push_back("--keep-going");
  const Result r = run(keep);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("MaxIterReached"), std::string::npos);
  EXPECT_NE(r.out.find("\nhc,"), std::string::npos);
}

TEST_F(CliTest, TargetExport)
{
  const std::string t = path("t.json");
  ASSERT_EQ(run({"target", "--target", "hamsim", "--tau", "1", "--output", t}).code, 0);
  const qspf::ChebTarget back = qspf::target_from_json(qspf::read_json_file(t));
  EXPECT_EQ(back.degree_half(), 18);
  EXPECT_NEAR(back.coeffs(0), 0.999 * 0.7651976865579666, 1e-16);
}
