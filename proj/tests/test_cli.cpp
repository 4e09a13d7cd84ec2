#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "numrad/matrix_io.hpp"
#include "numrad/report.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "numrad");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = numrad::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("numrad_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const numrad::ComplexMatrix& m) {
    const fs::path p = dir_ / name;
    numrad::write_matrix_file(p, m);
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageWithoutCommand) {
  EXPECT_EQ(invoke({}).code, numrad::cli::usage);
  EXPECT_EQ(invoke({"frobnicate"}).code, numrad::cli::usage);
}

TEST_F(CliTest, RadiusNilpotentTwo) {
  const Invocation r = invoke({"radius", write("a.txt", numrad::testing::nilpotent_two())});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("radius 1.000000000000000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("top_multiplicity 3"), std::string::npos);
}

TEST_F(CliTest, CertifyVerdicts) {
  EXPECT_NE(invoke({"certify", write("a.txt", numrad::testing::nilpotent_two())}).out.find("verdict strongly-certified-disk"),
            std::string::npos);
  EXPECT_NE(invoke({"certify", write("b.txt", numrad::testing::nonspanning_disk())}).out.find("verdict disk"),
            std::string::npos);
  EXPECT_NE(invoke({"certify", write("c.txt", numrad::testing::not_disk_3())}).out.find("verdict non-disk"),
            std::string::npos);
  EXPECT_NE(invoke({"certify", write("d.txt", numrad::ComplexMatrix::identity(2))}).out.find("verdict identity-multiple"),
            std::string::npos);
  EXPECT_EQ(invoke({"certify", write("z.txt", numrad::ComplexMatrix(2, 2))}).code, numrad::cli::degenerate_input);
}

TEST_F(CliTest, CertifyWritesCoefficients) {
  const fs::path coeffs = dir_ / "p.txt";
  const Invocation r = invoke({"certify", write("a.txt", numrad::testing::nilpotent_two()), "--coeffs", coeffs.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(numrad::read_matrix_file(coeffs).rows(), 2u);
}

TEST_F(CliTest, ProxWritesOutputs) {
  const fs::path a = dir_ / "pa.txt", z = dir_ / "pz.txt";
  const Invocation r = invoke({"prox", write("i.txt", numrad::ComplexMatrix::identity(2)), "--out-a", a.string(), "--out-z",
                        z.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const numrad::ComplexMatrix pa = numrad::read_matrix_file(a);
  EXPECT_NEAR(pa(0, 0).real(), 2.0 / 3.0, 1e-6);
  EXPECT_TRUE(fs::exists(z));
}

TEST_F(CliTest, AndoNilpotentTwo) {
  const Invocation r = invoke({"ando", write("a.txt", numrad::testing::nilpotent_two())});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("multiplicity 3"), std::string::npos) << r.out;
}

TEST_F(CliTest, ParseAndIoErrors) {
  const fs::path bad = dir_ / "bad.txt";
  std::ofstream(bad) << "2\n1 2\n3 q\n";
  const Invocation r = invoke({"radius", bad.string()});
  EXPECT_EQ(r.code, numrad::cli::parse_error);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"radius", (dir_ / "missing.txt").string()}).code, numrad::cli::io_error);
}

TEST_F(CliTest, ExperimentAndReport) {
  const Invocation r = invoke({"experiment", "--n", "2", "--trials", "6", "--threads", "1", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const fs::path csv = dir_ / "experiment_n2.csv";
  ASSERT_TRUE(fs::exists(csv));
  EXPECT_TRUE(fs::exists(dir_ / "experiment_n2.svg"));
  const Invocation rep = invoke({"report", csv.string(), "--svg", (dir_ / "r.svg").string()});
  ASSERT_EQ(rep.code, 0) << rep.err;
  EXPECT_TRUE(fs::exists(dir_ / "r.svg"));
}

TEST_F(CliTest, ExperimentRejectsBadConfig) {
  EXPECT_NE(invoke({"experiment", "--n", "1", "--out", dir_.string()}).code, 0);
}
