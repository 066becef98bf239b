#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "etf_forge/catalog.hpp"
#include "etf_forge/hadamard.hpp"
#include "etf_forge/io.hpp"
#include "etf_forge/synthesis.hpp"

using namespace etf;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("etf_forge_cli_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    out_ = out.str();
    err_ = err.str();
    return code;
  }

  bool has_line(const std::string& line) const { return ("\n" + out_).find("\n" + line + "\n") != std::string::npos; }

  std::filesystem::path dir_;
  std::string out_;
  std::string err_;
};

}  // namespace

TEST_F(CliTest, PaleyThenVerify) {
  ASSERT_EQ(run({"hadamard", "paley", "--q", "11", "-o", path("h.had")}), 0) << err_;
  EXPECT_TRUE(has_line("order=12"));
  EXPECT_EQ(run({"hadamard", "verify", "-i", path("h.had")}), 0);
  EXPECT_TRUE(has_line("skew=true"));
  EXPECT_EQ(io::read_text(path("h.had")), io::format_hadamard(paley_skew_hadamard(11)));
}

TEST_F(CliTest, VerifyRejectsNonSkewHadamard) {
  io::write_text(path("bad.had"), "HADAMARD 1 2\n++\n+-\n");
  EXPECT_EQ(run({"hadamard", "verify", "-i", path("bad.had")}), 1);
  EXPECT_TRUE(has_line("hadamard=true"));
  EXPECT_TRUE(has_line("skew=false"));
}

TEST_F(CliTest, BuildThenVerifyJson) {
  ASSERT_EQ(run({"build", "--m", "12", "-o", path("f.mat")}), 0) << err_;
  ASSERT_EQ(run({"etf", "verify", "-i", path("f.mat"), "--json", path("c.json")}), 0) << err_;
  const Certificate c = io::read_certificate(path("c.json"));
  EXPECT_EQ(c.d, 11u);
  EXPECT_EQ(c.n, 22u);
  EXPECT_TRUE(c.pass);
  EXPECT_TRUE(certificate_consistent(c));
  EXPECT_EQ(io::read_text(path("f.mat")), io::format_matrix(build_skew_etf(paley_skew_hadamard(11)).vectors));
}

TEST_F(CliTest, VerifyNonEtfExitsOne) {
  io::write_matrix(path("x.mat"), ComplexMatrix::from_rows({{1, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(run({"etf", "verify", "-i", path("x.mat")}), 1);
  EXPECT_TRUE(has_line("pass=false"));
  io::write_matrix(path("y.mat"), ComplexMatrix::from_rows({{2, 0}, {0, 1}}));
  EXPECT_EQ(run({"etf", "verify", "-i", path("y.mat")}), 1);
  EXPECT_TRUE(has_line("unit_norm=false"));
}

TEST_F(CliTest, UsageAndIoErrorsExitTwo) {
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_FALSE(err_.empty());
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"hadamard", "paley", "--q", "11"}), 2);
  EXPECT_EQ(run({"etf", "verify", "-i", path("missing.mat")}), 2);
  io::write_text(path("bad.mat"), "ETFMAT 9 1 1\n(0,0)\n");
  EXPECT_EQ(run({"sig", "verify", "-i", path("bad.mat")}), 2);
  EXPECT_EQ(run({"build", "-o", path("f.mat")}), 2);
  EXPECT_EQ(run({"build", "--m", "36", "-o", path("f.mat")}), 2);
  ASSERT_EQ(run({"hadamard", "paley", "--q", "3", "-o", path("h.had")}), 0);
  ASSERT_EQ(run({"sig", "conference", "-i", path("h.had"), "-o", path("s.mat")}), 0);
  EXPECT_EQ(run({"sig", "double", "-i", path("s.mat"), "--epsilon", "2", "-o", path("t.mat")}), 2);
}

TEST_F(CliTest, LibraryErrorsExitOne) {
  EXPECT_EQ(run({"hadamard", "paley", "--q", "13", "-o", path("h.had")}), 1);
  EXPECT_NE(err_.find("wrong_residue"), std::string::npos);
}

TEST_F(CliTest, SignatureVerify) {
  ASSERT_EQ(run({"hadamard", "paley", "--q", "11", "-o", path("h.had")}), 0);
  ASSERT_EQ(run({"sig", "strohmer", "-i", path("h.had"), "-o", path("s.mat")}), 0);
  EXPECT_TRUE(has_line("d=5"));
  EXPECT_EQ(run({"sig", "verify", "-i", path("s.mat")}), 0);
  EXPECT_TRUE(has_line("valid=true"));
  io::write_matrix(path("r.mat"), ComplexMatrix::from_rows({{0, 1}, {-1, 0}}));
  EXPECT_EQ(run({"sig", "verify", "-i", path("r.mat")}), 1);
  EXPECT_TRUE(has_line("reason=not_hermitian"));
}

TEST_F(CliTest, StepwisePipelineMatchesInProcess) {
  ASSERT_EQ(run({"hadamard", "paley", "--q", "11", "-o", path("h.had")}), 0);
  ASSERT_EQ(run({"sig", "strohmer", "-i", path("h.had"), "-o", path("s.mat")}), 0);
  ASSERT_EQ(run({"sig", "double", "-i", path("s.mat"), "--epsilon", "+1", "-o", path("sigma.mat")}), 0);
  ASSERT_EQ(run({"etf", "synth", "-i", path("sigma.mat"), "-o", path("f.mat")}), 0);
  EXPECT_EQ(io::read_text(path("f.mat")), io::format_matrix(build_skew_etf(paley_skew_hadamard(11)).vectors));

  const SkewHadamard h = paley_skew_hadamard(11);
  const SignatureMatrix s = strohmer_signature(core_adjacency(h), 12);
  EXPECT_EQ(io::read_text(path("s.mat")), io::format_matrix(s.matrix()));
  EXPECT_EQ(io::read_text(path("sigma.mat")), io::format_matrix(double_signature(s).matrix()));
}

TEST_F(CliTest, NaimarkAndDoubleMatchInProcess) {
  ASSERT_EQ(run({"build", "--m", "12", "-o", path("f.mat")}), 0);
  ASSERT_EQ(run({"etf", "naimark", "-i", path("f.mat"), "-o", path("g.mat")}), 0);
  ASSERT_EQ(run({"etf", "naimark", "-i", path("g.mat"), "-o", path("gg.mat")}), 0);
  ASSERT_EQ(run({"etf", "double", "-i", path("f.mat"), "--complement", path("g.mat"), "--epsilon", "-1", "-o",
                 path("phi.mat")}),
            0)
      << err_;
  EXPECT_TRUE(has_line("d=22"));
  ASSERT_EQ(run({"etf", "verify", "-i", path("phi.mat")}), 0);

  const Frame f = build_skew_etf(paley_skew_hadamard(11));
  const Frame g = naimark_complement(f);
  EXPECT_EQ(io::read_text(path("g.mat")), io::format_matrix(g.vectors));
  EXPECT_EQ(io::read_text(path("phi.mat")), io::format_matrix(double_etf(f, g, Epsilon::minus).vectors));
}

TEST_F(CliTest, ImportedDoubledBaseMatchesHandPlan) {
  ASSERT_EQ(run({"hadamard", "paley", "--q", "11", "-o", path("h12.had")}), 0);
  ASSERT_EQ(run({"hadamard", "double", "-i", path("h12.had"), "-o", path("h24.had")}), 0);
  ASSERT_EQ(run({"hadamard", "double", "-i", path("h24.had"), "-o", path("h48.had")}), 0);
  EXPECT_TRUE(has_line("order=48"));
  ASSERT_EQ(run({"build", "--import", path("h48.had"), "-o", path("f.mat")}), 0) << err_;
  const PlanOutcome plan = execute_plan(SizePlan{47, 12, 2, 0, "paley(11)", 11, {}});
  EXPECT_EQ(io::read_text(path("f.mat")), io::format_matrix(plan.frame.vectors));
}

TEST_F(CliTest, ConferenceRoute) {
  ASSERT_EQ(run({"hadamard", "paley", "--q", "11", "-o", path("h.had")}), 0);
  ASSERT_EQ(run({"sig", "conference", "-i", path("h.had"), "-o", path("s.mat")}), 0);
  EXPECT_TRUE(has_line("d=6"));
  ASSERT_EQ(run({"etf", "synth", "-i", path("s.mat"), "-o", path("f.mat")}), 0);
  EXPECT_EQ(run({"etf", "verify", "-i", path("f.mat")}), 0);
  EXPECT_EQ(io::read_text(path("f.mat")), io::format_matrix(build_conference_etf(paley_skew_hadamard(11)).vectors));
}

TEST_F(CliTest, SearchIsDeterministic) {
  const std::vector<std::string> args{"search", "ap", "--d", "3", "--n", "6", "--seed", "1", "--restarts", "4",
                                      "--iters", "2000", "--json", path("s.json"), "-o", path("s.mat")};
  ASSERT_EQ(run(args), 0) << err_;
  const std::string first_out = out_;
  const std::string first_mat = io::read_text(path("s.mat"));
  EXPECT_TRUE(io::read_certificate(path("s.json")).pass);
  ASSERT_EQ(run(args), 0);
  EXPECT_EQ(out_, first_out);
  EXPECT_EQ(io::read_text(path("s.mat")), first_mat);
}

TEST_F(CliTest, CatalogWithImport) {
  ASSERT_EQ(run({"hadamard", "paley", "--q", "19", "-o", path("h20.had")}), 0);
  ASSERT_EQ(run({"catalog", "--max-d", "35", "--import", path("h20.had"), "-o", path("r.tsv")}), 0) << err_;
  EXPECT_TRUE(has_line("needs_import=2"));
  EXPECT_TRUE(has_line("conjectural=2"));
  const std::string tsv = io::read_text(path("r.tsv"));
  EXPECT_EQ(tsv, report_tsv(size_report(35, std::vector<ImportedHadamard>{load_import(path("h20.had"))})));
}
