#include <gtest/gtest.h>

#include <bit>
#include <filesystem>
#include <random>

#include "etf_forge/catalog.hpp"
#include "etf_forge/hadamard.hpp"
#include "etf_forge/io.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace etf;

namespace {

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("etf_forge_io_" + std::to_string(std::random_device{}()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(MatrixFormat, SingleImaginaryUnit) {
  const ComplexMatrix m = io::parse_matrix("ETFMAT 1 1 1\n(0,1)\n");
  ASSERT_EQ(m.rows(), 1u);
  EXPECT_EQ(m(0, 0), Complex(0, 1));
  EXPECT_EQ(io::format_matrix(m), "ETFMAT 1 1 1\n(0,1)\n");
}

TEST(MatrixFormat, AcceptsArbitraryFiniteDecimals) {
  const ComplexMatrix m = io::parse_matrix("ETFMAT 1 2 2\n(1e-3,-2.50) (+0.125,0)\n  (-0,7)   (3.0E2,1)\n");
  EXPECT_EQ(m(0, 0), Complex(1e-3, -2.5));
  EXPECT_EQ(m(1, 1), Complex(300, 1));
}

TEST(MatrixFormat, RoundTripIsBitExact) {
  std::mt19937_64 rng(2);
  ComplexMatrix m = oracle::random_matrix(5, 7, rng);
  m(0, 0) = {1e-300, -0.0};
  m(1, 1) = {1.0 / 3.0, 2.0 / 7.0};
  const std::string text = io::format_matrix(m);
  const ComplexMatrix back = io::parse_matrix(text);
  for (std::size_t k = 0; k < m.entries().size(); ++k) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back.entries()[k].real()), std::bit_cast<std::uint64_t>(m.entries()[k].real()));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back.entries()[k].imag()), std::bit_cast<std::uint64_t>(m.entries()[k].imag()));
  }
  EXPECT_EQ(io::format_matrix(back), text);
}

TEST(MatrixFormat, FileRoundTripReproducesBytes) {
  TempDir dir;
  const Frame f = execute_plan(*plan_size(11)).frame;
  io::write_matrix(dir / "a.mat", f.vectors);
  io::write_matrix(dir / "b.mat", io::read_matrix(dir / "a.mat"));
  EXPECT_EQ(io::read_text(dir / "a.mat"), io::read_text(dir / "b.mat"));
}

TEST(MatrixFormat, Errors) {
  EXPECT_EQ(error_code([] { io::parse_matrix("ETFMAT 2 1 1\n(0,1)\n"); }), "bad_header");
  EXPECT_EQ(error_code([] { io::parse_matrix("MATRIX 1 1 1\n(0,1)\n"); }), "bad_header");
  EXPECT_EQ(error_code([] { io::parse_matrix("ETFMAT 1 0 1\n"); }), "bad_header");
  EXPECT_EQ(error_code([] { io::parse_matrix(""); }), "bad_header");
  EXPECT_EQ(error_code([] { io::parse_matrix("ETFMAT 1 1 1\n0,1\n"); }), "bad_entry");
  EXPECT_EQ(error_code([] { io::parse_matrix("ETFMAT 1 1 1\n(nan,1)\n"); }), "bad_entry");
  EXPECT_EQ(error_code([] { io::parse_matrix("ETFMAT 1 1 1\n(1,2,3)\n"); }), "bad_entry");
  EXPECT_EQ(error_code([] { io::parse_matrix("ETFMAT 1 1 1\n(+-1,0)\n"); }), "bad_entry");
  EXPECT_EQ(error_code([] { io::parse_matrix("ETFMAT 1 1 2\n(0,1)\n"); }), "dim_mismatch");
  EXPECT_EQ(error_code([] { io::parse_matrix("ETFMAT 1 2 1\n(0,1)\n"); }), "dim_mismatch");
  EXPECT_EQ(error_code([] { io::read_matrix("/nonexistent/dir/x.mat"); }), "io");
}

TEST(HadamardFormat, RoundTripAndVerification) {
  TempDir dir;
  const SkewHadamard h = paley_skew_hadamard(7);
  io::write_hadamard(dir / "h.had", h);
  const std::string text = io::read_text(dir / "h.had");
  EXPECT_EQ(text.substr(0, 13), "HADAMARD 1 8\n");
  EXPECT_EQ(text.size(), 13u + 8 * 9);
  EXPECT_EQ(io::read_hadamard(dir / "h.had"), h);
  EXPECT_EQ(io::format_hadamard(io::parse_hadamard(text)), text);
}

TEST(HadamardFormat, Errors) {
  EXPECT_EQ(error_code([] { io::parse_hadamard("HADAMARD 2 2\n++\n-+\n"); }), "bad_header");
  EXPECT_EQ(error_code([] { io::parse_hadamard("HADAMARD 1 2\n+x\n-+\n"); }), "bad_entry");
  EXPECT_EQ(error_code([] { io::parse_hadamard("HADAMARD 1 2\n+++\n-+\n"); }), "dim_mismatch");
  EXPECT_EQ(error_code([] { io::parse_hadamard("HADAMARD 1 2\n++\n"); }), "dim_mismatch");
  EXPECT_EQ(error_code([] { io::parse_hadamard("HADAMARD 1 2\n++\n+-\n"); }), "not_skew_hadamard");
  const io::RawHadamard raw = io::parse_hadamard_raw("HADAMARD 1 2\n++\n+-\n");
  EXPECT_EQ(raw.entries, (std::vector<std::int8_t>{1, 1, 1, -1}));
}

TEST(CertificateJson, FixedKeyOrderAndRoundTrip) {
  const Certificate c = execute_plan(*plan_size(11)).certificate;
  const std::string text = io::certificate_json(c);
  const char* keys[] = {"\"d\"",         "\"n\"",       "\"mu_target\"", "\"coherence\"", "\"equiangularity_dev\"",
                        "\"tightness_residual\"", "\"tolerance\"", "\"pass\"",      "\"provenance\""};
  std::size_t pos = 0;
  for (const char* k : keys) {
    const std::size_t at = text.find(k, pos);
    ASSERT_NE(at, std::string::npos) << k;
    pos = at;
  }
  const Certificate back = io::parse_certificate_json(text);
  EXPECT_EQ(back.d, c.d);
  EXPECT_EQ(back.n, c.n);
  EXPECT_EQ(back.coherence, c.coherence);
  EXPECT_EQ(back.mu_target, c.mu_target);
  EXPECT_EQ(back.tightness_residual, c.tightness_residual);
  EXPECT_EQ(back.pass, c.pass);
  EXPECT_EQ(back.provenance, c.provenance);
  EXPECT_TRUE(certificate_consistent(back));
  EXPECT_EQ(io::certificate_json(back), text);
}

TEST(CertificateJson, RejectsWrongKeySet) {
  EXPECT_EQ(error_code([] { io::parse_certificate_json("{\"d\": 1}"); }), "bad_entry");
  EXPECT_EQ(error_code([] { io::parse_certificate_json("not json"); }), "bad_entry");
  std::string text = io::certificate_json(Certificate{});
  text.insert(text.find('{') + 1, "\"extra\": 0,");
  EXPECT_EQ(error_code([&] { io::parse_certificate_json(text); }), "bad_entry");
}
