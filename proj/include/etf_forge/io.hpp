#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "etf_forge/hadamard.hpp"
#include "etf_forge/linalg.hpp"
#include "etf_forge/synthesis.hpp"

namespace etf::io {

// Matrix text format:
//   ETFMAT 1 <rows> <cols>
//   (<re>,<im>) (<re>,<im>) ...      one line per row
// Written with 17 significant digits (%.17g), which round-trips doubles.
// Errors: "bad_header", "bad_entry", "dim_mismatch", "io".
std::string format_matrix(const ComplexMatrix& m);
ComplexMatrix parse_matrix(const std::string& text);
ComplexMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m);

// Hadamard text format:
//   HADAMARD 1 <m>
//   m lines of m characters, '+' or '-'
struct RawHadamard {
  std::size_t order = 0;
  std::vector<std::int8_t> entries;
};
std::string format_hadamard(const SkewHadamard& h);
RawHadamard parse_hadamard_raw(const std::string& text);
// Parses and verifies; throws "not_skew_hadamard" on a well-formed file that
// fails the identities.
SkewHadamard parse_hadamard(const std::string& text);
RawHadamard read_hadamard_raw(const std::filesystem::path& path);
SkewHadamard read_hadamard(const std::filesystem::path& path);
void write_hadamard(const std::filesystem::path& path, const SkewHadamard& h);

// Certificate JSON with a fixed key order:
// d, n, mu_target, coherence, equiangularity_dev, tightness_residual,
// tolerance, pass, provenance.
std::string certificate_json(const Certificate& cert);
Certificate parse_certificate_json(const std::string& text);
void write_certificate(const std::filesystem::path& path, const Certificate& cert);
Certificate read_certificate(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace etf::io
