#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "etf_forge/synthesis.hpp"

namespace etf {

// A user-supplied skew Hadamard, already verified.
struct ImportedHadamard {
  std::filesystem::path path;
  std::size_t order = 0;
};

ImportedHadamard load_import(const std::filesystem::path& path);

// d = 2^k (2^j m - 1): base order m, Hadamard-doubled j times, then the
// resulting (2^j m - 1) x 2(2^j m - 1) ETF is frame-doubled k times.
struct SizePlan {
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  std::string source;  // "paley(q)" or "import(path)"
  std::uint64_t paley_q = 0;
  std::filesystem::path import_path;
};

inline constexpr std::size_t kMaxDoublings = 10;

// m - 1 is a prime congruent to 3 mod 4.
bool is_paley_order(std::size_t m);

// Prefers k = 0, then the smallest j; a Paley base wins over an import of
// the same order. Empty when no decomposition uses an available base.
std::optional<SizePlan> plan_size(std::size_t d, std::span<const ImportedHadamard> imports = {});

struct PlanOutcome {
  Frame frame;
  Certificate certificate;
};

// Error "certification_failed" if the final frame does not certify.
PlanOutcome execute_plan(const SizePlan& plan, double tolerance = kDefaultTolerance);

struct ReportRow {
  std::size_t d = 0;
  std::string status;  // certified | failed | needs_import | conjectural
  std::size_t m = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  std::string source;
  std::optional<double> coherence;
  std::optional<double> mu_target;
  std::optional<bool> pass;
};

// d < 150 with d ≡ 3 (mod 4) for which skew-Hadamard doubling gave the first
// known d x 2d ETF, and d ≡ 1 (mod 4) below 150 with no known d x 2d ETF.
std::span<const std::size_t> new_sizes_below_150();
std::span<const std::size_t> open_sizes_below_150();

// One row per d ≡ 3 (mod 4) up to max_d, executed when a plan exists, plus
// the open sizes up to max_d marked conjectural. Rows ascend by d.
std::vector<ReportRow> size_report(std::size_t max_d, std::span<const ImportedHadamard> imports = {},
                                   double tolerance = kDefaultTolerance);

// Columns: d, status, m, j, k, source, coherence, mu_target, pass.
std::string report_tsv(std::span<const ReportRow> rows);

}  // namespace etf
