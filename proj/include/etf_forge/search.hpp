#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etf_forge/synthesis.hpp"

namespace etf {

struct SearchConfig {
  std::size_t d = 0;
  std::size_t n = 0;
  std::size_t max_iters = 5000;
  std::size_t restarts = 20;
  std::uint64_t seed = 0;
  // Defaults to the Welch bound of (d, n).
  std::optional<double> target_coherence;
  double stop_slack = 1e-8;
  // Off-diagonal Gram entries are clipped to modulus
  // (1 - clip_margin) * target_coherence; 0 clips exactly at the target.
  // With a zero margin the gap to the Welch bound shrinks only like 1/iters.
  double clip_margin = 0.03;
  // Worker threads for independent restarts; 0 means hardware concurrency.
  // The selected result does not depend on this value.
  unsigned threads = 1;
};

struct RestartOutcome {
  double best_coherence = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool abandoned = false;
  std::string note;
};

struct SearchResult {
  Frame best_frame;
  double best_coherence = 0.0;
  std::size_t iterations_used = 0;
  std::size_t restart_index = 0;
  bool converged = false;
  // Per-restart summaries, in restart order.
  std::vector<RestartOutcome> restarts;
  // Running minimum of best_coherence over restarts 0..r.
  std::vector<double> running_best;
};

// i.i.d. standard complex Gaussian entries, columns normalized.
ComplexMatrix random_unit_frame(std::size_t d, std::size_t n, std::uint64_t seed);

// Diagonal set to 1; off-diagonal entries with modulus above `mu` are
// shrunk to modulus `mu`, keeping their phase.
ComplexMatrix structural_projection(const ComplexMatrix& g, double mu);

// d x n factor F with F*F equal to the nearest rank-d PSD matrix to G,
// rescaled to trace n.
ComplexMatrix spectral_factor(const ComplexMatrix& g, std::size_t d);
ComplexMatrix spectral_projection(const ComplexMatrix& g, std::size_t d);

// Plain alternating projections between the structural and spectral sets.
// Restart r draws its initial frame from seed ^ r. The result is the best
// frame over all restarts ordered by (coherence, restart index).
SearchResult alternating_projections(const SearchConfig& cfg);

// verify_etf at tolerance 1e-4 with search metadata in the provenance.
Certificate search_report(const SearchResult& result);

inline constexpr double kSearchTolerance = 1e-4;

}  // namespace etf
