#include "etf_forge/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "etf_forge/error.hpp"

namespace etf {

namespace {

double coherence_of(const ComplexMatrix& f) {
  if (f.cols() < 2) return 0.0;
  return max_offdiag_abs(gram(f));
}

void normalize_columns(ComplexMatrix& f) {
  for (std::size_t j = 0; j < f.cols(); ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < f.rows(); ++i) sq += std::norm(f(i, j));
    const double norm = std::sqrt(sq);
    if (norm == 0.0) throw Error("degenerate", "zero column in search iterate");
    for (std::size_t i = 0; i < f.rows(); ++i) f(i, j) /= norm;
  }
}

struct RestartState {
  RestartOutcome outcome;
  ComplexMatrix best;
};

RestartState run_restart(const SearchConfig& cfg, double target, std::size_t r) {
  const double radius = (1.0 - cfg.clip_margin) * target;
  RestartState state;
  try {
    ComplexMatrix f = random_unit_frame(cfg.d, cfg.n, cfg.seed ^ static_cast<std::uint64_t>(r));
    state.best = f;
    state.outcome.best_coherence = coherence_of(f);
    if (state.outcome.best_coherence <= target + cfg.stop_slack) {
      state.outcome.converged = true;
      return state;
    }
    for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
      const ComplexMatrix g = structural_projection(gram(f), radius);
      f = spectral_factor(g, cfg.d);
      normalize_columns(f);
      const double coh = coherence_of(f);
      if (coh < state.outcome.best_coherence) {
        state.outcome.best_coherence = coh;
        state.outcome.iterations = it;
        state.best = f;
      }
      if (coh <= target + cfg.stop_slack) {
        state.outcome.converged = true;
        break;
      }
    }
  } catch (const Error& e) {
    if (e.code() != "no_convergence" && e.code() != "degenerate") throw;
    state.outcome.abandoned = true;
    state.outcome.note = e.what();
  }
  return state;
}

}  // namespace

ComplexMatrix random_unit_frame(std::size_t d, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix f(d, n);
  for (auto& z : f.entries()) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  normalize_columns(f);
  return f;
}

ComplexMatrix structural_projection(const ComplexMatrix& g, double mu) {
  ComplexMatrix out = g;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      if (i == j) {
        out(i, j) = 1.0;
        continue;
      }
      const double mod = std::abs(out(i, j));
      if (mod > mu) out(i, j) *= mu / mod;
    }
  }
  return out;
}

ComplexMatrix spectral_factor(const ComplexMatrix& g, std::size_t d) {
  const std::size_t n = g.rows();
  if (d == 0 || d > n) throw Error("dim", "rank out of range");
  const HermitianEigen eig = hermitian_eigen(g);
  double kept = 0.0;
  for (std::size_t k = 0; k < d; ++k) kept += std::max(eig.eigenvalues[k], 0.0);
  if (kept <= 0.0) throw Error("degenerate", "no positive spectrum to keep");
  const double rescale = static_cast<double>(n) / kept;
  ComplexMatrix f(d, n);
  for (std::size_t k = 0; k < d; ++k) {
    const double root = std::sqrt(std::max(eig.eigenvalues[k], 0.0) * rescale);
    for (std::size_t i = 0; i < n; ++i) f(k, i) = root * std::conj(eig.eigenvectors(i, k));
  }
  return f;
}

ComplexMatrix spectral_projection(const ComplexMatrix& g, std::size_t d) { return gram(spectral_factor(g, d)); }

SearchResult alternating_projections(const SearchConfig& cfg) {
  if (cfg.d == 0 || cfg.d >= cfg.n) throw Error("underdetermined", "search needs 1 <= d < n");
  if (cfg.max_iters == 0 || cfg.restarts == 0) throw Error("dim", "iteration and restart counts must be positive");
  if (!(cfg.clip_margin >= 0.0 && cfg.clip_margin < 1.0)) throw Error("dim", "clip_margin must lie in [0, 1)");
  const double target = cfg.target_coherence.value_or(welch_mu(cfg.d, cfg.n));

  std::vector<RestartState> states(cfg.restarts);
  unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.restarts));
  if (workers <= 1) {
    for (std::size_t r = 0; r < cfg.restarts; ++r) states[r] = run_restart(cfg, target, r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t r = next++; r < cfg.restarts; r = next++) states[r] = run_restart(cfg, target, r);
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  SearchResult result;
  std::optional<std::size_t> best;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    result.restarts.push_back(states[r].outcome);
    if (!states[r].outcome.abandoned &&
        (!best || states[r].outcome.best_coherence < states[*best].outcome.best_coherence)) {
      best = r;
    }
    result.running_best.push_back(best ? states[*best].outcome.best_coherence
                                       : std::numeric_limits<double>::infinity());
  }
  if (!best) throw Error("no_convergence", "every restart was abandoned");

  const RestartState& winner = states[*best];
  std::ostringstream prov;
  prov << "search_ap(d=" << cfg.d << ",n=" << cfg.n << ",seed=" << cfg.seed << ",restart=" << *best
       << ",iters=" << winner.outcome.iterations << ")";
  result.best_frame = Frame{winner.best, prov.str(), 0.0};
  result.best_coherence = winner.outcome.best_coherence;
  result.iterations_used = winner.outcome.iterations;
  result.restart_index = *best;
  result.converged = winner.outcome.converged;
  return result;
}

Certificate search_report(const SearchResult& result) {
  Certificate cert = verify_etf(result.best_frame, kSearchTolerance);
  std::ostringstream prov;
  prov << result.best_frame.provenance << ";converged=" << (result.converged ? "true" : "false")
       << ";restarts=" << result.restarts.size();
  cert.provenance = prov.str();
  return cert;
}

}  // namespace etf
