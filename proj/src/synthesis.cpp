#include "etf_forge/synthesis.hpp"

#include <algorithm>
#include <cmath>

#include "etf_forge/error.hpp"

namespace etf {

namespace {

double max_column_norm_error(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) sq += std::norm(m(i, j));
    worst = std::max(worst, std::abs(std::sqrt(sq) - 1.0));
  }
  return worst;
}

// Rescales every column to unit norm, returning the largest correction.
double renormalize_columns(ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) sq += std::norm(m(i, j));
    const double norm = std::sqrt(sq);
    worst = std::max(worst, std::abs(norm - 1.0));
    if (norm == 0.0) continue;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) /= norm;
  }
  return worst;
}

std::string size_tag(std::size_t d, std::size_t n) { return std::to_string(d) + "x" + std::to_string(n); }

}  // namespace

Frame Frame::checked(ComplexMatrix vectors, std::string provenance) {
  if (vectors.rows() == 0 || vectors.cols() == 0) throw Error("dim", "frame must be non-empty");
  const double err = max_column_norm_error(vectors);
  if (err > 1e-10) throw Error("not_unit_norm", "column norm deviates from 1 by " + std::to_string(err));
  return Frame{std::move(vectors), std::move(provenance), 0.0};
}

bool certificate_consistent(const Certificate& cert) {
  const bool expected = cert.coherence <= cert.mu_target + cert.tolerance &&
                        cert.equiangularity_dev <= cert.tolerance &&
                        cert.tightness_residual <= cert.tolerance * static_cast<double>(cert.n);
  return expected == cert.pass;
}

ComplexMatrix signature_of(const Frame& f) {
  const FrameParams p = frame_params(f.d(), f.n());
  ComplexMatrix s = gram(f.vectors);
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) = 0.0;
  s *= 1.0 / p.mu;
  return s;
}

ComplexMatrix gram_from_signature(const SignatureMatrix& s) {
  const FrameParams p = frame_params(s.d(), s.n());
  ComplexMatrix g = s.matrix();
  g *= p.mu;
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) += 1.0;
  return g;
}

Frame factor_gram(const ComplexMatrix& g, std::size_t d) {
  if (!g.is_square()) throw Error("dim", "Gram matrix must be square");
  const std::size_t n = g.rows();
  if (d == 0 || d > n) throw Error("dim", "rank " + std::to_string(d) + " out of range for n=" + std::to_string(n));
  const double scale = static_cast<double>(n) / static_cast<double>(d);

  const HermitianEigen eig = hermitian_eigen(g);
  if (d < n && eig.eigenvalues[d] > 1e-6 * scale) {
    throw Error("rank_exceeds_d", "eigenvalue " + std::to_string(d + 1) + " is " + std::to_string(eig.eigenvalues[d]));
  }
  if (eig.eigenvalues.back() < -1e-8 * scale) {
    throw Error("not_psd", "smallest eigenvalue is " + std::to_string(eig.eigenvalues.back()));
  }

  const double root = std::sqrt(scale);
  ComplexMatrix f(d, n);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < n; ++i) f(k, i) = root * std::conj(eig.eigenvectors(i, k));
  }
  const double mismatch = frob_norm(gram(f) - g);
  if (mismatch > 1e-8 * static_cast<double>(n)) {
    throw Error("gram_mismatch", "‖F*F - G‖_F = " + std::to_string(mismatch));
  }
  const double correction = renormalize_columns(f);
  if (correction > 1e-9) {
    throw Error("gram_mismatch", "column renormalization of " + std::to_string(correction) + " exceeds 1e-9");
  }
  return Frame{std::move(f), "factor(" + size_tag(d, n) + ")", correction};
}

Certificate verify_etf(const Frame& f, double tolerance) {
  Certificate cert;
  cert.d = f.d();
  cert.n = f.n();
  cert.mu_target = welch_mu(cert.d, cert.n);
  cert.tolerance = tolerance;
  cert.provenance = f.provenance;

  const ComplexMatrix g = gram(f.vectors);
  for (std::size_t i = 0; i < cert.n; ++i) {
    for (std::size_t j = 0; j < cert.n; ++j) {
      if (i == j) continue;
      const double mod = std::abs(g(i, j));
      cert.coherence = std::max(cert.coherence, mod);
      cert.equiangularity_dev = std::max(cert.equiangularity_dev, std::abs(mod - cert.mu_target));
    }
  }

  ComplexMatrix frame_op = matmul(f.vectors, adjoint(f.vectors));
  const double scale = static_cast<double>(cert.n) / static_cast<double>(cert.d);
  for (std::size_t i = 0; i < cert.d; ++i) frame_op(i, i) -= scale;
  cert.tightness_residual = frob_norm(frame_op);

  cert.pass = cert.coherence <= cert.mu_target + tolerance && cert.equiangularity_dev <= tolerance &&
              cert.tightness_residual <= tolerance * static_cast<double>(cert.n);
  return cert;
}

Frame naimark_complement(const Frame& f) {
  const Certificate cert = verify_etf(f);
  if (!cert.pass || f.d() >= f.n()) {
    throw Error("not_etf", "naimark complement needs a certified ETF with d < n (" + size_tag(f.d(), f.n()) + ")");
  }
  const FrameParams p = frame_params(f.d(), f.n());
  ComplexMatrix g = signature_of(f);
  g *= -p.nu;
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) += 1.0;
  Frame out = factor_gram(g, f.n() - f.d());
  out.provenance = "naimark[" + f.provenance + "]";
  return out;
}

DoublingConstants doubling_constants(std::size_t d, std::size_t n, Epsilon epsilon) {
  const FrameParams p = frame_params(d, n);
  if (std::abs(p.c) > 1.0 + 1e-14) {
    throw Error("infeasible_c", "|c| = " + std::to_string(std::abs(p.c)) + " > 1 for " + size_tag(d, n));
  }
  if (p.mu <= p.lambda) throw Error("b_nonpositive", "mu <= lambda for " + size_tag(d, n));
  const Complex beta = doubling_beta(p.c, epsilon);
  const double dd = static_cast<double>(d);
  const double nd = static_cast<double>(n);

  DoublingConstants k{};
  k.a = std::sqrt((p.nu + p.lambda) / (p.mu + p.nu));
  k.b = std::sqrt((p.mu - p.lambda) / (p.mu + p.nu));
  k.w = p.lambda * (nd - dd + p.mu * beta * dd) / (k.a * p.mu * nd);
  k.z = -p.lambda * (dd - p.nu * beta * (nd - dd)) / (k.b * p.nu * nd);
  return k;
}

Frame double_etf(const Frame& f, const Frame& g, Epsilon epsilon) {
  const std::size_t d = f.d();
  const std::size_t n = f.n();
  if (g.n() != n || g.d() + d != n) {
    throw Error("not_complement", "complement has size " + size_tag(g.d(), g.n()) + " for a " + size_tag(d, n) + " frame");
  }
  if (!verify_etf(f).pass) throw Error("not_etf", "frame " + size_tag(d, n) + " is not a certified ETF");
  if (!verify_etf(g).pass) throw Error("not_etf", "complement " + size_tag(g.d(), n) + " is not a certified ETF");
  const double cross = frob_norm(matmul(f.vectors, adjoint(g.vectors)));
  if (cross > 1e-6 * static_cast<double>(n)) {
    throw Error("not_complement", "‖FG*‖_F = " + std::to_string(cross));
  }
  if (!doubling_feasible(d, n)) {
    throw Error("infeasible_c", "|c| > 1 for " + size_tag(d, n));
  }
  const DoublingConstants k = doubling_constants(d, n, epsilon);

  ComplexMatrix phi(n, 2 * n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      phi(i, j) = k.a * f.vectors(i, j);
      phi(i, j + n) = k.w * f.vectors(i, j);
    }
  }
  for (std::size_t i = 0; i < n - d; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      phi(i + d, j) = k.b * g.vectors(i, j);
      phi(i + d, j + n) = k.z * g.vectors(i, j);
    }
  }
  const char* sign = epsilon == Epsilon::plus ? "+" : "-";
  return Frame{std::move(phi), "double" + std::string(sign) + "[" + f.provenance + "]", 0.0};
}

Frame build_skew_etf(const SkewHadamard& h) {
  const CoreAdjacency a = core_adjacency(h);
  const SignatureMatrix s = strohmer_signature(a, h.order());
  const SignatureMatrix sigma = double_signature(s, Epsilon::plus);
  Frame out = factor_gram(gram_from_signature(sigma), sigma.d());
  out.provenance = "skew_etf(order " + std::to_string(h.order()) + ")";
  return out;
}

Frame build_conference_etf(const SkewHadamard& h) {
  const SignatureMatrix s = conference_signature(h);
  Frame out = factor_gram(gram_from_signature(s), s.d());
  out.provenance = "conference_etf(order " + std::to_string(h.order()) + ")";
  return out;
}

Frame mercedes_benz_frame() {
  const double r = std::sqrt(3.0) / 2.0;
  return Frame::checked(ComplexMatrix::from_rows({{0.0, -r, r}, {1.0, -0.5, -0.5}}), "mercedes_benz");
}

}  // namespace etf
