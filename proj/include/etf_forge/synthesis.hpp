#pragma once

#include <cstddef>
#include <string>

#include "etf_forge/hadamard.hpp"
#include "etf_forge/linalg.hpp"
#include "etf_forge/signature.hpp"

namespace etf {

inline constexpr double kDefaultTolerance = 1e-8;

// A d x n matrix of unit-norm columns.
struct Frame {
  ComplexMatrix vectors;
  std::string provenance;
  // Largest |‖f_j‖ - 1| removed by the final column renormalization.
  double renorm_correction = 0.0;

  std::size_t d() const noexcept { return vectors.rows(); }
  std::size_t n() const noexcept { return vectors.cols(); }

  // Error "not_unit_norm" if some column norm is off by more than 1e-10.
  static Frame checked(ComplexMatrix vectors, std::string provenance);
};

struct Certificate {
  std::size_t d = 0;
  std::size_t n = 0;
  double mu_target = 0.0;
  double coherence = 0.0;
  double equiangularity_dev = 0.0;
  double tightness_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string provenance;
};

// Recomputes `pass` from the numeric fields.
bool certificate_consistent(const Certificate& cert);

// (F*F - I) / mu with the diagonal set to exactly zero.
ComplexMatrix signature_of(const Frame& f);

// I + mu S.
ComplexMatrix gram_from_signature(const SignatureMatrix& s);

// F = sqrt(n/d) times the top-d eigenvectors of G, conjugate-transposed,
// then columns renormalized.
// Errors: "rank_exceeds_d", "not_psd", "gram_mismatch".
Frame factor_gram(const ComplexMatrix& gram, std::size_t d);

Certificate verify_etf(const Frame& f, double tolerance = kDefaultTolerance);

// (n-d) x n ETF G with G*G = I - nu S and F G* = 0. Error "not_etf".
Frame naimark_complement(const Frame& f);

struct DoublingConstants {
  double a;
  double b;
  Complex w;
  Complex z;
};

DoublingConstants doubling_constants(std::size_t d, std::size_t n, Epsilon epsilon);

// [[aF, wF], [bG, zG]], an n x 2n ETF whose signature is
// double_signature(signature(F), epsilon).
// Errors: "not_etf", "not_complement", "infeasible_c".
Frame double_etf(const Frame& f, const Frame& g, Epsilon epsilon);

// m-1 x 2(m-1) ETF: normalize, core adjacency, Strohmer signature, double,
// factor the Gram.
Frame build_skew_etf(const SkewHadamard& h);

// m/2 x m ETF from the conference signature i(H - I).
Frame build_conference_etf(const SkewHadamard& h);

// The 2 x 3 real ETF with columns at angles 90°, 210°, 330°.
Frame mercedes_benz_frame();

}  // namespace etf
