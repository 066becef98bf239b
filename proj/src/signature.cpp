#include "etf_forge/signature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "etf_forge/error.hpp"

namespace etf {

namespace {

constexpr double kEntryTol = 1e-10;
constexpr double kRelationTol = 1e-9;
constexpr double kIntegralTol = 1e-6;

}  // namespace

FrameParams frame_params(std::size_t d, std::size_t n) {
  if (d == 0) throw Error("dim", "frame dimension must be positive");
  if (d >= n) {
    throw Error("underdetermined", "need d < n, got d=" + std::to_string(d) + " n=" + std::to_string(n));
  }
  const double dd = static_cast<double>(d);
  const double nd = static_cast<double>(n);
  FrameParams p{};
  p.d = d;
  p.n = n;
  p.mu = std::sqrt((nd - dd) / (dd * (nd - 1.0)));
  p.nu = std::sqrt(dd / ((nd - dd) * (nd - 1.0)));
  p.c = (nd - 2.0 * dd) * std::sqrt((nd - 1.0) / (dd * (nd - dd)));
  p.lambda = 1.0 / std::sqrt(2.0 * nd - 1.0);
  return p;
}

double welch_mu(std::size_t d, std::size_t n) {
  if (n <= 1 || n <= d || d == 0) return 0.0;
  return frame_params(d, n).mu;
}

DoublingWindow doubling_window(std::size_t n) {
  const double nd = static_cast<double>(n);
  const double root = std::sqrt(4.0 * nd - 3.0);
  return {-(root - 1.0) / (2.0 * (nd - 1.0)), (root + 1.0) / (2.0 * (nd - 1.0))};
}

bool doubling_feasible(std::size_t d, std::size_t n) {
  return std::abs(frame_params(d, n).c) <= 1.0 + 1e-14;
}

Complex doubling_beta(double c, Epsilon epsilon) {
  const double clamped = std::clamp(c, -1.0, 1.0);
  return {-clamped, to_double(epsilon) * std::sqrt(1.0 - clamped * clamped)};
}

Complex strohmer_alpha(std::size_t m) {
  const double md = static_cast<double>(m);
  return {-1.0 / std::sqrt(md), std::sqrt(1.0 - 1.0 / md)};
}

SignatureInfo verify_signature(const ComplexMatrix& s) {
  if (!s.is_square() || s.rows() < 2) throw Error("dim", "signature matrix must be square with n >= 2");
  const std::size_t n = s.rows();
  const double nd = static_cast<double>(n);

  double skew = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) skew += std::norm(s(i, j) - std::conj(s(j, i)));
  }
  if (std::sqrt(skew) > kEntryTol * nd) throw Error("not_hermitian", "S differs from S*");

  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(s(i, i)) > kEntryTol) throw Error("bad_diagonal", "nonzero diagonal at " + std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && std::abs(std::abs(s(i, j)) - 1.0) > kEntryTol) {
        throw Error("not_unimodular",
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") has modulus " +
                        std::to_string(std::abs(s(i, j))));
      }
    }
  }

  // c minimizes ‖S² - cS - (n-1)I‖_F; tr(S) = 0 so c = Re<S, S²> / ‖S‖².
  const ComplexMatrix s2 = matmul(s, s);
  double inner = 0.0;
  double norm2 = 0.0;
  for (std::size_t k = 0; k < n * n; ++k) {
    inner += (std::conj(s.entries()[k]) * s2.entries()[k]).real();
    norm2 += std::norm(s.entries()[k]);
  }
  const double c = inner / norm2;

  ComplexMatrix rel = s2;
  for (std::size_t k = 0; k < n * n; ++k) rel.entries()[k] -= c * s.entries()[k];
  for (std::size_t i = 0; i < n; ++i) rel(i, i) -= nd - 1.0;
  const double residual = frob_norm(rel);
  if (residual > kRelationTol * nd) {
    throw Error("no_quadratic_relation", "‖S² - cS - (n-1)I‖_F = " + std::to_string(residual));
  }

  // Inverting c = (n-2d)sqrt((n-1)/(d(n-d))) gives d = n/2 - (n/2) c / sqrt(4(n-1) + c²).
  const double d_real = nd / 2.0 - (nd / 2.0) * c / std::sqrt(4.0 * (nd - 1.0) + c * c);
  const double d_round = std::round(d_real);
  if (std::abs(d_real - d_round) > kIntegralTol || d_round < 1.0 || d_round > nd - 1.0) {
    throw Error("nonintegral_d", "recovered d = " + std::to_string(d_real));
  }
  return {static_cast<std::size_t>(d_round), n, c, residual};
}

SignatureMatrix SignatureMatrix::certify(const ComplexMatrix& s) {
  const SignatureInfo info = verify_signature(s);
  const std::size_t n = s.rows();
  ComplexMatrix clean(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (s(i, j) + std::conj(s(j, i)));
      clean(i, j) = v;
      clean(j, i) = std::conj(v);
    }
  }
  return SignatureMatrix(std::move(clean), info);
}

SignatureMatrix strohmer_signature(const CoreAdjacency& a, std::size_t m) {
  const std::size_t n = a.n();
  if (m <= 2 || m != n + 1) {
    throw Error("order_too_small", "need m = n+1 > 2, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  }
  const Complex alpha = strohmer_alpha(m);
  ComplexMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s(i, j) = static_cast<double>(a(i, j)) * alpha + static_cast<double>(a(j, i)) * std::conj(alpha);
    }
  }
  try {
    return SignatureMatrix::certify(s);
  } catch (const Error& e) {
    throw Error("not_signature", std::string("alpha A + conj(alpha) Aᵀ rejected (") + e.what() + ")");
  }
}

SignatureMatrix conference_signature(const SkewHadamard& h) {
  const SkewHadamard normal = normalize_hadamard(h);
  const std::size_t m = normal.order();
  ComplexMatrix s(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j) s(i, j) = Complex{0.0, static_cast<double>(normal(i, j))};
    }
  }
  return SignatureMatrix::certify(s);
}

SignatureMatrix double_signature(const SignatureMatrix& s, Epsilon epsilon) {
  const std::size_t n = s.n();
  // c from the certified integral d; the least-squares value agrees to
  // rounding error.
  const double c = frame_params(s.d(), n).c;
  if (std::abs(c) > 1.0 + 1e-14) {
    throw Error("infeasible_c", "|c| = " + std::to_string(std::abs(c)) + " > 1 for d=" + std::to_string(s.d()) +
                                    " n=" + std::to_string(n));
  }
  const Complex beta = doubling_beta(c, epsilon);
  const ComplexMatrix& base = s.matrix();
  ComplexMatrix sigma(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex v = base(i, j);
      const Complex diag_shift = i == j ? beta : Complex{};
      sigma(i, j) = v;
      sigma(i, j + n) = v + diag_shift;
      sigma(i + n, j) = v + std::conj(diag_shift);
      sigma(i + n, j + n) = -v;
    }
  }
  return SignatureMatrix::certify(sigma);
}

bool idempotent_check(const CoreAdjacency& a) {
  const std::size_t n = a.n();
  if (n % 4 != 3) throw Error("wrong_residue", "idempotent check needs n = 3 mod 4, got " + std::to_string(n));
  const double nd = static_cast<double>(n);
  const double d = (nd - 1.0) / 2.0;
  const Complex z{-1.0 / (2.0 * nd), std::sqrt(nd) / (2.0 * nd)};

  ComplexMatrix e1(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      e1(i, j) = static_cast<double>(a(i, j)) * z + static_cast<double>(a(j, i)) * std::conj(z);
    }
    e1(i, i) += d / nd;
  }
  const double idem = frob_norm(matmul(e1, e1) - e1);

  // E1 J has every entry equal to the row sum of E1.
  double row_sums = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex sum{};
    for (std::size_t j = 0; j < n; ++j) sum += e1(i, j);
    row_sums += std::norm(sum) * nd;
  }
  const double ej = std::sqrt(row_sums);
  return idem <= 1e-10 * nd && ej <= 1e-10 * nd;
}

}  // namespace etf
