#pragma once

#include <cstddef>

#include "etf_forge/hadamard.hpp"
#include "etf_forge/linalg.hpp"

namespace etf {

// Sign choice for the imaginary part of the doubling scalar beta.
enum class Epsilon : int { plus = 1, minus = -1 };

inline Epsilon opposite(Epsilon e) { return e == Epsilon::plus ? Epsilon::minus : Epsilon::plus; }
inline double to_double(Epsilon e) { return static_cast<double>(static_cast<int>(e)); }

// Scalars attached to a d x n frame size.
//   mu     = sqrt((n-d) / (d(n-1)))        Welch bound
//   nu     = sqrt(d / ((n-d)(n-1)))        Welch bound of the complement
//   c      = (n-2d) sqrt((n-1) / (d(n-d))) quadratic coefficient of S² = cS + (n-1)I
//   lambda = 1 / sqrt(2n-1)                Welch bound of the n x 2n double
struct FrameParams {
  std::size_t d;
  std::size_t n;
  double mu;
  double nu;
  double c;
  double lambda;
};

FrameParams frame_params(std::size_t d, std::size_t n);

// Welch bound for n unit vectors in C^d. Zero when n <= d (orthonormal sets
// exist) or n == 1.
double welch_mu(std::size_t d, std::size_t n);

// The interval of n/d - 2 on which |c| <= 1.
struct DoublingWindow {
  double lower;
  double upper;
};
DoublingWindow doubling_window(std::size_t n);

// |c| <= 1 (up to 1e-14), the hypothesis of ETF doubling.
bool doubling_feasible(std::size_t d, std::size_t n);

Complex doubling_beta(double c, Epsilon epsilon);
Complex strohmer_alpha(std::size_t m);

// Outcome of checking a candidate signature matrix.
struct SignatureInfo {
  std::size_t d;
  std::size_t n;
  double c;         // least-squares coefficient of S in S² - (n-1)I
  double residual;  // ‖S² - cS - (n-1)I‖_F
};

// Hermitian, zero diagonal, unimodular off-diagonal, S² = cS + (n-1)I with c
// recovered from the data, and d solved from c = (n-2d)sqrt((n-1)/(d(n-d))).
// Errors: "dim", "not_hermitian", "bad_diagonal", "not_unimodular",
// "no_quadratic_relation", "nonintegral_d".
SignatureInfo verify_signature(const ComplexMatrix& s);

// A matrix that passed verify_signature. The stored matrix is cleaned to be
// exactly Hermitian with an exactly zero diagonal.
class SignatureMatrix {
 public:
  static SignatureMatrix certify(const ComplexMatrix& s);

  const ComplexMatrix& matrix() const noexcept { return s_; }
  std::size_t n() const noexcept { return info_.n; }
  std::size_t d() const noexcept { return info_.d; }
  double c() const noexcept { return info_.c; }
  double residual() const noexcept { return info_.residual; }

 private:
  SignatureMatrix(ComplexMatrix s, SignatureInfo info) : s_(std::move(s)), info_(info) {}

  ComplexMatrix s_;
  SignatureInfo info_;
};

// S = alpha A + conj(alpha) Aᵀ, the signature of an (n-1)/2 x n ETF.
// Error "order_too_small" unless m = n+1 > 2; "not_signature" if A is not a
// skew Hadamard core.
SignatureMatrix strohmer_signature(const CoreAdjacency& a, std::size_t m);

// S = i (H_normalized - I), the signature of an m/2 x m ETF.
SignatureMatrix conference_signature(const SkewHadamard& h);

// [[S, S + beta I], [S + conj(beta) I, -S]]. Error "infeasible_c" if |c| > 1.
SignatureMatrix double_signature(const SignatureMatrix& s, Epsilon epsilon = Epsilon::plus);

// E1 = zA + conj(z)Aᵀ + (d/n)I with z = -1/(2n) + i sqrt(n)/(2n): checks
// E1² = E1 and E1 J = 0 within 1e-10 n.
bool idempotent_check(const CoreAdjacency& a);

}  // namespace etf
