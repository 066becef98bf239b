#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace etf {

// A ±1 matrix H of order m with HᵀH = mI and H + Hᵀ = 2I, i.e. H = C + I
// for a skew-symmetric conference matrix C. Construction verifies both
// identities in exact integer arithmetic.
class SkewHadamard {
 public:
  // Throws Error("not_skew_hadamard") if the entries fail either identity.
  SkewHadamard(std::size_t order, std::vector<std::int8_t> entries);

  std::size_t order() const noexcept { return order_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
  const std::vector<std::int8_t>& entries() const noexcept { return entries_; }

  friend bool operator==(const SkewHadamard&, const SkewHadamard&) = default;

 private:
  std::size_t order_;
  std::vector<std::int8_t> entries_;
};

// Exact checks on a raw ±1 array, usable before a SkewHadamard exists.
bool is_hadamard(std::size_t order, const std::vector<std::int8_t>& entries);
bool is_skew(std::size_t order, const std::vector<std::int8_t>& entries);

// The 0/1 core adjacency matrix A of a normalized skew Hadamard: the
// normalization reads [[1, 1ᵀ], [-1, A - Aᵀ + I]].
//
// Only the 0/1 alphabet and the zero diagonal are enforced here, so that
// callers can probe the checks below with non-tournament matrices. Matrices
// returned by core_adjacency() additionally satisfy is_tournament() and
// is_regular().
class CoreAdjacency {
 public:
  CoreAdjacency(std::size_t n, std::vector<std::uint8_t> entries);

  std::size_t n() const noexcept { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<std::uint8_t>& entries() const noexcept { return entries_; }

  // A + Aᵀ + I = J.
  bool is_tournament() const;
  // Every row sum equals (n-1)/2.
  bool is_regular() const;

  friend bool operator==(const CoreAdjacency&, const CoreAdjacency&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> entries_;
};

bool is_prime(std::uint64_t q);

// Paley type I construction over the prime field Z_q, q ≡ 3 (mod 4).
// Rows and columns are indexed by {∞} ∪ Z_q with ∞ first; the result is
// already normalized.
SkewHadamard paley_skew_hadamard(std::uint64_t q);

// [[C+I, C+I], [C-I, -C+I]], a skew Hadamard of order 2m.
SkewHadamard double_hadamard(const SkewHadamard& h);

// DHD with D = diag(first row of H): top row all +1.
SkewHadamard normalize_hadamard(const SkewHadamard& h);

CoreAdjacency core_adjacency(const SkewHadamard& h);

// Exact integer test of the doubly regular tournament relations
//   A Aᵀ = Aᵀ A = ((n-1)/2) I + ((n-3)/4) (A + Aᵀ)
//   A²  = ((n-3)/4) A + ((n+1)/4) Aᵀ
// Requires n ≡ 3 (mod 4), else Error("wrong_residue").
bool association_check(const CoreAdjacency& a);

}  // namespace etf
