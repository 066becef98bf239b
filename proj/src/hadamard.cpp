#include "etf_forge/hadamard.hpp"

#include <string>

#include "etf_forge/error.hpp"

namespace etf {

namespace {

using IntMatrix = std::vector<std::int64_t>;

IntMatrix product(const IntMatrix& x, const IntMatrix& y, std::size_t n) {
  IntMatrix out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t xik = x[i * n + k];
      if (xik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += xik * y[k * n + j];
    }
  }
  return out;
}

IntMatrix transpose(const IntMatrix& x, std::size_t n) {
  IntMatrix out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j * n + i] = x[i * n + j];
  }
  return out;
}

}  // namespace

bool is_hadamard(std::size_t order, const std::vector<std::int8_t>& entries) {
  if (order == 0 || entries.size() != order * order) return false;
  for (auto e : entries) {
    if (e != 1 && e != -1) return false;
  }
  // Rows pairwise orthogonal with squared norm m is equivalent to HᵀH = mI
  // for square H.
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i; j < order; ++j) {
      std::int64_t dot = 0;
      for (std::size_t k = 0; k < order; ++k) dot += entries[i * order + k] * entries[j * order + k];
      if (dot != (i == j ? static_cast<std::int64_t>(order) : 0)) return false;
    }
  }
  return true;
}

bool is_skew(std::size_t order, const std::vector<std::int8_t>& entries) {
  if (entries.size() != order * order) return false;
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) {
      const int sum = entries[i * order + j] + entries[j * order + i];
      if (sum != (i == j ? 2 : 0)) return false;
    }
  }
  return true;
}

SkewHadamard::SkewHadamard(std::size_t order, std::vector<std::int8_t> entries)
    : order_(order), entries_(std::move(entries)) {
  if (!is_hadamard(order_, entries_)) {
    throw Error("not_skew_hadamard", "order " + std::to_string(order_) + " matrix fails HᵀH = mI");
  }
  if (!is_skew(order_, entries_)) {
    throw Error("not_skew_hadamard", "order " + std::to_string(order_) + " matrix fails H + Hᵀ = 2I");
  }
}

CoreAdjacency::CoreAdjacency(std::size_t n, std::vector<std::uint8_t> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ == 0 || entries_.size() != n_ * n_) throw Error("dim", "core adjacency needs n*n entries");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const auto e = entries_[i * n_ + j];
      if (e > 1) throw Error("bad_entry", "core adjacency entries must be 0 or 1");
      if (i == j && e != 0) throw Error("bad_entry", "core adjacency diagonal must be zero");
    }
  }
}

bool CoreAdjacency::is_tournament() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const int sum = entries_[i * n_ + j] + entries_[j * n_ + i] + (i == j ? 1 : 0);
      if (sum != 1) return false;
    }
  }
  return true;
}

bool CoreAdjacency::is_regular() const {
  if (n_ % 2 == 0) return false;
  const std::size_t target = (n_ - 1) / 2;
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t sum = 0;
    for (std::size_t j = 0; j < n_; ++j) sum += entries_[i * n_ + j];
    if (sum != target) return false;
  }
  return true;
}

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (std::uint64_t f = 3; f * f <= q; f += 2) {
    if (q % f == 0) return false;
  }
  return true;
}

SkewHadamard paley_skew_hadamard(std::uint64_t q) {
  if (!is_prime(q)) throw Error("not_prime", std::to_string(q) + " is not prime");
  if (q % 4 != 3) throw Error("wrong_residue", std::to_string(q) + " is not 3 mod 4");

  std::vector<std::int8_t> chi(q, -1);
  chi[0] = 0;
  for (std::uint64_t x = 1; x < q; ++x) chi[(x * x) % q] = 1;

  const std::size_t m = q + 1;
  std::vector<std::int8_t> h(m * m);
  for (std::size_t j = 0; j < m; ++j) h[j] = 1;
  for (std::size_t x = 0; x < q; ++x) {
    const std::size_t row = x + 1;
    h[row * m] = -1;
    for (std::size_t y = 0; y < q; ++y) {
      h[row * m + y + 1] = x == y ? 1 : chi[(y + q - x) % q];
    }
  }
  return SkewHadamard(m, std::move(h));
}

SkewHadamard double_hadamard(const SkewHadamard& h) {
  const std::size_t m = h.order();
  const std::size_t m2 = 2 * m;
  std::vector<std::int8_t> out(m2 * m2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const int c = h(i, j) - (i == j ? 1 : 0);
      const int id = i == j ? 1 : 0;
      out[i * m2 + j] = static_cast<std::int8_t>(c + id);
      out[i * m2 + j + m] = static_cast<std::int8_t>(c + id);
      out[(i + m) * m2 + j] = static_cast<std::int8_t>(c - id);
      out[(i + m) * m2 + j + m] = static_cast<std::int8_t>(-c + id);
    }
  }
  return SkewHadamard(m2, std::move(out));
}

SkewHadamard normalize_hadamard(const SkewHadamard& h) {
  const std::size_t m = h.order();
  std::vector<std::int8_t> out(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out[i * m + j] = static_cast<std::int8_t>(h(0, i) * h(i, j) * h(0, j));
    }
  }
  return SkewHadamard(m, std::move(out));
}

CoreAdjacency core_adjacency(const SkewHadamard& h) {
  const std::size_t m = h.order();
  if (m <= 2) throw Error("order_too_small", "core adjacency needs order > 2, got " + std::to_string(m));
  const SkewHadamard normal = normalize_hadamard(h);
  const std::size_t n = m - 1;
  std::vector<std::uint8_t> a(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && normal(i + 1, j + 1) == 1) a[i * n + j] = 1;
    }
  }
  CoreAdjacency out(n, std::move(a));
  if (!out.is_tournament() || !out.is_regular()) {
    throw Error("not_skew_hadamard", "core of normalized matrix is not a regular tournament");
  }
  return out;
}

bool association_check(const CoreAdjacency& a) {
  const std::size_t n = a.n();
  if (n % 4 != 3) throw Error("wrong_residue", "association check needs n = 3 mod 4, got " + std::to_string(n));
  const auto ni = static_cast<std::int64_t>(n);

  IntMatrix x(a.entries().begin(), a.entries().end());
  IntMatrix xt = transpose(x, n);
  const IntMatrix aat = product(x, xt, n);
  const IntMatrix ata = product(xt, x, n);
  const IntMatrix aa = product(x, x, n);

  const std::int64_t id_coef = (ni - 1) / 2;
  const std::int64_t sym_coef = (ni - 3) / 4;
  const std::int64_t a_coef = (ni - 3) / 4;
  const std::int64_t at_coef = (ni + 1) / 4;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i * n + j;
      const std::int64_t rhs_sym = (i == j ? id_coef : 0) + sym_coef * (x[k] + xt[k]);
      if (aat[k] != rhs_sym || ata[k] != rhs_sym) return false;
      if (aa[k] != a_coef * x[k] + at_coef * xt[k]) return false;
    }
  }
  return true;
}

}  // namespace etf
