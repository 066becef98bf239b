#include "etf_forge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "etf_forge/error.hpp"

namespace etf {

namespace {

// Plain (a*b) without the NaN-recovery path of std::complex multiplication,
// which otherwise dominates the inner loops.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// conj(a) * b
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() + a.imag() * b.imag(), a.real() * b.imag() - a.imag() * b.real()};
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error("dim", "shape mismatch " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                           " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error("dim", "expected " + std::to_string(rows_ * cols_) + " entries, got " +
                           std::to_string(data_.size()));
  }
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error("non_finite", "matrix entry is NaN or infinite");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error("dim", "ragged row list");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z = mul(z, scale);
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error("dim", "matmul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " by " +
                           std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += mul(aik, b_row[j]);
    }
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  }
  return out;
}

ComplexMatrix gram(const ComplexMatrix& a) {
  const std::size_t n = a.cols();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const auto a_row = a.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex aki = a_row[i];
      if (aki == Complex{}) continue;
      auto out_row = out.row(i);
      for (std::size_t j = 0; j < n; ++j) out_row[j] += cmul(aki, a_row[j]);
    }
  }
  return out;
}

double frob_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const auto& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

double max_offdiag_abs(const ComplexMatrix& a) {
  if (a.rows() * a.cols() <= 1) throw Error("degenerate", "no off-diagonal entries");
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) best = std::max(best, std::abs(a(i, j)));
    }
  }
  return best;
}

double trace_real(const ComplexMatrix& a) {
  const std::size_t n = std::min(a.rows(), a.cols());
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += a(i, i).real();
  return t;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error("dim", "hermitian_eigen needs a square matrix, got " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()));
  }
  const std::size_t n = m.rows();
  const double norm = frob_norm(m);
  const double tol = norm > 0.0 ? 1e-14 * norm : 1e-14;
  {
    double skew = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) skew += std::norm(m(i, j) - std::conj(m(j, i)));
    }
    const double bound = norm > 0.0 ? 1e-10 * static_cast<double>(n) * norm : 1e-14;
    if (std::sqrt(skew) > bound) throw Error("not_hermitian", "input to hermitian_eigen is not Hermitian");
  }

  // Work on (M + M*)/2. `w` holds the eigenvector basis transposed, so both
  // the matrix and the basis are updated along contiguous rows.
  std::vector<Complex> a(n * n);
  std::vector<Complex> w(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = 0.5 * (m(i, j) + std::conj(m(j, i)));
    a[i * n + i].imag(0.0);
    w[i * n + i] = 1.0;
  }

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a[i * n + j]);
    }
    return std::sqrt(2.0 * s);
  };

  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
    if (off_mass() <= tol) {
      converged = true;
      break;
    }
    if (sweep == kJacobiMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();

        const double theta = (aqq - app) / (2.0 * r);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex s_phase = s * phase;            // s e^{i phi}
        const Complex s_phase_conj = std::conj(s_phase);  // s e^{-i phi}

        Complex* row_p = a.data() + p * n;
        Complex* row_q = a.data() + q * n;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex xp = row_p[k];
          const Complex xq = row_q[k];
          row_p[k] = c * xp - mul(s_phase, xq);
          row_q[k] = mul(s_phase_conj, xp) + c * xq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a[k * n + p] = std::conj(row_p[k]);
          a[k * n + q] = std::conj(row_q[k]);
        }
        row_p[p] = app - t * r;
        row_q[q] = aqq + t * r;
        row_p[q] = 0.0;
        row_q[p] = 0.0;

        Complex* vp = w.data() + p * n;
        Complex* vq = w.data() + q * n;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex xp = vp[k];
          const Complex xq = vq[k];
          vp[k] = c * xp - mul(s_phase_conj, xq);
          vq[k] = mul(s_phase, xp) + c * xq;
        }
      }
    }
  }
  if (!converged) {
    throw Error("no_convergence", "cyclic Jacobi did not converge in " + std::to_string(kJacobiMaxSweeps) +
                                      " sweeps (n=" + std::to_string(n) + ")");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x].real() > a[y * n + y].real();
  });

  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a[src * n + src].real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = w[src * n + i];
  }
  return out;
}

}  // namespace etf
