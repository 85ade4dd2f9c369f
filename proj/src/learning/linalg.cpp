#include "lbpkit/learning/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lbpkit/error.hpp"

namespace lbpkit {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(r) + " has " +
                                                    std::to_string(rows[r].size()) +
                                                    " columns, expected " + std::to_string(cols));
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (double v : a.row(i)) s += v * v;
  }
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& symmetric, double tolerance, int max_sweeps) {
  if (symmetric.rows() != symmetric.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "eigen-decomposition needs a square matrix");
  }
  const std::size_t n = symmetric.rows();
  Matrix a = symmetric;
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  const double threshold = tolerance * std::max(1.0, frobenius_norm(a));
  int sweep = 0;
  while (sweep < max_sweeps && off_diagonal_norm(a) >= threshold) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p, q); the smaller root keeps |theta| <= pi/4.
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymmetricEigen out;
  out.sweeps = sweep;
  out.vectors = Matrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t col = order[r];
    out.values.push_back(a(col, col));
    std::size_t argmax = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (std::abs(v(k, col)) > std::abs(v(argmax, col))) argmax = k;
    }
    const double sign = v(argmax, col) < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) out.vectors(r, k) = sign * v(k, col);
  }
  return out;
}

}  // namespace lbpkit
