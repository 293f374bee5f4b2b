#include "l2a/linalg.hpp"

#include <stdexcept>

namespace l2a {

Matrix zero_matrix(int rows, int cols) {
  return Matrix(rows, std::vector<Rational>(cols, Rational(0)));
}

Matrix identity_matrix(int n) {
  Matrix m = zero_matrix(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  size_t inner = a[0].size();
  if (inner != b.size()) throw std::invalid_argument("matmul: shape mismatch");
  size_t cols = b.empty() ? 0 : b[0].size();
  Matrix out = zero_matrix(static_cast<int>(a.size()), static_cast<int>(cols));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

std::vector<int> rref(Matrix& a, int cols) {
  std::vector<int> pivots;
  int rows = static_cast<int>(a.size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    // pivots are searched in the first cols columns; row operations act on whole rows
    int width = static_cast<int>(a[r].size());
    Rational inv = 1 / a[r][c];
    for (int j = c; j < width; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (int j = c; j < width; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(Matrix a, int cols) { return static_cast<int>(rref(a, cols).size()); }

std::vector<std::vector<Rational>> nullspace(Matrix a, int cols) {
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b,
                                           int cols) {
  Matrix aug = a;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto pivots = rref(aug, cols + 1);
  std::vector<Rational> x(cols, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;
    x[pivots[r]] = aug[r][cols];
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
  int n = static_cast<int>(a.size());
  Matrix aug = a;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(aug[i].size()) != n) throw std::invalid_argument("inverse: not square");
    for (int j = 0; j < n; ++j) aug[i].push_back(Rational(i == j ? 1 : 0));
  }
  auto pivots = rref(aug, n);
  if (static_cast<int>(pivots.size()) < n) return std::nullopt;
  Matrix out = zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

}  // namespace l2a
