#pragma once

#include "l2a/scalars.hpp"

#include <optional>
#include <vector>

namespace l2a {

using Matrix = std::vector<std::vector<Rational>>;

Matrix zero_matrix(int rows, int cols);
Matrix identity_matrix(int n);
Matrix matmul(const Matrix& a, const Matrix& b);

// in-place reduced row echelon form; returns pivot columns
std::vector<int> rref(Matrix& a, int cols);
int rank(Matrix a, int cols);
// basis of {x : a x = 0}
std::vector<std::vector<Rational>> nullspace(Matrix a, int cols);
std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b,
                                           int cols);
std::optional<Matrix> inverse(const Matrix& a);

}  // namespace l2a
