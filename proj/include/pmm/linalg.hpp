#pragma once

#include <Eigen/Dense>

namespace pmm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// ℓ1→ℓ2 operator norm: the largest column ℓ2 norm.
double norm_1_2(const Matrix& m);

/// Largest singular value.
double spectral_norm(const Matrix& m);

double min_eigenvalue(const Matrix& symmetric);
double max_eigenvalue(const Matrix& symmetric);

/// Numerical rank with singular values below rel_tol * sigma_max treated as zero.
int numerical_rank(const Matrix& m, double rel_tol);

bool all_finite(const Matrix& m);

}  // namespace pmm
