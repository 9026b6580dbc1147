#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "pmm/linalg.hpp"

namespace pmm {

// Declared smoothness bounds: mu I <= hess <= L I, hess is L_H-Lipschitz.
struct SmoothnessConstants {
  double mu = 0.0;
  double L = 0.0;
  double L_H = 0.0;
};

// f(x) = ½ (x−z)ᵀ H (x−z)
struct QuadraticSpec {
  Matrix H;
  Vector z;
};

// f(x) = ½ (x−z)ᵀ H (x−z) + w Σ_j log cosh(x_j − z_j)
struct LogCoshQuadraticSpec {
  Matrix H;
  Vector z;
  double weight = 0.0;
};

// The analytic family a function was built from, kept so problem files round-trip.
using FunctionOrigin = std::variant<QuadraticSpec, LogCoshQuadraticSpec>;

class SmoothFunction {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;
  using HessianFn = std::function<Matrix(const Vector&)>;

  SmoothFunction(int dim, ValueFn value, GradientFn gradient, HessianFn hessian,
                 std::optional<SmoothnessConstants> constants = std::nullopt,
                 std::optional<FunctionOrigin> origin = std::nullopt);

  int dim() const noexcept { return dim_; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;

  double operator()(const Vector& x) const { return value(x); }

  const std::optional<SmoothnessConstants>& constants() const noexcept { return constants_; }
  const std::optional<FunctionOrigin>& origin() const noexcept { return origin_; }

  SmoothFunction with_constants(SmoothnessConstants constants) const;

 private:
  void check_dim(const Vector& x) const;

  int dim_;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
  std::optional<SmoothnessConstants> constants_;
  std::optional<FunctionOrigin> origin_;
};

/// f(x) = ½‖A(x−z)‖² with H = AᵀA, mu = λ_min(H), L = λ_max(H), L_H = 0.
/// Throws InvalidArgument when A is not square, sizes disagree, or A is rank deficient.
SmoothFunction make_quadratic(const Matrix& A, const Vector& z);

/// Same family, parametrised by a symmetric positive-definite Hessian; A is its Cholesky factor.
SmoothFunction quadratic_from_hessian(const Matrix& H, const Vector& z);

/// Strongly convex, non-quadratic built-in with minimizer z and L_H = w·4/(3√3).
SmoothFunction make_logcosh_quadratic(const Matrix& H, const Vector& z, double weight);

}  // namespace pmm
