#include "pmm/function.hpp"

#include <cmath>
#include <utility>

#include "pmm/errors.hpp"

namespace pmm {

namespace {

constexpr double kRankTolerance = 1e-12;

void require_square(const Matrix& m, const Vector& z, const char* what) {
  if (m.rows() != m.cols()) throw InvalidArgument(std::string(what) + " must be square");
  if (m.rows() != z.size()) throw InvalidArgument(std::string(what) + " and z have different sizes");
  if (m.rows() == 0) throw InvalidArgument("dimension must be positive");
  if (!m.allFinite() || !z.allFinite()) throw InvalidArgument(std::string(what) + " has non-finite entries");
}

Matrix checked_symmetric(const Matrix& H) {
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("Hessian must be symmetric");
  }
  return 0.5 * (H + H.transpose());
}

// Numerically stable log(cosh(t)).
double log_cosh(double t) {
  const double a = std::abs(t);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

}  // namespace

SmoothFunction::SmoothFunction(int dim, ValueFn value, GradientFn gradient, HessianFn hessian,
                               std::optional<SmoothnessConstants> constants,
                               std::optional<FunctionOrigin> origin)
    : dim_(dim),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      constants_(constants),
      origin_(std::move(origin)) {
  if (dim_ <= 0) throw InvalidArgument("function dimension must be positive");
  if (!value_ || !gradient_ || !hessian_) throw InvalidArgument("function callbacks must be set");
  if (constants_) {
    const auto& c = *constants_;
    if (!(c.mu >= 0.0) || !(c.L > 0.0) || !(c.L_H >= 0.0) || c.mu > c.L) {
      throw InvalidArgument("declared constants must satisfy 0 <= mu <= L, L > 0, L_H >= 0");
    }
  }
}

void SmoothFunction::check_dim(const Vector& x) const {
  if (x.size() != dim_) throw InvalidArgument("point has dimension " + std::to_string(x.size()) +
                                              ", function expects " + std::to_string(dim_));
}

double SmoothFunction::value(const Vector& x) const {
  check_dim(x);
  return value_(x);
}

Vector SmoothFunction::gradient(const Vector& x) const {
  check_dim(x);
  return gradient_(x);
}

Matrix SmoothFunction::hessian(const Vector& x) const {
  check_dim(x);
  return hessian_(x);
}

SmoothFunction SmoothFunction::with_constants(SmoothnessConstants constants) const {
  return SmoothFunction(dim_, value_, gradient_, hessian_, constants, origin_);
}

SmoothFunction make_quadratic(const Matrix& A, const Vector& z) {
  require_square(A, z, "A");
  Eigen::JacobiSVD<Matrix> svd(A);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= kRankTolerance * s(0)) throw InvalidArgument("A is rank deficient");
  const Matrix H = A.transpose() * A;
  Eigen::SelfAdjointEigenSolver<Matrix> es(H, Eigen::EigenvaluesOnly);
  SmoothnessConstants c{es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff(), 0.0};
  const int d = static_cast<int>(z.size());
  return SmoothFunction(
      d, [A, z](const Vector& x) { return 0.5 * (A * (x - z)).squaredNorm(); },
      [H, z](const Vector& x) -> Vector { return H * (x - z); },
      [H](const Vector&) -> Matrix { return H; }, c, QuadraticSpec{H, z});
}

SmoothFunction quadratic_from_hessian(const Matrix& H_in, const Vector& z) {
  require_square(H_in, z, "H");
  const Matrix H = checked_symmetric(H_in);
  Eigen::LLT<Matrix> llt(H);
  if (llt.info() != Eigen::Success) throw InvalidArgument("H is not positive definite");
  const Matrix A = llt.matrixU();  // AᵀA = H
  Eigen::SelfAdjointEigenSolver<Matrix> es(H, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= kRankTolerance * hi) throw InvalidArgument("H is numerically singular");
  const int d = static_cast<int>(z.size());
  return SmoothFunction(
      d, [A, z](const Vector& x) { return 0.5 * (A * (x - z)).squaredNorm(); },
      [H, z](const Vector& x) -> Vector { return H * (x - z); },
      [H](const Vector&) -> Matrix { return H; }, SmoothnessConstants{lo, hi, 0.0},
      QuadraticSpec{H, z});
}

SmoothFunction make_logcosh_quadratic(const Matrix& H_in, const Vector& z, double weight) {
  require_square(H_in, z, "H");
  if (!(weight >= 0.0) || !std::isfinite(weight)) throw InvalidArgument("weight must be finite and >= 0");
  const Matrix H = checked_symmetric(H_in);
  Eigen::SelfAdjointEigenSolver<Matrix> es(H, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > kRankTolerance * hi)) throw InvalidArgument("H is not positive definite");
  // sup |d/dt sech²(t)| = 4/(3√3)
  const double l_h = weight * 4.0 / (3.0 * std::sqrt(3.0));
  const int d = static_cast<int>(z.size());
  return SmoothFunction(
      d,
      [H, z, weight](const Vector& x) {
        const Vector u = x - z;
        double s = 0.0;
        for (Eigen::Index j = 0; j < u.size(); ++j) s += log_cosh(u(j));
        return 0.5 * u.dot(H * u) + weight * s;
      },
      [H, z, weight](const Vector& x) -> Vector {
        const Vector u = x - z;
        return H * u + weight * u.array().tanh().matrix();
      },
      [H, z, weight](const Vector& x) -> Matrix {
        const Eigen::ArrayXd c = (x - z).array().cosh();
        Matrix out = H;
        out.diagonal().array() += weight / (c * c);
        return out;
      },
      SmoothnessConstants{lo, hi + weight, l_h}, LogCoshQuadraticSpec{H, z, weight});
}

}  // namespace pmm
