#pragma once

#include <optional>
#include <vector>

#include "pmm/function.hpp"
#include "pmm/simplex.hpp"

namespace pmm {

/// The objectives f_1..f_n on R^d with shared constants (mu, L, L_H) and cached minimizers.
class ObjectiveSet {
 public:
  /// Shared constants are taken from the objectives' declarations: smallest mu, largest L and L_H.
  /// Throws ConfigurationError when any objective lacks declared constants.
  explicit ObjectiveSet(std::vector<SmoothFunction> objectives);
  ObjectiveSet(std::vector<SmoothFunction> objectives, SmoothnessConstants shared);

  int size() const noexcept { return static_cast<int>(objectives_.size()); }
  int dim() const noexcept { return objectives_.front().dim(); }
  const SmoothFunction& operator[](int i) const { return objectives_.at(i); }
  const std::vector<SmoothFunction>& objectives() const noexcept { return objectives_; }

  double mu() const noexcept { return constants_.mu; }
  double L() const noexcept { return constants_.L; }
  double L_H() const noexcept { return constants_.L_H; }
  double kappa() const noexcept { return constants_.L / constants_.mu; }
  const SmoothnessConstants& constants() const noexcept { return constants_; }

  /// Largest pairwise distance between cached minimizers.
  double r() const noexcept { return r_; }
  const std::vector<Vector>& minimizers() const noexcept { return minimizers_; }

  /// ∇F(x)ᵀ as a d×n matrix whose i-th column is ∇f_i(x).
  Matrix gradients(const Vector& x) const;
  Vector values(const Vector& x) const;

  /// Σ β_i m_i, the default warm start for x*(β).
  Vector weighted_minimizer(const SimplexPoint& beta) const;

 private:
  void initialise();

  std::vector<SmoothFunction> objectives_;
  SmoothnessConstants constants_;
  std::vector<Vector> minimizers_;
  double r_ = 0.0;
};

/// f_β = Σ β_i f_i, carrying the set's (mu, L, L_H).
SmoothFunction scalarize(const ObjectiveSet& F, const SimplexPoint& beta);

struct ConstantBundle {
  double kappa = 1.0;
  double R_bound = 0.0;  // √κ·r
  double M0 = 0.0;       // κ·R
  double M1 = 0.0;       // 2κ²R(1 + L_H R/mu)
  double mu_g = 0.0;     // n·L0·M1
  /// M1/(2 M0) = κ(1 + L_H R/mu); kept finite when M0 = 0.
  double estimator_ratio = 1.0;
};

ConstantBundle derive_constants(int n, double mu, double L, double L_H, double r, double L0);

/// Throws ConfigurationError when f0 has no declared L (its gradient Lipschitz constant L0).
ConstantBundle derive_constants(const ObjectiveSet& F, const SmoothFunction& f0);

class ProblemInstance {
 public:
  ProblemInstance(ObjectiveSet F, SmoothFunction f0);

  const ObjectiveSet& F() const noexcept { return F_; }
  const SmoothFunction& f0() const noexcept { return f0_; }
  const ConstantBundle& constants() const noexcept { return constants_; }
  double L0() const noexcept { return f0_.constants()->L; }
  int n() const noexcept { return F_.size(); }
  int d() const noexcept { return F_.dim(); }

 private:
  ObjectiveSet F_;
  SmoothFunction f0_;
  ConstantBundle constants_;
};

struct ConstantCheck {
  bool ok = true;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

/// Spot-checks declared mu/L against Hessian eigenvalues at the given points (slack 1e-9).
ConstantCheck validate_constants(const SmoothFunction& f, const std::vector<Vector>& points);

}  // namespace pmm
