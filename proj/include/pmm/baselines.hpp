#pragma once

#include <optional>
#include <vector>

#include "pmm/problem.hpp"

namespace pmm {

struct PngConfig {
  double c = 1.0;          // constraint level ∇f_iᵀv ≥ c
  double step = 0.01;
  double eps_stop = 1e-3;
  int max_iters = 1000000;

  /// Throws ConfigurationError unless every field is positive.
  void validate() const;
};

/// argmin_v ½‖∇f0(x) − v‖² subject to ∇f_i(x)ᵀv ≥ c, by enumerating active sets.
/// Throws Infeasible when no feasible KKT point exists and SizeLimit for n > 20.
Vector png_vector(const ObjectiveSet& F, const SmoothFunction& f0, const Vector& x, double c);

enum class PngStatus { stationary, budget_exceeded, infeasible };

const char* to_string(PngStatus status);

struct PngResult {
  std::vector<Vector> trajectory;  // starts with x0
  Vector point;
  PngStatus status = PngStatus::budget_exceeded;
  int iterations = 0;
  double pareto_gap = 0.0;  // min_β ‖∇f_β(point)‖
  double angle = 0.0;       // angle between v_c(point) and −∇f0(point), radians
};

/// min over the simplex of ‖∇F(x)ᵀβ‖₂.
double pareto_stationarity_gap(const ObjectiveSet& F, const Vector& x);

/// Descends along −v_c(x) while the Pareto gap exceeds eps_stop, capping each displacement at
/// half the gap over L so the iterate cannot jump across the Pareto set. Inside the eps_stop
/// band it steps along −∇f0. Stops once the gap is ≤ eps_stop and v_c(x) is antiparallel to
/// ∇f0(x) within 1e-6 rad. Once the angle stops improving inside the band, a Gauss-Newton
/// polish solves for the point on the gap = eps_stop boundary where the two are antiparallel;
/// the polished point is accepted only if it passes the same test.
PngResult png_descent(const ObjectiveSet& F, const SmoothFunction& f0, const Vector& x0,
                      const PngConfig& config);

/// f_1,f_2 = ½(x ± e1)ᵀH(x ± e1) and f0 = ½‖x − e2‖² on R².
ProblemInstance png_counterexample_instance(const Matrix& H);

/// Convex weights β with Σ β_i v_i = 0 when the vectors are Pareto generic.
std::optional<Vector> pareto_weights(const std::vector<Vector>& vectors);

/// Numerical rank n−1 and a single-signed null vector.
bool is_pareto_generic(const std::vector<Vector>& vectors);

/// Pareto generic, 1 < n ≤ d, and v0 outside span(v_1..v_n).
bool is_preference_generic(const Vector& v0, const std::vector<Vector>& vectors);

/// Π_V + Π_{V⊥}Π_{U⊥} with U = span(vectors) and V = span(v0)^⊥. Not symmetric in general.
Matrix positive_definite_rotation(const Vector& v0, const std::vector<Vector>& vectors);

struct ImpossibilityInstance {
  ProblemInstance problem;
  Matrix hessian;             // shared Hessian H of the objectives
  std::vector<Vector> centers;  // z_i = −H⁻¹ v_i
  Vector weights;             // β with Σ β_i v_i = 0, so Σ β_i z_i = 0
};

/// Instance whose objectives have gradients v_i at 0, f0 = ½‖x + v0‖², and 0 preference optimal.
/// Throws InvalidArgument unless the input is preference generic.
ImpossibilityInstance build_impossibility_instance(const Vector& v0, const std::vector<Vector>& vectors);

}  // namespace pmm
