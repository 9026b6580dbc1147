#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pmm/manifold.hpp"

namespace pmm {

/// Quadratic majorizer of β' ↦ f0(x_{β'}), stored relative to its anchor value.
struct SurrogateState {
  ManifoldPoint anchor;
  Vector linear;          // ∇̂x*(x,β)ᵀ ∇f0(x)
  double curvature = 0.0; // μ_g
  double err_term = 0.0;  // err_grad_f0(x, β)

  /// g(β') − g(β) = linearᵀ(β'−β) + ½ μ_g ‖β'−β‖².
  double relative_value(const SimplexPoint& beta) const;

  /// relative_value plus err_term·‖β'−β‖₁: a rigorous bound on f0(x_{β'}) − f0(x_β).
  double upper_bound(const SimplexPoint& beta) const;

  SimplexQuadratic as_simplex_quadratic() const;
};

SurrogateState build_surrogate(const ProblemInstance& problem, const ManifoldPoint& point);

struct StepConstants {
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Largest c1, c2 meeting the convergence proof's constraints, evaluated with the given
/// ‖∇f0(x)‖ and spectral norm ‖∇F(x)ᵀ‖. Returns (1/2, 1) when μ_g = 0.
StepConstants compute_c1_c2(double mu, double L, double L0, const ConstantBundle& constants,
                            double grad_f0_norm, double jacobian_norm);
StepConstants compute_c1_c2(const ProblemInstance& problem, const Vector& x);

/// Outer iteration bound 2 μ_g (f^* − f_*) / (c1² ε0²).
double iteration_bound(double mu_g, double c1, double eps0, double f_max, double f_min);

struct SolverConfig {
  double eps0 = 1e-3;
  double eps = 1e-6;
  double alpha = 0.5;
  int max_outer = 100000;
  int simplex_max_iters = 100000;
  int inner_max_iters = 1000000;
  InnerMethod inner_method = InnerMethod::gradient_descent;
  std::optional<double> c1;  // fixed values; computed per iterate when unset
  std::optional<double> c2;

  /// Throws ConfigurationError naming the violated rule.
  void validate() const;
};

struct StationarityCertificate {
  bool certified = false;
  double residual = 0.0;
  double gap = 0.0;  // ℓ1 gap of the estimated gradient at β
  double err = 0.0;  // err_grad_f0(x, β)
  bool used_reference = false;
};

/// Checks ‖∇f_β(x̂)‖ ≤ eps, gap ≤ α ε0 and err ≤ (1−α) ε0. The gradient estimate is taken at
/// x̂ and, if given, also at reference_x; either may supply the certificate.
StationarityCertificate verify_preference_stationarity(const ProblemInstance& problem,
                                                       const ManifoldPoint& point, double eps0,
                                                       double eps, double alpha,
                                                       const std::optional<Vector>& reference_x =
                                                           std::nullopt);

struct TraceRecord {
  int k = 0;
  Vector beta;
  Vector x;
  double residual = 0.0;
  double f0 = 0.0;
  double gap = 0.0;  // stationarity gap reached by the surrogate sub-solve
  double err = 0.0;
  bool certified = false;
  double c1 = 0.0;
  double c2 = 0.0;
  int simplex_iterations = 0;
  int inner_iterations = 0;
};

struct IterateTrace {
  Vector initial_x;
  Vector initial_beta;
  std::vector<TraceRecord> records;
};

enum class SolveStatus { certified, budget_exceeded };

const char* to_string(SolveStatus status);

struct PmmResult {
  ManifoldPoint point;
  IterateTrace trace;
  SolveStatus status = SolveStatus::budget_exceeded;
  StationarityCertificate certificate;
  double min_c1 = 0.0;
  int iterations() const { return static_cast<int>(trace.records.size()); }
};

/// Sub-solver failure inside the outer loop, with the trace up to that point.
class PmmFailure : public Error {
 public:
  PmmFailure(const std::string& what, IterateTrace trace) : Error(what), trace_(std::move(trace)) {}
  const IterateTrace& trace() const noexcept { return trace_; }

 private:
  IterateTrace trace_;
};

struct InitialPoint {
  std::optional<Vector> x;
  std::optional<SimplexPoint> beta;
};

PmmResult pmm_solve(const ProblemInstance& problem, const SolverConfig& config,
                    const InitialPoint& init = {});

}  // namespace pmm
