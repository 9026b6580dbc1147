#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "pmm/manifold.hpp"

namespace pmm {

inline constexpr std::uint64_t kOracleSeed = 0xC0FFEE;
inline constexpr double kOracleTolerance = 1e-12;

/// Uniform (Dirichlet(1)) sample from the simplex.
SimplexPoint random_simplex_point(std::mt19937_64& rng, int n);

/// x_β by Newton from Σ β_i m_i to ‖∇f_β‖ ≤ 1e-12.
ManifoldPoint oracle_x_star(const ObjectiveSet& F, const SimplexPoint& beta);

/// n×(n−1) matrix with columns (e_i − e_n)/2.
Matrix simplex_tangent_basis(int n);

/// Central differences of fn along the tangent basis, giving a d×(n−1) matrix.
/// Throws InvalidArgument unless every weight is ≥ 2h.
Matrix finite_difference_jacobian(const std::function<Vector(const SimplexPoint&)>& fn,
                                  const SimplexPoint& beta, double h = 1e-5);

/// Number of points C(m+n−1, n−1) of the simplex lattice with denominator m.
/// Throws SizeLimit above 10^7 points.
std::size_t simplex_lattice_size(int n, int m);

/// All lattice points, first coordinate descending.
std::vector<SimplexPoint> simplex_lattice(int n, int m);

struct LatticeValue {
  SimplexPoint beta;
  double f0 = 0.0;
};

/// f0(x_β) over the lattice, evaluated with oracle_x_star. Output order matches
/// simplex_lattice regardless of the thread count. Requires n ≤ 4.
std::vector<LatticeValue> evaluate_lattice(const ProblemInstance& problem, int m, int threads = 1);

struct GridSearchResult {
  SimplexPoint best_beta;
  Vector best_x;
  double f_min = 0.0;
  double f_max = 0.0;
  std::size_t points = 0;
};

/// Ties resolve to the earliest lattice point.
GridSearchResult grid_search_preference_opt(const ProblemInstance& problem, int m, int threads = 1);

struct HullReport {
  int passed = 0;
  int failed = 0;
  double max_solve_error = 0.0;  // max ‖x*(β) − Σ β_i z_i‖
  double max_hull_gap = 0.0;     // max over hull samples y of min_β ‖∇f_β(y)‖
};

/// For shared-Hessian quadratics: x*(β) = Σ β_i z_i, and hull points are Pareto stationary.
/// Throws InvalidArgument when the objectives are not quadratics with one shared Hessian.
HullReport hull_pareto_check(const ObjectiveSet& F, int samples, std::uint64_t seed = kOracleSeed);

}  // namespace pmm
