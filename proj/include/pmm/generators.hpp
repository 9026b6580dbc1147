#pragma once

#include <random>

#include "pmm/problem.hpp"

namespace pmm {

/// Random symmetric positive-definite matrix with eigenvalues spread over [1, condition].
Matrix random_spd(std::mt19937_64& rng, int d, double condition);

Vector random_vector(std::mt19937_64& rng, int d, double scale = 1.0);

/// n quadratics ½(x − z_i)ᵀH(x − z_i) sharing one random H; f0 = ½‖x − c‖² for a random c.
ProblemInstance random_shared_hessian_instance(std::mt19937_64& rng, int n, int d,
                                               double condition = 4.0);

/// n quadratics with independent random Hessians.
ProblemInstance random_quadratic_instance(std::mt19937_64& rng, int n, int d, double condition = 4.0);

/// n log-cosh-perturbed quadratics (non-constant Hessians, L_H > 0).
ProblemInstance random_logcosh_instance(std::mt19937_64& rng, int n, int d, double weight = 0.5);

/// Three quadratics on R² with different Hessians; their Pareto set is curved.
ProblemInstance curved_three_objective_instance();

}  // namespace pmm
