#pragma once

#include <random>

#include "pmm/baselines.hpp"
#include "pmm/function.hpp"
#include "pmm/problem.hpp"

namespace pmm::test {

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double value : values) v(i++) = value;
  return v;
}

inline Vector e(int d, int i) { return Vector::Unit(d, i); }

inline Matrix png_hessian() {
  Matrix H(2, 2);
  H << 1.0, 1.0, 1.0, 2.0;
  return H;
}

// f1 = ½‖x+e1‖², f2 = ½‖x−e1‖², f0 = ½‖x−e2‖².
inline ProblemInstance identity_instance() {
  return png_counterexample_instance(Matrix::Identity(2, 2));
}

inline ProblemInstance png_instance() { return png_counterexample_instance(png_hessian()); }

inline ProblemInstance single_objective_instance() {
  std::vector<SmoothFunction> objectives{quadratic_from_hessian(png_hessian(), vec({0.3, -0.2}))};
  return ProblemInstance(ObjectiveSet(std::move(objectives)),
                         quadratic_from_hessian(Matrix::Identity(2, 2), e(2, 1)));
}

inline std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(0xC0FFEE ^ salt); }

}  // namespace pmm::test
