#pragma once

#include <string>
#include <vector>

#include "pmm/baselines.hpp"
#include "pmm/oracle.hpp"
#include "pmm/pmm.hpp"

namespace pmm {

/// Header k,beta_0..beta_{n-1},x_0..x_{d-1},residual,f0,gap,err,certified; one row per iteration.
std::string trace_csv(const IterateTrace& trace, int n, int d);

/// Header k,x_0..x_{d-1},f0,pareto_gap; row 0 is the starting point.
std::string png_trajectory_csv(const PngResult& result, const ObjectiveSet& F, const SmoothFunction& f0);

/// Header beta_0..beta_{n-1},f0; rows in lattice order.
std::string oracle_csv(const std::vector<LatticeValue>& values, int n);

/// Columns x_0, x_1 of the last data row of a CSV written by the functions above.
/// Throws InvalidArgument when the file is unreadable, empty or lacks those columns.
Vector read_csv_endpoint(const std::string& path);

/// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace pmm
