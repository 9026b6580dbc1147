#pragma once

#include <string>
#include <vector>

#include "pmm/problem.hpp"

namespace pmm {

struct PlotMarker {
  std::string label;
  Vector point;
};

struct PlotOptions {
  int resolution = 30;  // lattice denominator m
  int width = 640;
  int height = 640;
  int contour_levels = 3;
};

/// SVG of a planar problem: lattice coordinate lines of β ↦ x_β (one polyline per line),
/// contour ellipses of quadratic objectives, objective minimizers, and labelled markers.
/// Throws InvalidArgument unless d = 2.
std::string render_pareto_svg(const ProblemInstance& problem, const PlotOptions& options,
                              const std::vector<PlotMarker>& markers = {});

}  // namespace pmm
