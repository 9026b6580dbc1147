#include "pmm/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "pmm/oracle.hpp"

namespace pmm {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Ellipse {
  Vector center;
  double rx = 0.0;
  double ry = 0.0;
  double angle_deg = 0.0;
  int owner = 0;
};

class Frame {
 public:
  void include(const Vector& p) {
    lo_ = lo_.size() ? lo_.cwiseMin(p) : p;
    hi_ = hi_.size() ? hi_.cwiseMax(p) : p;
  }
  void finalise(int width, int height) {
    width_ = width;
    height_ = height;
    Vector span = (hi_ - lo_).cwiseMax(1e-6);
    const double pad = 0.08 * span.maxCoeff();
    lo_.array() -= pad;
    hi_.array() += pad;
    span = hi_ - lo_;
    scale_ = std::min((width - 1) / span(0), (height - 1) / span(1));
  }
  double sx(double x) const { return (x - lo_(0)) * scale_; }
  double sy(double y) const { return height_ - (y - lo_(1)) * scale_; }
  double scale() const { return scale_; }

 private:
  Vector lo_, hi_;
  int width_ = 0;
  int height_ = 0;
  double scale_ = 1.0;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_pareto_svg(const ProblemInstance& problem, const PlotOptions& options,
                              const std::vector<PlotMarker>& markers) {
  if (problem.d() != 2) {
    throw InvalidArgument("plotting supports dimension 2 only, problem has dimension " +
                          std::to_string(problem.d()));
  }
  if (options.resolution < 1) throw InvalidArgument("resolution must be at least 1");
  const ObjectiveSet& F = problem.F();
  const int n = F.size();

  const std::vector<SimplexPoint> lattice = simplex_lattice(n, options.resolution);
  std::vector<Vector> images;
  images.reserve(lattice.size());
  for (const auto& beta : lattice) images.push_back(oracle_x_star(F, beta).x);

  // Coordinate lines: vary one pair (p, q) of weights with all others held fixed.
  std::vector<std::vector<Vector>> lines;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      std::map<std::vector<long>, std::vector<std::size_t>> groups;
      for (std::size_t idx = 0; idx < lattice.size(); ++idx) {
        std::vector<long> key;
        for (int i = 0; i < n; ++i) {
          if (i != p && i != q) key.push_back(std::lround(lattice[idx][i] * options.resolution));
        }
        groups[key].push_back(idx);
      }
      for (auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end(),
                  [&](std::size_t a, std::size_t b) { return lattice[a][p] > lattice[b][p]; });
        std::vector<Vector> line;
        for (std::size_t idx : members) line.push_back(images[idx]);
        lines.push_back(std::move(line));
      }
    }
  }

  Frame frame;
  for (const auto& x : images) frame.include(x);
  for (const auto& m : F.minimizers()) frame.include(m);
  for (const auto& mk : markers) frame.include(mk.point);

  const double reach = std::max(F.r(), 0.5);
  std::vector<Ellipse> ellipses;
  for (int i = 0; i < n; ++i) {
    if (!F[i].origin()) continue;
    const auto* spec = std::get_if<QuadraticSpec>(&*F[i].origin());
    if (!spec) continue;
    Eigen::SelfAdjointEigenSolver<Matrix> es(spec->H);
    const double lam_min = es.eigenvalues()(0);
    for (int level = 1; level <= options.contour_levels; ++level) {
      // Level sets at f_i = ½ λ_min t² with t spaced over the Pareto set's extent.
      const double t = reach * level / options.contour_levels;
      const double value = 0.5 * lam_min * t * t;
      Ellipse e;
      e.center = spec->z;
      e.rx = std::sqrt(2.0 * value / es.eigenvalues()(0));
      e.ry = std::sqrt(2.0 * value / es.eigenvalues()(1));
      e.angle_deg = std::atan2(es.eigenvectors()(1, 0), es.eigenvectors()(0, 0)) * 180.0 / M_PI;
      e.owner = i;
      ellipses.push_back(e);
    }
  }
  frame.finalise(options.width, options.height);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  svg << "<g id=\"contours\" fill=\"none\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\">\n";
  for (const auto& e : ellipses) {
    svg << "<ellipse cx=\"" << num(frame.sx(e.center(0))) << "\" cy=\"" << num(frame.sy(e.center(1)))
        << "\" rx=\"" << num(e.rx * frame.scale()) << "\" ry=\"" << num(e.ry * frame.scale())
        << "\" transform=\"rotate(" << num(-e.angle_deg) << ' ' << num(frame.sx(e.center(0))) << ' '
        << num(frame.sy(e.center(1))) << ")\" stroke=\"" << kPalette[e.owner % 6] << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"pareto-grid\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\">\n";
  for (const auto& line : lines) {
    svg << "<polyline points=\"";
    for (std::size_t k = 0; k < line.size(); ++k) {
      svg << (k ? " " : "") << num(frame.sx(line[k](0))) << ',' << num(frame.sy(line[k](1)));
    }
    svg << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"minimizers\">\n";
  for (int i = 0; i < n; ++i) {
    const Vector& m = F.minimizers()[i];
    svg << "<circle cx=\"" << num(frame.sx(m(0))) << "\" cy=\"" << num(frame.sy(m(1)))
        << "\" r=\"4\" fill=\"" << kPalette[i % 6] << "\"><title>argmin f" << (i + 1)
        << "</title></circle>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"markers\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t k = 0; k < markers.size(); ++k) {
    const double cx = frame.sx(markers[k].point(0));
    const double cy = frame.sy(markers[k].point(1));
    svg << "<path d=\"M " << num(cx - 6) << ' ' << num(cy) << " L " << num(cx) << ' ' << num(cy - 6)
        << " L " << num(cx + 6) << ' ' << num(cy) << " L " << num(cx) << ' ' << num(cy + 6)
        << " Z\" fill=\"" << kPalette[(k + 3) % 6] << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(cx + 8) << "\" y=\"" << num(cy - 8) << "\">" << xml_escape(markers[k].label)
        << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace pmm
