#include "pmm/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pmm {

std::string format_double(double value) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

std::string trace_csv(const IterateTrace& trace, int n, int d) {
  std::ostringstream out;
  out << "k";
  for (int i = 0; i < n; ++i) out << ",beta_" << i;
  for (int j = 0; j < d; ++j) out << ",x_" << j;
  out << ",residual,f0,gap,err,certified\n";
  for (const auto& r : trace.records) {
    out << r.k;
    for (int i = 0; i < n; ++i) out << ',' << format_double(r.beta(i));
    for (int j = 0; j < d; ++j) out << ',' << format_double(r.x(j));
    out << ',' << format_double(r.residual) << ',' << format_double(r.f0) << ','
        << format_double(r.gap) << ',' << format_double(r.err) << ',' << (r.certified ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string png_trajectory_csv(const PngResult& result, const ObjectiveSet& F, const SmoothFunction& f0) {
  std::ostringstream out;
  const int d = F.dim();
  out << "k";
  for (int j = 0; j < d; ++j) out << ",x_" << j;
  out << ",f0,pareto_gap\n";
  for (std::size_t k = 0; k < result.trajectory.size(); ++k) {
    const Vector& x = result.trajectory[k];
    out << k;
    for (int j = 0; j < d; ++j) out << ',' << format_double(x(j));
    const double gap = k + 1 == result.trajectory.size() ? result.pareto_gap : pareto_stationarity_gap(F, x);
    out << ',' << format_double(f0.value(x)) << ',' << format_double(gap) << '\n';
  }
  return out.str();
}

std::string oracle_csv(const std::vector<LatticeValue>& values, int n) {
  std::ostringstream out;
  for (int i = 0; i < n; ++i) out << (i ? "," : "") << "beta_" << i;
  out << ",f0\n";
  for (const auto& v : values) {
    for (int i = 0; i < n; ++i) out << (i ? "," : "") << format_double(v.beta[i]);
    out << ',' << format_double(v.f0) << '\n';
  }
  return out.str();
}

Vector read_csv_endpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("'" + path + "' is empty");
  const std::vector<std::string> header = split(line);
  int col0 = -1, col1 = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "x_0") col0 = static_cast<int>(i);
    if (header[i] == "x_1") col1 = static_cast<int>(i);
  }
  if (col0 < 0 || col1 < 0) throw InvalidArgument("'" + path + "' has no x_0,x_1 columns");
  std::string last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  if (last.empty()) throw InvalidArgument("'" + path + "' has no data rows");
  const std::vector<std::string> cells = split(last);
  if (static_cast<int>(cells.size()) <= std::max(col0, col1)) {
    throw InvalidArgument("'" + path + "' has a short last row");
  }
  Vector x(2);
  try {
    x << std::stod(cells[col0]), std::stod(cells[col1]);
  } catch (const std::exception&) {
    throw InvalidArgument("'" + path + "' has a non-numeric endpoint");
  }
  return x;
}

}  // namespace pmm
