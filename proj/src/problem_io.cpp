#include "pmm/problem_io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "pmm/baselines.hpp"
#include "pmm/generators.hpp"

namespace pmm {

using nlohmann::json;

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ProblemFormatError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ProblemFormatError(path == "$" ? key : path + "." + key, "missing field");
  return *it;
}

double read_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ProblemFormatError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ProblemFormatError(path, "expected a finite number");
  return x;
}

Vector read_vector(const json& v, int d, const std::string& path) {
  if (!v.is_array() || static_cast<int>(v.size()) != d) {
    throw ProblemFormatError(path, "expected an array of " + std::to_string(d) + " numbers");
  }
  Vector out(d);
  for (int i = 0; i < d; ++i) out(i) = read_number(v[i], path + "[" + std::to_string(i) + "]");
  return out;
}

Matrix read_matrix(const json& v, int d, const std::string& path) {
  const std::string shape = std::to_string(d) + "x" + std::to_string(d);
  if (!v.is_array() || static_cast<int>(v.size()) != d) {
    throw ProblemFormatError(path, "expected a " + shape + " matrix");
  }
  Matrix out(d, d);
  for (int i = 0; i < d; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || static_cast<int>(v[i].size()) != d) {
      throw ProblemFormatError(row_path, "expected a row of " + std::to_string(d) + " numbers");
    }
    for (int j = 0; j < d; ++j) out(i, j) = read_number(v[i][j], row_path + "[" + std::to_string(j) + "]");
  }
  return out;
}

SmoothFunction read_function(const json& v, int d, const std::string& path) {
  const json& kind = require(v, "kind", path);
  if (!kind.is_string()) throw ProblemFormatError(path + ".kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "quadratic") {
    const Matrix H = read_matrix(require(v, "H", path), d, path + ".H");
    const Vector z = read_vector(require(v, "z", path), d, path + ".z");
    try {
      return quadratic_from_hessian(H, z);
    } catch (const InvalidArgument& e) {
      throw ProblemFormatError(path + ".H", e.what());
    }
  }
  if (k == "builtin") {
    const json& name = require(v, "name", path);
    if (!name.is_string()) throw ProblemFormatError(path + ".name", "expected a string");
    if (name.get<std::string>() != "logcosh_quadratic") {
      throw ProblemFormatError(path + ".name", "unknown builtin '" + name.get<std::string>() +
                                                   "' (known: logcosh_quadratic)");
    }
    const std::string pp = path + ".params";
    const json& params = require(v, "params", path);
    const Matrix H = read_matrix(require(params, "H", pp), d, pp + ".H");
    const Vector z = read_vector(require(params, "z", pp), d, pp + ".z");
    const double w = read_number(require(params, "weight", pp), pp + ".weight");
    try {
      return make_logcosh_quadratic(H, z, w);
    } catch (const InvalidArgument& e) {
      throw ProblemFormatError(pp, e.what());
    }
  }
  throw ProblemFormatError(path + ".kind", "unknown kind '" + k + "' (known: quadratic, builtin)");
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

json function_json(const SmoothFunction& f, const std::string& path) {
  if (!f.origin()) throw InvalidArgument(path + ": function has no analytic form to serialise");
  return std::visit(
      [](const auto& spec) -> json {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, QuadraticSpec>) {
          return json{{"kind", "quadratic"}, {"H", matrix_json(spec.H)}, {"z", vector_json(spec.z)}};
        } else {
          return json{{"kind", "builtin"},
                      {"name", "logcosh_quadratic"},
                      {"params", {{"H", matrix_json(spec.H)}, {"z", vector_json(spec.z)}, {"weight", spec.weight}}}};
        }
      },
      *f.origin());
}

}  // namespace

ProblemInstance parse_problem(const json& doc) {
  if (!doc.is_object()) throw ProblemFormatError("$", "expected a JSON object");
  const json& dim = require(doc, "dimension", "$");
  if (!dim.is_number_integer() || dim.get<long long>() <= 0) {
    throw ProblemFormatError("dimension", "expected a positive integer");
  }
  const int d = dim.get<int>();

  const json& objs = require(doc, "objectives", "$");
  if (!objs.is_array() || objs.empty()) throw ProblemFormatError("objectives", "expected a non-empty array");
  std::vector<SmoothFunction> objectives;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    objectives.push_back(read_function(objs[i], d, "objectives[" + std::to_string(i) + "]"));
  }
  SmoothFunction f0 = read_function(require(doc, "preference", "$"), d, "preference");

  SmoothnessConstants shared{0.0, 0.0, 0.0};
  {
    shared.mu = std::numeric_limits<double>::infinity();
    for (const auto& f : objectives) {
      shared.mu = std::min(shared.mu, f.constants()->mu);
      shared.L = std::max(shared.L, f.constants()->L);
      shared.L_H = std::max(shared.L_H, f.constants()->L_H);
    }
  }
  if (auto it = doc.find("constants"); it != doc.end()) {
    const json& c = *it;
    if (!c.is_object()) throw ProblemFormatError("constants", "expected an object");
    for (auto field = c.begin(); field != c.end(); ++field) {
      const std::string key = field.key();
      if (key != "mu" && key != "L" && key != "L_H" && key != "L0") {
        throw ProblemFormatError("constants." + key, "unknown constant (known: mu, L, L_H, L0)");
      }
    }
    if (c.contains("mu")) shared.mu = read_number(c["mu"], "constants.mu");
    if (c.contains("L")) shared.L = read_number(c["L"], "constants.L");
    if (c.contains("L_H")) shared.L_H = read_number(c["L_H"], "constants.L_H");
    if (c.contains("L0")) {
      const double L0 = read_number(c["L0"], "constants.L0");
      if (!(L0 > 0.0)) throw ProblemFormatError("constants.L0", "must be positive");
      const double mu0 = std::min(f0.constants()->mu, L0);
      f0 = f0.with_constants(SmoothnessConstants{mu0, L0, f0.constants()->L_H});
    }
    if (!(shared.mu > 0.0)) throw ProblemFormatError("constants.mu", "must be positive");
    if (!(shared.L >= shared.mu)) throw ProblemFormatError("constants.L", "must be at least mu");
    if (!(shared.L_H >= 0.0)) throw ProblemFormatError("constants.L_H", "must be nonnegative");
  }
  return ProblemInstance(ObjectiveSet(std::move(objectives), shared), std::move(f0));
}

ProblemInstance load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open problem file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ProblemFormatError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(doc);
}

json problem_to_json(const ProblemInstance& problem) {
  json objs = json::array();
  for (int i = 0; i < problem.n(); ++i) {
    objs.push_back(function_json(problem.F()[i], "objectives[" + std::to_string(i) + "]"));
  }
  return json{{"dimension", problem.d()},
              {"objectives", objs},
              {"preference", function_json(problem.f0(), "preference")},
              {"constants",
               {{"mu", problem.F().mu()},
                {"L", problem.F().L()},
                {"L_H", problem.F().L_H()},
                {"L0", problem.L0()}}}};
}

ProblemInstance generate_problem(const std::string& name, int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (name == "png") {
    Matrix H(2, 2);
    H << 1.0, 1.0, 1.0, 2.0;
    return png_counterexample_instance(H);
  }
  if (name == "identity") return png_counterexample_instance(Matrix::Identity(2, 2));
  if (name == "curved") return curved_three_objective_instance();
  if (n < 1 || d < 1) throw InvalidArgument("generator needs n >= 1 and d >= 1");
  if (name == "random-shared") return random_shared_hessian_instance(rng, n, d);
  if (name == "random-quadratic") return random_quadratic_instance(rng, n, d);
  if (name == "random-logcosh") return random_logcosh_instance(rng, n, d);
  throw InvalidArgument("unknown generator '" + name +
                        "' (known: png, identity, curved, random-shared, random-quadratic, random-logcosh)");
}

void write_file_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) throw InvalidArgument("failed writing '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw InvalidArgument("cannot move output into place at '" + path + "'");
  }
}

}  // namespace pmm
