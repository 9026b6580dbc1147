#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "pmm/problem.hpp"

namespace pmm {

/// A malformed problem document. The message starts with the offending field path,
/// e.g. "objectives[1].H: expected a 2x2 matrix".
class ProblemFormatError : public InvalidArgument {
 public:
  ProblemFormatError(const std::string& field, const std::string& message)
      : InvalidArgument(field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Parses {"dimension", "objectives", "preference", "constants"?}. Functions are
/// {"kind":"quadratic","H","z"} or {"kind":"builtin","name":"logcosh_quadratic","params":{"H","z","weight"}}.
/// Declared constants override the ones computed from each function.
ProblemInstance parse_problem(const nlohmann::json& doc);
ProblemInstance load_problem(const std::string& path);

/// Inverse of parse_problem; every function must carry its analytic origin.
nlohmann::json problem_to_json(const ProblemInstance& problem);

/// Named instances for the `generate` command: "png", "identity", "curved",
/// "random-shared", "random-quadratic", "random-logcosh".
ProblemInstance generate_problem(const std::string& name, int n, int d, std::uint64_t seed);

/// Writes to a temporary file next to `path`, then renames it over `path`.
void write_file_atomically(const std::string& path, const std::string& content);

}  // namespace pmm
