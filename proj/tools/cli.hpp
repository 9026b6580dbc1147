#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmm::cli {

/// Runs the `pmm` command line. Returns 0 on success, 2 when a solver stops without
/// certifying (budget exhausted, infeasible PNG step), 1 on errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace pmm::cli
