#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cellricci/complex.hpp"

namespace cellricci::cli {

enum ExitCode : int {
  kPass = 0,
  kAssertionFailure = 1,
  kInputError = 2,
};

/// Builds a complex from a generator spec such as "simplex-boundary 2",
/// "grid 3 3", "torus 4 4", "cycle 5", "point" or
/// "product simplex-boundary 1 grid 2". Throws ComplexError.
CellComplex generate(const std::vector<std::string>& tokens);
CellComplex generate(const std::string& spec);

/// Entry point shared by the executable and the tests. argv[0] is the program
/// name. Never throws; failures map to the exit codes above.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cellricci::cli
