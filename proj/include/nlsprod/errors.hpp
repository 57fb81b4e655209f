// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace nlsprod {

/// Bad user input: out-of-range parameters, mismatched grids, malformed files.
/// Maps to CLI exit code 1.
struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Numerical failure at runtime: non-convergence, NaN blowup, inconsistent
/// results between redundant computations. Maps to CLI exit code 2.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nlsprod
