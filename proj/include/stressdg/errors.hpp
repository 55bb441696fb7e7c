// Exception hierarchy shared by the library and the CLI exit-code mapping.
#pragma once

#include <stdexcept>
#include <string>

namespace stressdg {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct MeshError : std::runtime_error {
  explicit MeshError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolverError : std::runtime_error {
  double final_residual = -1.0;
  explicit SolverError(const std::string& msg, double residual = -1.0)
      : std::runtime_error(msg), final_residual(residual) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stressdg
