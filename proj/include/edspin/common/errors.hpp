#pragma once

#include <stdexcept>
#include <string>

namespace edspin {

// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LatticeMismatch : public Error {
 public:
  explicit LatticeMismatch(const std::string& what) : Error("lattice mismatch: " + what) {}
};

class NonSmoothField : public Error {
 public:
  explicit NonSmoothField(const std::string& what) : Error("non-smooth rotor field: " + what) {}
};

class NotNormalized : public Error {
 public:
  explicit NotNormalized(const std::string& what) : Error("state not normalized: " + what) {}
};

class GradientMissing : public Error {
 public:
  explicit GradientMissing(const std::string& what) : Error("gradient missing: " + what) {}
};

class NonHermitianKernel : public Error {
 public:
  explicit NonHermitianKernel(const std::string& what) : Error("non-Hermitian kernel: " + what) {}
};

class SolverDiverged : public Error {
 public:
  explicit SolverDiverged(const std::string& what) : Error("implicit solver diverged: " + what) {}
};

class PacketsNotSeparated : public Error {
 public:
  explicit PacketsNotSeparated(const std::string& what)
      : Error("packets not separated: " + what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid argument: " + what) {}
};

}  // namespace edspin
