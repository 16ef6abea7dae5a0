#pragma once

#include <stdexcept>
#include <string>

namespace sarb {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// The cycle-depth stress function fails the strong-convexity assumption.
struct AssumptionViolated : Error {
  explicit AssumptionViolated(const std::string& msg) : Error(msg) {}
};

// The planning constraint set is empty.
struct InfeasiblePlanning : Error {
  explicit InfeasiblePlanning(const std::string& msg) : Error(msg) {}
};

// A requested operating point violates a storage constraint.
struct InfeasibleOperation : Error {
  explicit InfeasibleOperation(const std::string& msg) : Error(msg) {}
};

// Horizon too long for stable hyperbolic evaluation.
struct NumericalOverflow : Error {
  explicit NumericalOverflow(const std::string& msg) : Error(msg) {}
};

// The discrete stationarity system lost positive definiteness.
struct SingularSystem : Error {
  explicit SingularSystem(const std::string& msg) : Error(msg) {}
};

// Trajectories on incompatible time grids.
struct GridMismatch : Error {
  explicit GridMismatch(const std::string& msg) : Error(msg) {}
};

// Malformed input data.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct NonUniformSpacing : Error {
  explicit NonUniformSpacing(const std::string& msg) : Error(msg) {}
};

struct NegativeDemand : Error {
  explicit NegativeDemand(const std::string& msg) : Error(msg) {}
};

struct DegenerateFit : Error {
  explicit DegenerateFit(const std::string& msg) : Error(msg) {}
};

}  // namespace sarb
