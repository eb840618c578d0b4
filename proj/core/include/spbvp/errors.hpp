#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spbvp {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected, std::string found);

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::size_t position, std::string name);

  std::size_t position() const noexcept { return position_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::size_t position_;
  std::string name_;
};

// Division by a (near) zero denominator while evaluating a function model.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidLambda : public Error {
 public:
  explicit InvalidLambda(double lambda);
};

class InvalidProblem : public Error {
 public:
  using Error::Error;
};

class NearResonanceError : public Error {
 public:
  NearResonanceError(double eps, int nearest_m, double distance);

  double eps() const noexcept { return eps_; }
  int nearest_m() const noexcept { return nearest_m_; }
  double distance() const noexcept { return distance_; }

 private:
  double eps_;
  int nearest_m_;
  double distance_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(long long required_panels, long long max_panels);
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

}  // namespace spbvp
