#include "spbvp/errors.hpp"

#include <sstream>
#include <utility>

namespace spbvp {

namespace {

std::string SyntaxMessage(std::size_t position, const std::string& expected,
                          const std::string& found) {
  std::ostringstream os;
  os << "SyntaxError at position " << position << ": expected " << expected
     << ", found " << found;
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::string expected, std::string found)
    : Error(SyntaxMessage(position, expected, found)),
      position_(position),
      expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::size_t position, std::string name)
    : Error("UnknownIdentifier '" + name + "' at position " + std::to_string(position)),
      position_(position),
      name_(std::move(name)) {}

InvalidLambda::InvalidLambda(double lambda)
    : Error("InvalidLambda: lambda must lie in (0, pi/2), got " + std::to_string(lambda)) {}

NearResonanceError::NearResonanceError(double eps, int nearest_m, double distance)
    : Error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "NearResonance: eps=" << eps << " has phase within " << distance
           << " of resonance m=" << nearest_m;
        return os.str();
      }()),
      eps_(eps),
      nearest_m_(nearest_m),
      distance_(distance) {}

BudgetExceeded::BudgetExceeded(long long required_panels, long long max_panels)
    : Error("BudgetExceeded: quadrature needs " + std::to_string(required_panels) +
            " panels, cap is " + std::to_string(max_panels)) {}

}  // namespace spbvp
