#pragma once

#include <string>
#include <variant>

namespace sheath {

/// (1 + beta x)^alpha
struct AlgebraicWeight {
  double alpha = 0.0;
  double beta = 1.0;
};

/// e^{beta x}, i.e. e^{beta x / 2} applied to each field before squaring.
struct ExponentialWeight {
  double beta = 1.0;
};

using WeightSpec = std::variant<AlgebraicWeight, ExponentialWeight>;

/// Weight multiplying squared fields at position x.
double weight_at(const WeightSpec& weight, double x);

/// Throws InvalidParams for beta <= 0 or non-finite parameters.
void validate(const WeightSpec& weight);

/// "alg(alpha=4,beta=0.1)" style label for logs and reports.
std::string describe(const WeightSpec& weight);

}  // namespace sheath
