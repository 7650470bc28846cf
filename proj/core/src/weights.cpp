#include "sheath/weights.hpp"

#include <cmath>
#include <sstream>

#include "sheath/errors.hpp"

namespace sheath {

double weight_at(const WeightSpec& weight, double x) {
  if (const auto* a = std::get_if<AlgebraicWeight>(&weight)) {
    return std::pow(1.0 + a->beta * x, a->alpha);
  }
  return std::exp(std::get<ExponentialWeight>(weight).beta * x);
}

void validate(const WeightSpec& weight) {
  if (const auto* a = std::get_if<AlgebraicWeight>(&weight)) {
    if (!(a->beta > 0.0) || !std::isfinite(a->beta) || !std::isfinite(a->alpha)) {
      raise(ErrorCode::InvalidParams, "algebraic weight needs finite alpha and beta > 0");
    }
    return;
  }
  const double beta = std::get<ExponentialWeight>(weight).beta;
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    raise(ErrorCode::InvalidParams, "exponential weight needs beta > 0");
  }
}

std::string describe(const WeightSpec& weight) {
  std::ostringstream out;
  if (const auto* a = std::get_if<AlgebraicWeight>(&weight)) {
    out << "alg(alpha=" << a->alpha << ",beta=" << a->beta << ")";
  } else {
    out << "exp(beta=" << std::get<ExponentialWeight>(weight).beta << ")";
  }
  return out.str();
}

}  // namespace sheath
