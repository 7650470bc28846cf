#pragma once

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sheath/errors.hpp"

#include "sheath/params.hpp"

namespace sheath::testing {

// m = 1, R = 1, gamma = 2, T_inf = 0.5 throughout; only u_inf and phi_b vary.
inline PlasmaParams base_params(double u_inf, double phi_b) {
  PlasmaParams p;
  p.m = 1.0;
  p.R = 1.0;
  p.gamma = 2.0;
  p.T_inf = 0.5;
  p.u_inf = u_inf;
  p.phi_b = phi_b;
  return p;
}

inline PlasmaParams degenerate(double phi_b = 0.01) { return base_params(-std::sqrt(2.0), phi_b); }
inline PlasmaParams nondegenerate(double phi_b = -0.05) { return base_params(-2.0, phi_b); }

inline std::mt19937 rng(unsigned salt = 0) { return std::mt19937(20240611u + salt); }

inline double uniform(std::mt19937& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// Code of the sheath::Error raised by fn; records a failure if none is.
template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no sheath::Error thrown";
  return ErrorCode::IoError;
}

}  // namespace sheath::testing
