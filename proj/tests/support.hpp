#pragma once

// Shared helpers for the unit tests: a seeded generator and small oracles
// that do not go through the library.

#include <cmath>
#include <random>

namespace testing_support {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20261016);
  return gen;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline int coin() { return std::bernoulli_distribution(0.5)(rng()) ? 1 : -1; }

// Hyperbolic functions from exponentials.
inline double coth_exp(double r) { return (std::exp(r) + std::exp(-r)) / (std::exp(r) - std::exp(-r)); }
inline double atanh_log(double x) { return 0.5 * std::log((1.0 + x) / (1.0 - x)); }

}  // namespace testing_support
