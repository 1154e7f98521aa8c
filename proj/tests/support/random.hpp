#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cmachine/signal.hpp"

namespace cmachine::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }

  Signal signal(std::size_t dim, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(dim);
    for (double& x : v) x = uniform(lo, hi);
    return Signal(std::move(v));
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Random orthonormal family of `count` vectors in R^dim (modified Gram-Schmidt).
inline std::vector<Signal> random_orthonormal(Rng& rng, std::size_t dim, std::size_t count) {
  std::vector<std::vector<double>> out;
  while (out.size() < count) {
    std::vector<double> v(dim);
    for (double& x : v) x = rng.uniform(-1, 1);
    for (const auto& e : out) {
      double d = 0;
      for (std::size_t i = 0; i < dim; ++i) d += e[i] * v[i];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= d * e[i];
    }
    double n = 0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    if (n < 1e-6) continue;
    for (double& x : v) x /= n;
    out.push_back(std::move(v));
  }
  std::vector<Signal> signals;
  for (auto& v : out) signals.emplace_back(std::move(v));
  return signals;
}

}  // namespace cmachine::testing
