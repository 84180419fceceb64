#pragma once

#include <cstdint>
#include <random>

#include "qham/numerics.hpp"

namespace qham {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Per-sample generator derived from (master seed, sample index) so that
// batched and serial evaluation visit identical streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t index) : eng_(splitmix64(splitmix64(seed) ^ index)) {}

  double normal(double sigma = 1.0) {
    std::normal_distribution<double> d(0.0, sigma);
    return d(eng_);
  }
  double uniform(double a, double b) {
    std::uniform_real_distribution<double> d(a, b);
    return d(eng_);
  }
  int uniform_int(int a, int b) {  // inclusive
    std::uniform_int_distribution<int> d(a, b);
    return d(eng_);
  }
  std::uint64_t raw() { return eng_(); }

  RVec normal_vec(int n, double sigma = 1.0) {
    RVec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal(sigma);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qham
