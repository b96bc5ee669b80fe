#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "waringlab/types.hpp"

namespace waringlab {

/// Generator for the stream (seed, tags...). Distinct tag lists give
/// independent streams; identical inputs give identical streams.
inline std::mt19937_64 make_rng(Seed seed,
                                std::initializer_list<std::uint64_t> tags = {}) {
  std::vector<std::uint32_t> words;
  words.push_back(static_cast<std::uint32_t>(seed));
  words.push_back(static_cast<std::uint32_t>(seed >> 32));
  for (auto t : tags) {
    words.push_back(static_cast<std::uint32_t>(t));
    words.push_back(static_cast<std::uint32_t>(t >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

/// Standard complex Gaussian entries (independent N(0, 1/2) parts).
inline Vector complex_gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = cplx(re, im);
  }
  return v;
}

inline cplx complex_gaussian(std::mt19937_64& rng) {
  return complex_gaussian(rng, 1)[0];
}

}  // namespace waringlab
