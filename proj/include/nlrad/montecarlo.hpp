#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace nlrad {

/// Fraction of uniformly sampled points on {|y| = s} within distance r of
/// (t, 0, ..., 0). Directions are normalized Gaussian vectors (n = 1: +-s).
double mc_cap_fraction(int dim, double t, double s, double r, std::size_t samples,
                       std::mt19937_64& rng);

struct CapSample {
  int dim = 3;
  double t = 0.0, s = 0.0, r = 0.0;
  double exact = 0.0;     // cap_fraction
  double estimate = 0.0;  // Monte Carlo
  double std_error = 0.0; // sqrt(p (1 - p) / samples) at p = exact
  bool within = true;     // |estimate - exact| <= 3 std_error
};

/// `triples` random (t, s, r) with t, s uniform on [0, R] and r uniform on
/// [0, 2R], each checked with `samples` draws. The generator is seeded with
/// (seed, dim) so every dimension is reproducible on its own.
std::vector<CapSample> mc_cap_validation(int dim, int triples, std::size_t samples,
                                         std::uint64_t seed, double R = 1.0);

}  // namespace nlrad
