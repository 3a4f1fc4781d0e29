#include "nlrad/montecarlo.hpp"

#include <cmath>

#include "nlrad/errors.hpp"
#include "nlrad/kernel.hpp"

namespace nlrad {

double mc_cap_fraction(int dim, double t, double s, double r, std::size_t samples,
                       std::mt19937_64& rng) {
  if (dim < 1 || dim > 3) throw InvalidArgument("mc_cap_fraction: unsupported dimension");
  if (samples == 0) throw InvalidArgument("mc_cap_fraction: no samples");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  const double r2 = r * r;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    double y[3] = {0.0, 0.0, 0.0};
    if (dim == 1) {
      y[0] = coin(rng) ? s : -s;
    } else {
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (int i = 0; i < dim; ++i) {
          y[i] = normal(rng);
          norm2 += y[i] * y[i];
        }
      } while (norm2 == 0.0);
      const double scale = s / std::sqrt(norm2);
      for (int i = 0; i < dim; ++i) y[i] *= scale;
    }
    double d2 = (y[0] - t) * (y[0] - t);
    for (int i = 1; i < dim; ++i) d2 += y[i] * y[i];
    if (d2 <= r2) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

std::vector<CapSample> mc_cap_validation(int dim, int triples, std::size_t samples,
                                         std::uint64_t seed, double R) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(dim)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<CapSample> out;
  for (int k = 0; k < triples; ++k) {
    CapSample c;
    c.dim = dim;
    c.t = R * unit(rng);
    c.s = R * unit(rng);
    c.r = 2.0 * R * unit(rng);
    c.exact = cap_fraction(dim, c.t, c.s, c.r);
    c.estimate = mc_cap_fraction(dim, c.t, c.s, c.r, samples, rng);
    c.std_error = std::sqrt(c.exact * (1.0 - c.exact) / static_cast<double>(samples));
    c.within = std::abs(c.estimate - c.exact) <= 3.0 * c.std_error;
    out.push_back(c);
  }
  return out;
}

}  // namespace nlrad
