#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cbs/model.hpp"

namespace cbs {

// Two-step disorder average: isotropic pair orientation x uniform separation
// over a wavelength-scale window [r_mean - 2 pi window, r_mean + 2 pi window]
// (k0 r units; window is a half-width in wavelengths, so the default 0.5
// spans exactly one wavelength, which nulls every integer e^{i n k0 r12}
// phase channel).
struct AverageSpec {
  double r_mean = 1000.0;
  double window = 0.5;
  int n_orient = 256;
  int n_radial = 16;
  enum class Mode { quadrature, monte_carlo };
  Mode mode = Mode::quadrature;
  std::uint64_t seed = 1;

  void validate() const;
  double r_lo() const { return r_mean - 2.0 * 3.14159265358979323846 * window; }
  double r_hi() const { return r_mean + 2.0 * 3.14159265358979323846 * window; }
};

struct WeightedConfig {
  Configuration config;
  double weight;
};

// Deterministic mode: Fibonacci-sphere orientations crossed with
// Gauss-Legendre radial nodes (uniform measure on the window), orientation-
// major order. Monte-carlo mode: n_orient * n_radial i.i.d. samples, uniform
// on the sphere and on the window, reproducible bit-for-bit from the seed.
// Weights sum to 1.
std::vector<WeightedConfig> sample_configurations(const AverageSpec& spec);

// Same sampler without the resolution-floor validation; used internally for
// the half-resolution error estimate.
std::vector<WeightedConfig> sample_configurations_unchecked(const AverageSpec& spec,
                                                            int n_orient, int n_radial);

// Orientation / radial node sets backing the deterministic sampler.
std::vector<Vec3> orientation_nodes(int n_orient);
void radial_nodes(const AverageSpec& spec, int n_radial, std::vector<double>& r,
                  std::vector<double>& w);

// Weighted mean of a per-configuration functional. Deterministic mode reports
// |full - half resolution| as the error estimate; monte-carlo mode reports the
// standard error of the mean. Reduction is pairwise in sample order.
std::pair<cd, double> average_observable(const std::function<cd(const Configuration&)>& fn,
                                         const AverageSpec& spec);

}  // namespace cbs
