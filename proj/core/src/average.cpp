#include "cbs/average.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cbs/spherical.hpp"
#include "cbs/util.hpp"

namespace cbs {

void AverageSpec::validate() const {
  if (window <= 0.0) throw std::invalid_argument("AverageSpec: window must be positive");
  if (r_lo() < 10.0)
    throw std::invalid_argument(
        "AverageSpec: r_mean - 2*pi*window < 10 leaves the far-field regime");
  if (n_orient < 64) throw std::invalid_argument("AverageSpec: n_orient must be >= 64");
  if (n_radial < 16) throw std::invalid_argument("AverageSpec: n_radial must be >= 16");
}

std::vector<Vec3> orientation_nodes(int n_orient) { return fibonacci_sphere(n_orient); }

void radial_nodes(const AverageSpec& spec, int n_radial, std::vector<double>& r,
                  std::vector<double>& w) {
  std::vector<double> x, gw;
  gauss_legendre(n_radial, x, gw);
  const double mid = 0.5 * (spec.r_hi() + spec.r_lo());
  const double half = 0.5 * (spec.r_hi() - spec.r_lo());
  r.resize(x.size());
  w.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    r[j] = mid + half * x[j];
    w[j] = 0.5 * gw[j];  // Gauss-Legendre weights sum to 2 on [-1, 1]
  }
}

std::vector<WeightedConfig> sample_configurations_unchecked(const AverageSpec& spec,
                                                            int n_orient, int n_radial) {
  std::vector<WeightedConfig> out;
  if (spec.mode == AverageSpec::Mode::quadrature) {
    const auto dirs = orientation_nodes(n_orient);
    std::vector<double> r, w;
    radial_nodes(spec, n_radial, r, w);
    out.reserve(dirs.size() * r.size());
    const double w_orient = 1.0 / static_cast<double>(n_orient);
    for (const auto& n_hat : dirs)
      for (std::size_t j = 0; j < r.size(); ++j)
        out.push_back({Configuration(r[j], n_hat), w_orient * w[j]});
  } else {
    const std::size_t n = static_cast<std::size_t>(n_orient) * static_cast<std::size_t>(n_radial);
    std::mt19937_64 rng(spec.seed);
    out.reserve(n);
    const double weight = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
      // Explicit transforms (not std::*_distribution) keep the stream
      // bit-identical across standard libraries.
      const double z = 1.0 - 2.0 * u64_to_unit_double(rng());
      const double phi = 2.0 * std::numbers::pi * u64_to_unit_double(rng());
      const double u_r = u64_to_unit_double(rng());
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const Vec3 n_hat(rho * std::cos(phi), rho * std::sin(phi), z);
      const double r = spec.r_lo() + (spec.r_hi() - spec.r_lo()) * u_r;
      out.push_back({Configuration(r, n_hat), weight});
    }
  }
  return out;
}

std::vector<WeightedConfig> sample_configurations(const AverageSpec& spec) {
  spec.validate();
  return sample_configurations_unchecked(spec, spec.n_orient, spec.n_radial);
}

namespace {
cd weighted_mean(const std::function<cd(const Configuration&)>& fn,
                 const std::vector<WeightedConfig>& samples) {
  std::vector<cd> terms;
  terms.reserve(samples.size());
  for (const auto& s : samples) terms.push_back(s.weight * fn(s.config));
  return pairwise_sum(terms);
}
}  // namespace

std::pair<cd, double> average_observable(const std::function<cd(const Configuration&)>& fn,
                                         const AverageSpec& spec) {
  spec.validate();
  const auto samples = sample_configurations_unchecked(spec, spec.n_orient, spec.n_radial);
  if (spec.mode == AverageSpec::Mode::quadrature) {
    const cd mean = weighted_mean(fn, samples);
    const auto half = sample_configurations_unchecked(
        spec, std::max(1, spec.n_orient / 2), std::max(1, spec.n_radial / 2));
    const cd mean_half = weighted_mean(fn, half);
    return {mean, std::abs(mean - mean_half)};
  }
  std::vector<cd> values;
  values.reserve(samples.size());
  for (const auto& s : samples) values.push_back(fn(s.config));
  const cd mean = pairwise_sum(values) / static_cast<double>(values.size());
  double var = 0.0;
  for (const auto& v : values) var += std::norm(v - mean);
  const double n = static_cast<double>(values.size());
  const double stderr_mean = n > 1.5 ? std::sqrt(var / (n * (n - 1.0))) : 0.0;
  return {mean, stderr_mean};
}

}  // namespace cbs
