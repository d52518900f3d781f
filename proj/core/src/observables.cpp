#include "cbs/observables.hpp"

#include <stdexcept>

namespace cbs {

namespace {
const cd kI{0.0, 1.0};

cd expect(const Mat16& rho, const Mat16& op) { return (rho * op).trace(); }

// Three-channel second-order assembly of <op>^[2] for one configuration.
cd second_order_expectation(const PerturbativeState& state, const Configuration& config,
                            const Mat16& op) {
  const cd g = config.coupling();
  const cd gc = std::conj(g);
  return g * g * expect(state.rho2_aa, op) + std::norm(g) * expect(state.rho2_ab, op) +
         gc * gc * expect(state.rho2_bb, op);
}

cd first_order_expectation(const PerturbativeState& state, const Configuration& config,
                           const Mat16& op) {
  const cd g = config.coupling();
  return g * expect(state.rho1_a, op) + std::conj(g) * expect(state.rho1_b, op);
}
}  // namespace

IntensityExpectations intensity_expectations(const Mat16& rho) {
  IntensityExpectations out;
  out.pop2_atom1 = expect(rho, sigma_op(1, 2, 2));
  out.pop2_atom2 = expect(rho, sigma_op(2, 2, 2));
  out.pair_coherence = expect(rho, observable_pair_coherence());
  out.dipole_atom1 = expect(rho, observable_sigma21(1));
  out.dipole_atom2 = expect(rho, observable_sigma21(2));
  return out;
}

cd detection_phase(double theta, const Configuration& config, const Vec3& kL_dir,
                   const Vec3& det_axis) {
  const Vec3 r12 = config.r2 - config.r1;
  const double phase = std::cos(theta) * kL_dir.dot(r12) - std::sin(theta) * det_axis.dot(r12);
  return std::exp(kI * phase);
}

cd ladder_term(const PerturbativeState& state, const Configuration& config) {
  return second_order_expectation(state, config, observable_sigma22_sum());
}

cd crossed_term(const PerturbativeState& state, double theta, const Configuration& config,
                const Vec3& kL_dir, const Vec3& det_axis) {
  if (std::abs(theta) > 0.1)
    throw std::domain_error("crossed_term: |theta| > 0.1 rad is outside the cone regime");
  const cd corr = second_order_expectation(state, config, observable_pair_coherence());
  return 2.0 * corr * detection_phase(theta, config, kL_dir, det_axis);
}

ElasticComponents elastic_components(const PerturbativeState& state, const Configuration& config,
                                     double theta, const Vec3& kL_dir, const Vec3& det_axis) {
  if (std::abs(theta) > 0.1)
    throw std::domain_error("elastic_components: |theta| > 0.1 rad is outside the cone regime");
  const cd d1 = first_order_expectation(state, config, observable_sigma21(1));
  const cd d2 = first_order_expectation(state, config, observable_sigma21(2));
  ElasticComponents out;
  out.ladder = std::norm(d1) + std::norm(d2);
  out.crossed = 2.0 * d1 * std::conj(d2) * detection_phase(theta, config, kL_dir, det_axis);
  return out;
}

double enhancement(double L_tot, double C_tot0) {
  if (!(L_tot > 0.0))
    throw std::domain_error("enhancement: no background signal (L_tot <= 0)");
  return 1.0 + C_tot0 / L_tot;
}

std::pair<double, double> inelastic_components(const CbsPoint& point) {
  return {point.L_tot - point.L_el, point.C_tot0 - point.C_el};
}

}  // namespace cbs
