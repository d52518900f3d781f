#pragma once

#include "cbs/steady_state.hpp"

namespace cbs {

// Single calibration constant fixing the otherwise arbitrary overall intensity
// scale: with a normalized (mean) configuration average the raw elastic ladder
// carries the geometric sphere factor <|e_{+1}^* . Delta . e_{-1}|^2> = 2/15,
// and reported intensities are defined so that the averaged elastic terms
// equal 24 pi |g|^2 s / ((1+delta)(1+s)^4) exactly: 24 pi * (15/2) = 180 pi.
inline const double kIntensityCalibration = 180.0 * 3.14159265358979323846;

// The five expectation values feeding the detected-intensity formulas:
// <sigma1_22>, <sigma2_22>, <sigma1_21 sigma2_12>, <sigma1_21>, <sigma2_21>.
// Computed as Tr(rho Q); rho may be a density matrix or any perturbative
// coefficient (then these are the coefficient's contributions).
struct IntensityExpectations {
  cd pop2_atom1;
  cd pop2_atom2;
  cd pair_coherence;
  cd dipole_atom1;
  cd dipole_atom2;
};

IntensityExpectations intensity_expectations(const Mat16& rho);

// Detector interference phase. The crossed correlator carries e^{-i k_L.r12}
// structurally, so constructive backscattering fixes the factor to
//   e^{i k0 r12 (cos(theta) kL_dir - sin(theta) det_axis) . n_hat},
// i.e. e^{-i k_det . r12} with k_det the physical detection direction at angle
// theta from -k_L, tilted inside the plane spanned by k_L and det_axis.
cd detection_phase(double theta, const Configuration& config,
                   const Vec3& kL_dir = Vec3(0, 0, 1), const Vec3& det_axis = Vec3(1, 0, 0));

// Background (ladder) contribution of one configuration: the second-order
// part of <sigma1_22 + sigma2_22> with the coupling phases attached,
//   g^2 tr[Q rho2_aa] + |g|^2 tr[Q rho2_ab] + g*^2 tr[Q rho2_bb].
// Real after configuration averaging.
cd ladder_term(const PerturbativeState& state, const Configuration& config);

// Interference (crossed) contribution of one configuration:
//   2 <sigma1_21 sigma2_12>^[2] * detection_phase(theta),
// with the same three-channel assembly. |theta| <= 0.1 rad (beyond the cone
// the neglected emission-pattern variation matters).
cd crossed_term(const PerturbativeState& state, double theta, const Configuration& config,
                const Vec3& kL_dir = Vec3(0, 0, 1), const Vec3& det_axis = Vec3(1, 0, 0));

// Elastic (mean-dipole) components built from symmetric first-order products:
//   ladder  = |<sigma1_21>^[1]|^2 + |<sigma2_21>^[1]|^2
//   crossed = 2 <sigma1_21>^[1] <sigma2_12>^[1] * detection_phase(theta)
// (zeroth-order dipoles on the detected transition vanish identically, and
// products mixing orders 0 and 2 vanish with them).
struct ElasticComponents {
  double ladder;
  cd crossed;
};

ElasticComponents elastic_components(const PerturbativeState& state, const Configuration& config,
                                     double theta = 0.0, const Vec3& kL_dir = Vec3(0, 0, 1),
                                     const Vec3& det_axis = Vec3(1, 0, 0));

// Enhancement factor alpha = 1 + C_tot(0)/L_tot, in [1, 2] up to averaging
// noise. Throws if L_tot <= 0 (no background signal to normalize by).
double enhancement(double L_tot, double C_tot0);

// One fully averaged observation point. Intensities are in units of
// |g(r_mean)|^2.
struct CbsPoint {
  double s = 0.0;
  double delta_sq = 0.0;
  double theta = 0.0;
  double L_tot = 0.0;
  double C_tot0 = 0.0;
  double I_tot = 0.0;
  double L_el = 0.0;
  double C_el = 0.0;
  double L_inel = 0.0;
  double C_inel = 0.0;
  double alpha = 0.0;
  double alpha_err = 0.0;
};

// L_inel = L_tot - L_el and C_inel = C_tot(0) - C_el.
std::pair<double, double> inelastic_components(const CbsPoint& point);

}  // namespace cbs
