#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "cbs/spherical.hpp"

namespace cbs {

// Level structure of one atom: |1> is the J=0 ground state; |2>,|3>,|4> are
// the excited Zeeman sublevels with m = -1, 0, +1.
struct Level {
  int index;  // 1..4
  int m;      // magnetic quantum number; 0 for the ground state too

  static Level ground() { return {1, 0}; }
  static Level excited(int m) {
    if (m < -1 || m > 1) throw std::invalid_argument("Level: m must be -1, 0, +1");
    return {3 + m, m};
  }
  bool is_ground() const { return index == 1; }
};

inline bool level_is_excited(int index) { return index >= 2 && index <= 4; }
inline int level_m(int index) {
  if (index == 1) return 0;
  return index - 3;  // 2 -> -1, 3 -> 0, 4 -> +1
}

// Laser drive parameters. gamma is HALF the spontaneous decay rate and fixes
// the unit of rate (default 1); the total excited-state decay rate is 2*gamma.
struct DriveParams {
  double omega = 0.0;                   // Rabi frequency, units of gamma
  double delta = 0.0;                   // detuning omega_L - omega_0, units of gamma
  double gamma = 1.0;                   // half linewidth (rate unit)
  Vec3 kL_dir = Vec3(0.0, 0.0, 1.0);    // laser propagation direction (unit)
  SphericalVector pol{0.0, 0.0, 1.0};   // laser polarization; default e_{+1}

  DriveParams() = default;
  DriveParams(double omega_, double delta_) : omega(omega_), delta(delta_) { validate(); }

  void validate() const {
    if (gamma <= 0.0) throw std::invalid_argument("DriveParams: gamma must be positive");
    if (omega < 0.0) throw std::invalid_argument("DriveParams: omega must be nonnegative");
    if (std::abs(kL_dir.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("DriveParams: kL_dir must be a unit vector");
  }

  double s() const { return omega * omega / (2.0 * (delta * delta + gamma * gamma)); }
  double delta_sq() const { return (delta / gamma) * (delta / gamma); }

  // Drive with given saturation s and detuning-squared delta_sq = (Delta/gamma)^2.
  static DriveParams from_saturation(double s, double delta_sq, double gamma = 1.0) {
    if (s < 0.0 || delta_sq < 0.0)
      throw std::invalid_argument("DriveParams: s and delta_sq must be nonnegative");
    DriveParams p;
    p.gamma = gamma;
    p.delta = gamma * std::sqrt(delta_sq);
    p.omega = std::sqrt(2.0 * s * (p.delta * p.delta + gamma * gamma));
    p.validate();
    return p;
  }
};

// Geometric arrangement of the atom pair. Positions are in units of 1/k0 and
// r2 - r1 = k0_r12 * n_hat. The far-field model needs k0_r12 >= 10.
struct Configuration {
  double k0_r12;
  Vec3 n_hat;
  Vec3 r1;
  Vec3 r2;

  Configuration(double k0_r12_, const Vec3& n_hat_, const Vec3& r1_ = Vec3::Zero())
      : k0_r12(k0_r12_), n_hat(n_hat_), r1(r1_), r2(r1_ + k0_r12_ * n_hat_) {
    if (std::abs(n_hat.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("Configuration: n_hat must be a unit vector");
    if (k0_r12 < 10.0)
      throw std::invalid_argument("Configuration: k0*r12 < 10 violates the far-field model");
  }

  cd coupling() const { return coupling_g(k0_r12); }
  Eigen::Matrix3d projector() const { return transverse_projector(n_hat); }

  // Laser phases k_L . r_alpha (|k_L| = k0; positions carry 1/k0).
  double phase1(const DriveParams& p) const { return p.kL_dir.dot(r1); }
  double phase2(const DriveParams& p) const { return p.kL_dir.dot(r2); }
  double phase_diff(const DriveParams& p) const { return p.kL_dir.dot(r2 - r1); }
};

}  // namespace cbs
