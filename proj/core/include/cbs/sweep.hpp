#pragma once

#include <string>
#include <vector>

#include "cbs/average.hpp"
#include "cbs/observables.hpp"
#include "cbs/steady_state.hpp"

namespace cbs {

// ---------------------------------------------------------------------------
// Configuration-averaged solver for one drive point (fixed s, delta).
//
// The uncoupled generator with the Rabi phases gauged away ("tilde frame") is
// configuration independent, so a single LU factorization serves every
// sampled geometry. Writing the gauged coupling blocks as
//   A~ = lam A12 + conj(lam) A21,   B~ = conj(lam) B12 + lam B21,
// lam = e^{i k_L.(r2-r1)}, each perturbative coefficient splits into a few
// lam-power channels whose geometry dependence is only the transverse
// projector (orientation) times powers of lam and |g| (separation). Per
// orientation that leaves two triangular solves
//   u = -L0~^{-1} A12 rho0~,   v = -L0~^{-1} A21 rho0~
// (rho1_a~ = lam u + conj(lam) v, rho1_b~ = rho1_a~^dag) plus dual-vector dot
// products for the second-order detected amplitudes; radial nodes then cost
// only phase factors. This is an exact refactoring of the direct per-
// configuration chain (enforced by tests at 1e-10), not an approximation.
// ---------------------------------------------------------------------------

// Per-orientation amplitudes entering the averaged intensities.
struct OrientationAmplitudes {
  double z;     // k_L-axis projection of n_hat (phase rate of lam)
  double xdet;  // detector-axis projection of n_hat
  cd T1;        // <sigma1_21> first-order amplitude (v channel)
  cd T2;        // <sigma2_21> first-order amplitude (u channel)
  cd Lw;        // ladder weight: |g|^2 channel of <sigma1_22 + sigma2_22>^[2]
  cd Cw;        // crossed weight: conj(lam)^2 channel of the pair coherence
};

struct EngineOptions {
  Vec3 det_axis = Vec3(1, 0, 0);  // detector tilt direction (perp. to k_L)
  bool with_error = true;
  // Test hook: conjugates the photon-exchange phase on the reversed
  // (interfering) path only. Self-interference terms are untouched, so the
  // ladder and elastic-ladder survive while every crossed term dephases:
  // the elastic reciprocity identity L_el = C_el(0) must then fail loudly.
  bool corrupt_coupling_sign = false;
};

// Fully averaged intensities of one drive point, in units of |g(r_mean)|^2.
struct PointResult {
  double s = 0.0;
  double delta_sq = 0.0;
  std::vector<double> thetas;   // evaluation angles of C_theta
  std::vector<double> C_theta;  // crossed intensity at each angle
  double L_tot = 0.0;
  double C_tot0 = 0.0;  // crossed at exact backscattering
  double L_el = 0.0;
  double C_el = 0.0;
  double alpha = 0.0;  // 1 + C_tot0 / L_tot
  // Error estimates: |full - half resolution| (quadrature) or standard error
  // of the mean (monte-carlo; alpha by uncorrelated propagation).
  double L_tot_err = 0.0;
  double C_tot0_err = 0.0;
  double L_el_err = 0.0;
  double C_el_err = 0.0;
  double alpha_err = 0.0;

  CbsPoint to_cbs_point() const;
};

class PerturbativeSolver {
 public:
  // Requires the canonical drive geometry (k_L along +z with e_{+1}
  // polarization): the channel bookkeeping above is derived for it.
  explicit PerturbativeSolver(const DriveParams& drive);

  const DriveParams& drive() const { return drive_; }
  const Mat16& rho0_tilde() const { return rho0_tilde_; }

  // Direct-form perturbative coefficients (lab frame) for one configuration,
  // recovered from the shared factorization via the gauge phase masks.
  PerturbativeState state_for(const Configuration& config) const;

  OrientationAmplitudes amplitudes_for(const Vec3& n_hat,
                                       const Vec3& det_axis = Vec3(1, 0, 0)) const;

  // Disorder-averaged intensities; crossed evaluated at every angle in
  // `thetas` (each |theta| <= 0.1) plus exact backscattering.
  PointResult point_average(const AverageSpec& avg, const std::vector<double>& thetas = {},
                            const EngineOptions& opt = {}) const;

 private:
  struct RawMeans;
  RawMeans average_raw(const AverageSpec& avg, int n_orient, int n_radial,
                       const std::vector<double>& thetas, const EngineOptions& opt) const;

  DriveParams drive_;
  Superoperator L0_tilde_;
  BorderedSteadySolver solver_;
  Mat16 rho0_tilde_;
  Vec256 dual_ladder_;  // pairing dual of sigma1_22 + sigma2_22
  Vec256 dual_pair_;    // pairing dual of sigma1_21 sigma2_12
  Vec256 pair_sig21_1_, pair_sig21_2_;  // trace pairings of sigma_21
};

// ---------------------------------------------------------------------------
// Sweep drivers and the self-check runner.
// ---------------------------------------------------------------------------

struct RunConfig {
  enum class SweepKind { s, theta };
  enum class Format { csv, json };

  SweepKind sweep = SweepKind::s;
  double s_min = 0.01;
  double s_max = 100.0;
  int s_points = 25;
  bool log_grid = true;
  double s_fixed = 1.0;  // saturation used by the theta sweep
  double theta_max = 0.02;
  int theta_points = 21;
  double delta = 0.0;  // detuning in units of gamma
  AverageSpec average;
  std::string out_path;  // empty = stdout
  Format format = Format::csv;

  void validate() const;
  DriveParams drive_at(double s) const {
    return DriveParams::from_saturation(s, delta * delta);
  }
};

std::vector<double> s_grid(const RunConfig& cfg);

// One averaged point per saturation value (theta = 0 column set).
std::vector<CbsPoint> sweep_s(const RunConfig& cfg);

struct ThetaPoint {
  double theta = 0.0;
  double C_tot = 0.0;
  double L_tot = 0.0;  // theta independent inside the cone
};

// Crossed-intensity profile across the backscattering cone at s_fixed.
std::vector<ThetaPoint> sweep_theta(const RunConfig& cfg);

struct VerifyCheck {
  std::string name;
  double value = 0.0;      // measured error / deviation
  double threshold = 0.0;  // pass iff value <= threshold
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  int failures() const;
};

// Built-in consistency battery: closed-form elastic background, elastic
// reciprocity, nonperturbative oracle agreement, quadrature convergence,
// exact-state positivity, and generator trace preservation. The corrupt flag
// feeds the EngineOptions test hook through the reciprocity check.
VerifyReport verify(const RunConfig& cfg, bool corrupt_coupling_sign = false);

}  // namespace cbs
