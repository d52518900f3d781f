#include "cbs/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cbs/oracle.hpp"
#include "cbs/spherical.hpp"
#include "cbs/util.hpp"

namespace cbs {

namespace {

const cd kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// Row-major trace pairing: tr(x * op) = vec(op^T) . vec(x) (bilinear dot).
Vec256 trace_pairing(const Mat16& op) { return vec_rho(op.transpose()); }

cd bilinear(const Vec256& a, const Vec256& b) { return (a.array() * b.array()).sum(); }

const DriveParams& require_canonical_drive(const DriveParams& d) {
  d.validate();
  const bool pol_ok = std::abs(d.pol.c_p1 - 1.0) < 1e-12 && std::abs(d.pol.c_0) < 1e-12 &&
                      std::abs(d.pol.c_m1) < 1e-12;
  if (!pol_ok || (d.kL_dir - Vec3(0, 0, 1)).norm() > 1e-12)
    throw std::invalid_argument(
        "PerturbativeSolver: requires k_L along +z with e_{+1} polarization");
  return d;
}

// Mean of |g(r)|^2 over the radial window relative to |g(r_mean)|^2, for the
// uniform measure: <1/r^2> = 1/(r_lo r_hi) exactly.
double radial_g2_ratio(const AverageSpec& avg) {
  return avg.r_mean * avg.r_mean / (avg.r_lo() * avg.r_hi());
}

}  // namespace

CbsPoint PointResult::to_cbs_point() const {
  CbsPoint p;
  p.s = s;
  p.delta_sq = delta_sq;
  p.theta = 0.0;
  p.L_tot = L_tot;
  p.C_tot0 = C_tot0;
  p.I_tot = L_tot + C_tot0;
  p.L_el = L_el;
  p.C_el = C_el;
  p.L_inel = L_tot - L_el;
  p.C_inel = C_tot0 - C_el;
  p.alpha = alpha;
  p.alpha_err = alpha_err;
  return p;
}

PerturbativeSolver::PerturbativeSolver(const DriveParams& drive)
    : drive_(drive),
      L0_tilde_(build_uncoupled_liouvillian(require_canonical_drive(drive))),
      solver_(L0_tilde_),
      rho0_tilde_(solver_.steady_state()) {
  dual_ladder_ = solver_.dual_of_pairing(trace_pairing(observable_sigma22_sum()));
  dual_pair_ = solver_.dual_of_pairing(trace_pairing(observable_pair_coherence()));
  pair_sig21_1_ = trace_pairing(observable_sigma21(1));
  pair_sig21_2_ = trace_pairing(observable_sigma21(2));
}

PerturbativeState PerturbativeSolver::state_for(const Configuration& config) const {
  const CouplingBlocks blocks(config, drive_.gamma);
  const double phi1 = config.phase1(drive_);
  const double phi2 = config.phase2(drive_);
  const cd lam = std::exp(kI * (phi2 - phi1));
  const cd lamc = std::conj(lam);

  PerturbativeState t;
  t.rho0 = rho0_tilde_;
  t.rho1_a = solver_.solve_traceless(-blocks.apply_A(t.rho0, lam, lamc));
  t.rho1_b = solver_.solve_traceless(-blocks.apply_B(t.rho0, lamc, lam));
  t.rho2_aa = solver_.solve_traceless(-blocks.apply_A(t.rho1_a, lam, lamc));
  t.rho2_bb = solver_.solve_traceless(-blocks.apply_B(t.rho1_b, lamc, lam));
  t.rho2_ab = solver_.solve_traceless(
      -(blocks.apply_A(t.rho1_b, lam, lamc) + blocks.apply_B(t.rho1_a, lamc, lam)));

  // Undo the Rabi-phase gauge: rho_lab = W rho~ W^dag with the diagonal
  // excitation-phase mask W, applied to every coefficient.
  Vec16 w;
  for (int i = 1; i <= 4; ++i)
    for (int k = 1; k <= 4; ++k) {
      const double phi =
          (level_is_excited(i) ? phi1 : 0.0) + (level_is_excited(k) ? phi2 : 0.0);
      w(product_index(i, k)) = std::exp(kI * phi);
    }
  const auto mask = [&w](Mat16& m) {
    m = w.asDiagonal() * m * w.conjugate().asDiagonal();
  };
  mask(t.rho0);
  mask(t.rho1_a);
  mask(t.rho1_b);
  mask(t.rho2_aa);
  mask(t.rho2_ab);
  mask(t.rho2_bb);
  return t;
}

OrientationAmplitudes PerturbativeSolver::amplitudes_for(const Vec3& n_hat,
                                                         const Vec3& det_axis) const {
  const CouplingBlocks blocks(transverse_projector(n_hat), drive_.gamma);

  // First-order lam-channels of rho1_a~ = lam u + conj(lam) v.
  const Mat16 u = solver_.solve_traceless(-blocks.apply_A12(rho0_tilde_));
  const Mat16 v = solver_.solve_traceless(-blocks.apply_A21(rho0_tilde_));
  const Mat16 udag = u.adjoint();
  const Mat16 vdag = v.adjoint();

  OrientationAmplitudes amp;
  amp.z = n_hat.dot(drive_.kL_dir);
  amp.xdet = n_hat.dot(det_axis);
  amp.T1 = bilinear(pair_sig21_1_, vec_rho(v));
  amp.T2 = bilinear(pair_sig21_2_, vec_rho(u));

  // lam^0 channel of the |g|^2 coefficient (rho1_b~ = conj(lam) u^dag + lam
  // v^dag) and the conj(lam)^2 channel feeding the pair coherence; the
  // detected observables pair with no other channel (checked against the
  // direct per-configuration chain by tests).
  const Mat16 r0 = -(blocks.apply_A12(udag) + blocks.apply_A21(vdag) + blocks.apply_B12(u) +
                     blocks.apply_B21(v));
  const Mat16 r2 = -(blocks.apply_A21(udag) + blocks.apply_B12(v));

  Vec256 b0 = vec_rho(r0);
  b0(0) = 0.0;
  Vec256 b2 = vec_rho(r2);
  b2(0) = 0.0;
  amp.Lw = bilinear(dual_ladder_, b0);
  amp.Cw = bilinear(dual_pair_, b2);
  return amp;
}

// Uncalibrated weighted means over the disorder ensemble.
struct PerturbativeSolver::RawMeans {
  cd ladder{0.0, 0.0};
  std::vector<cd> crossed;  // one entry per evaluation angle
  double el_ladder = 0.0;
  cd el_crossed0{0.0, 0.0};
  // Standard errors of the real parts (monte-carlo mode only).
  double se_ladder = 0.0;
  double se_el_ladder = 0.0;
  double se_el_crossed0 = 0.0;
  std::vector<double> se_crossed;
};

PerturbativeSolver::RawMeans PerturbativeSolver::average_raw(const AverageSpec& avg,
                                                             int n_orient, int n_radial,
                                                             const std::vector<double>& thetas,
                                                             const EngineOptions& opt) const {
  const std::size_t nth = thetas.size();
  // Sign of the exchange phase on the reversed path; -1 is the physical value
  // that makes the backscattering interference constructive.
  const double sgn = opt.corrupt_coupling_sign ? +1.0 : -1.0;

  std::vector<OrientationAmplitudes> amps;
  std::vector<double> radii, rweights, oweights;  // per-sample geometry
  std::vector<std::size_t> amp_index;             // sample -> orientation

  if (avg.mode == AverageSpec::Mode::quadrature) {
    const auto dirs = orientation_nodes(n_orient);
    std::vector<double> rr, rw;
    radial_nodes(avg, n_radial, rr, rw);
    amps.resize(dirs.size());
    parallel_for(dirs.size(),
                 [&](std::size_t i) { amps[i] = amplitudes_for(dirs[i], opt.det_axis); });
    const double w_orient = 1.0 / static_cast<double>(n_orient);
    radii.reserve(dirs.size() * rr.size());
    for (std::size_t i = 0; i < dirs.size(); ++i)
      for (std::size_t j = 0; j < rr.size(); ++j) {
        amp_index.push_back(i);
        radii.push_back(rr[j]);
        rweights.push_back(w_orient * rw[j]);
      }
  } else {
    const auto samples = sample_configurations_unchecked(avg, n_orient, n_radial);
    amps.resize(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
      amps[i] = amplitudes_for(samples[i].config.n_hat, opt.det_axis);
    });
    for (std::size_t i = 0; i < samples.size(); ++i) {
      amp_index.push_back(i);
      radii.push_back(samples[i].config.k0_r12);
      rweights.push_back(samples[i].weight);
    }
  }

  const std::size_t nsamp = radii.size();
  std::vector<cd> lad(nsamp), elc(nsamp);
  std::vector<double> ell(nsamp);
  std::vector<cd> crossed(nth * nsamp);

  for (std::size_t k = 0; k < nsamp; ++k) {
    const OrientationAmplitudes& a = amps[amp_index[k]];
    const double r = radii[k];
    const double g2 = std::norm(coupling_g(r));
    const double base_w = rweights[k] * g2;
    const double phi_l = r * a.z;

    lad[k] = base_w * a.Lw;
    ell[k] = base_w * (std::norm(a.T1) + std::norm(a.T2));
    elc[k] = base_w * 2.0 * a.T1 * std::conj(a.T2) * std::exp(kI * ((1.0 + sgn) * phi_l));
    for (std::size_t t = 0; t < nth; ++t) {
      const double th = thetas[t];
      const double det = r * (std::cos(th) * a.z - std::sin(th) * a.xdet);
      crossed[t * nsamp + k] = base_w * 2.0 * a.Cw * std::exp(kI * (det + sgn * phi_l));
    }
  }

  RawMeans out;
  out.ladder = pairwise_sum(lad);
  out.el_ladder = pairwise_sum(ell);
  out.el_crossed0 = pairwise_sum(elc);
  out.crossed.resize(nth);
  std::vector<cd> column(nsamp);
  for (std::size_t t = 0; t < nth; ++t) {
    std::copy(crossed.begin() + static_cast<std::ptrdiff_t>(t * nsamp),
              crossed.begin() + static_cast<std::ptrdiff_t>((t + 1) * nsamp), column.begin());
    out.crossed[t] = pairwise_sum(column);
  }

  if (avg.mode == AverageSpec::Mode::monte_carlo && nsamp > 1) {
    const double n = static_cast<double>(nsamp);
    // Samples carry weight 1/N, so N * contribution is the i.i.d. variate.
    const auto stderr_of = [n, nsamp](const std::vector<cd>& xs, double mean) {
      double var = 0.0;
      for (std::size_t k = 0; k < nsamp; ++k) {
        const double x = n * xs[k].real() - mean;
        var += x * x;
      }
      return std::sqrt(var / (n * (n - 1.0)));
    };
    out.se_ladder = stderr_of(lad, out.ladder.real());
    out.se_el_crossed0 = stderr_of(elc, out.el_crossed0.real());
    {
      double var = 0.0;
      for (std::size_t k = 0; k < nsamp; ++k) {
        const double x = n * ell[k] - out.el_ladder;
        var += x * x;
      }
      out.se_el_ladder = std::sqrt(var / (n * (n - 1.0)));
    }
    out.se_crossed.resize(nth);
    for (std::size_t t = 0; t < nth; ++t) {
      std::copy(crossed.begin() + static_cast<std::ptrdiff_t>(t * nsamp),
                crossed.begin() + static_cast<std::ptrdiff_t>((t + 1) * nsamp), column.begin());
      out.se_crossed[t] = stderr_of(column, out.crossed[t].real());
    }
  }
  return out;
}

PointResult PerturbativeSolver::point_average(const AverageSpec& avg,
                                              const std::vector<double>& thetas,
                                              const EngineOptions& opt) const {
  avg.validate();
  for (double th : thetas)
    if (std::abs(th) > 0.1)
      throw std::domain_error("point_average: |theta| > 0.1 rad is outside the cone regime");

  std::vector<double> eval = {0.0};
  eval.insert(eval.end(), thetas.begin(), thetas.end());

  const RawMeans full = average_raw(avg, avg.n_orient, avg.n_radial, eval, opt);
  const double scale = kIntensityCalibration / std::norm(coupling_g(avg.r_mean));

  PointResult res;
  res.s = drive_.s();
  res.delta_sq = drive_.delta_sq();
  res.thetas = thetas;
  res.L_tot = scale * full.ladder.real();
  res.C_tot0 = scale * full.crossed[0].real();
  res.L_el = scale * full.el_ladder;
  res.C_el = scale * full.el_crossed0.real();
  res.C_theta.resize(thetas.size());
  for (std::size_t t = 0; t < thetas.size(); ++t)
    res.C_theta[t] = scale * full.crossed[t + 1].real();
  res.alpha = enhancement(res.L_tot, res.C_tot0);

  if (!opt.with_error) return res;

  if (avg.mode == AverageSpec::Mode::quadrature) {
    const RawMeans half = average_raw(avg, std::max(4, avg.n_orient / 2),
                                      std::max(4, avg.n_radial / 2), {0.0}, opt);
    const double l_half = scale * half.ladder.real();
    const double c_half = scale * half.crossed[0].real();
    res.L_tot_err = std::abs(res.L_tot - l_half);
    res.C_tot0_err = std::abs(res.C_tot0 - c_half);
    res.L_el_err = std::abs(res.L_el - scale * half.el_ladder);
    res.C_el_err = std::abs(res.C_el - scale * half.el_crossed0.real());
    res.alpha_err = std::abs(res.alpha - enhancement(l_half, c_half));
  } else {
    res.L_tot_err = scale * full.se_ladder;
    res.C_tot0_err = scale * full.se_crossed[0];
    res.L_el_err = scale * full.se_el_ladder;
    res.C_el_err = scale * full.se_el_crossed0;
    // Uncorrelated propagation through alpha = 1 + C/L.
    const double l = res.L_tot, c = res.C_tot0;
    res.alpha_err = std::sqrt(std::pow(res.C_tot0_err / l, 2) +
                              std::pow(c * res.L_tot_err / (l * l), 2));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Sweeps.
// ---------------------------------------------------------------------------

void RunConfig::validate() const {
  average.validate();
  if (sweep == SweepKind::s) {
    if (s_points < 2) throw std::invalid_argument("RunConfig: s_points must be >= 2");
    if (!(s_min > 0.0) || !(s_min < s_max))
      throw std::invalid_argument("RunConfig: need 0 < s_min < s_max");
  } else {
    if (theta_points < 2) throw std::invalid_argument("RunConfig: theta_points must be >= 2");
    if (!(theta_max > 0.0) || theta_max > 0.1)
      throw std::invalid_argument("RunConfig: need 0 < theta_max <= 0.1 rad");
    if (!(s_fixed > 0.0)) throw std::invalid_argument("RunConfig: s_fixed must be positive");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("RunConfig: delta must be finite and nonnegative");
}

std::vector<double> s_grid(const RunConfig& cfg) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cfg.s_points));
  if (cfg.s_points == 1) {
    out.push_back(cfg.s_min);
    return out;
  }
  for (int i = 0; i < cfg.s_points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(cfg.s_points - 1);
    out.push_back(cfg.log_grid
                      ? std::exp(std::log(cfg.s_min) + f * (std::log(cfg.s_max) - std::log(cfg.s_min)))
                      : cfg.s_min + f * (cfg.s_max - cfg.s_min));
  }
  return out;
}

std::vector<CbsPoint> sweep_s(const RunConfig& cfg) {
  cfg.validate();
  std::vector<CbsPoint> out;
  for (double s : s_grid(cfg)) {
    const PerturbativeSolver solver(cfg.drive_at(s));
    out.push_back(solver.point_average(cfg.average).to_cbs_point());
  }
  return out;
}

std::vector<ThetaPoint> sweep_theta(const RunConfig& cfg) {
  cfg.validate();
  std::vector<double> thetas;
  thetas.reserve(static_cast<std::size_t>(cfg.theta_points));
  for (int i = 0; i < cfg.theta_points; ++i) {
    const double f = cfg.theta_points == 1
                         ? 0.0
                         : static_cast<double>(i) / static_cast<double>(cfg.theta_points - 1);
    thetas.push_back(f * cfg.theta_max);
  }
  const PerturbativeSolver solver(cfg.drive_at(cfg.s_fixed));
  EngineOptions opt;
  opt.with_error = false;
  const PointResult res = solver.point_average(cfg.average, thetas, opt);
  std::vector<ThetaPoint> out;
  out.reserve(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i)
    out.push_back({thetas[i], res.C_theta[i], res.L_tot});
  return out;
}

// ---------------------------------------------------------------------------
// Self-check battery.
// ---------------------------------------------------------------------------

int VerifyReport::failures() const {
  int n = 0;
  for (const auto& c : checks)
    if (!c.pass) ++n;
  return n;
}

VerifyReport verify(const RunConfig& cfg, bool corrupt_coupling_sign) {
  cfg.validate();
  VerifyReport rep;
  const auto add = [&rep](std::string name, double value, double threshold) {
    VerifyCheck c;
    c.name = std::move(name);
    c.value = value;
    c.threshold = threshold;
    c.pass = value <= threshold;
    rep.checks.push_back(std::move(c));
  };

  const double dsq = cfg.delta * cfg.delta;
  const double m_r = radial_g2_ratio(cfg.average);

  // Closed-form elastic background and elastic reciprocity.
  for (double s : {0.1, 1.0}) {
    const PerturbativeSolver solver(cfg.drive_at(s));
    EngineOptions opt;
    opt.with_error = false;
    opt.corrupt_coupling_sign = corrupt_coupling_sign;
    const PointResult res = solver.point_average(cfg.average, {}, opt);
    const double expected =
        24.0 * kPi * s / ((1.0 + dsq) * std::pow(1.0 + s, 4)) * m_r;
    std::ostringstream tag;
    tag << "_s=" << s;
    add("elastic_closed_form" + tag.str(), std::abs(res.L_el - expected) / expected, 1e-6);
    add("elastic_reciprocity" + tag.str(), std::abs(res.L_el - res.C_el) / res.L_el, 1e-10);
  }

  // Nonperturbative oracle agreement on the five detected expectations at one
  // representative configuration.
  {
    const DriveParams drive = cfg.drive_at(1.0);
    const Vec3 n_hat = Vec3(0.3, -0.5, 0.81).normalized();
    const Configuration config(cfg.average.r_mean + 0.37, n_hat);
    const PerturbativeSolver solver(drive);
    const PerturbativeState state = solver.state_for(config);
    const cd g = config.coupling();
    const std::array<Mat16, 5> ops = {sigma_op(1, 2, 2), sigma_op(2, 2, 2),
                                      observable_pair_coherence(), observable_sigma21(1),
                                      observable_sigma21(2)};
    double worst = 0.0;
    double ref = 0.0;
    std::array<cd, 5> pert2;
    std::vector<std::function<cd(const Mat16&)>> fns;
    for (std::size_t k = 0; k < 5; ++k) {
      const Mat16& q = ops[k];
      pert2[k] = g * g * (state.rho2_aa * q).trace() + std::norm(g) * (state.rho2_ab * q).trace() +
                 std::conj(g) * std::conj(g) * (state.rho2_bb * q).trace();
      fns.emplace_back([&q](const Mat16& rho) { return (rho * q).trace(); });
    }
    const std::vector<RichardsonResult> rich = richardson_extract_many(fns, drive, config);
    for (std::size_t k = 0; k < 5; ++k) ref = std::max(ref, std::abs(rich[k].order2));
    for (std::size_t k = 0; k < 5; ++k) {
      const double denom = std::max(std::abs(rich[k].order2), 1e-9 * ref);
      worst = std::max(worst, std::abs(pert2[k] - rich[k].order2) / denom);
    }
    add("oracle_order2_agreement", worst, 1e-4);
  }

  // Quadrature convergence of the total background.
  {
    const PerturbativeSolver solver(cfg.drive_at(1.0));
    EngineOptions opt;
    opt.with_error = false;
    const PointResult coarse = solver.point_average(cfg.average, {}, opt);
    AverageSpec fine = cfg.average;
    fine.n_orient *= 2;
    fine.n_radial *= 2;
    const PointResult dense = solver.point_average(fine, {}, opt);
    add("quadrature_convergence", std::abs(coarse.L_tot - dense.L_tot) / dense.L_tot, 1e-3);
  }

  // Positivity of the exact steady state and trace preservation of the
  // generators at a sample configuration.
  {
    const DriveParams drive = cfg.drive_at(1.0);
    const Configuration config(cfg.average.r_mean, Vec3(0, 0.6, 0.8));
    const Superoperator L0 = build_single_atom_liouvillian(drive, config);
    const auto [A, B] = build_coupling_blocks(config, drive.gamma);
    const Superoperator L_full = assemble_full_liouvillian(L0, A, B, config.coupling());
    const double mineig = min_eigenvalue(exact_steady_state(L_full));
    add("exact_state_positivity", std::max(0.0, -mineig), 1e-12);
    add("generator_trace_rows",
        std::max(L0.trace_row_residual(), L_full.trace_row_residual()), 1e-12);
  }

  return rep;
}

}  // namespace cbs
