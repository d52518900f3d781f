#include "cbs/oracle.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>
#include <sstream>
#include <stdexcept>

namespace cbs {

Mat16 exact_steady_state(const Superoperator& L_full) {
  return BorderedSteadySolver(L_full).steady_state();
}

namespace {

// Real view of the vectorized density matrix: std::complex<double> is
// layout-compatible with double[2], so a 512-vector of (re, im) pairs maps
// onto the 256 complex amplitudes without copies.
using RealState = Eigen::VectorXd;

Eigen::Map<const Eigen::VectorXcd> as_complex(const RealState& x) {
  return {reinterpret_cast<const cd*>(x.data()), x.size() / 2};
}

}  // namespace

TimeIntegrationResult time_integrate(const Superoperator& L_full, const Mat16& rho_init,
                                     double t_final) {
  if (t_final < 50.0)
    throw std::invalid_argument("time_integrate: t_final < 50/gamma does not reach stationarity");

  namespace ode = boost::numeric::odeint;
  const MatX& L = L_full.matrix;

  RealState x(512);
  Eigen::Map<Eigen::VectorXcd>(reinterpret_cast<cd*>(x.data()), 256) = vec_rho(rho_init);

  auto system = [&L](const RealState& in, RealState& out, double /*t*/) {
    out.resize(512);
    Eigen::Map<Eigen::VectorXcd>(reinterpret_cast<cd*>(out.data()), 256).noalias() =
        L * as_complex(in);
  };

  using Stepper = ode::runge_kutta_dopri5<RealState, double, RealState, double,
                                          ode::vector_space_algebra>;
  auto controlled = ode::make_controlled<Stepper>(1e-11, 1e-11);
  ode::integrate_adaptive(controlled, system, x, 0.0, t_final, 1e-2);

  TimeIntegrationResult out;
  Eigen::VectorXcd xc = as_complex(x);
  out.residual = (L * xc).cwiseAbs().maxCoeff();
  Vec256 v = xc;
  out.rho = unvec_rho(v);
  return out;
}

namespace {

constexpr std::array<double, 4> kScalingNodes = {1.0, 0.5, 0.25, 0.125};

// Fit h(t) = (f(t) - f0)/t by c1 + c2 t + c3 t^2 in least squares over the
// four scaling nodes and package the series coefficients.
RichardsonResult fit_scaling_series(cd f0, const Eigen::Vector4cd& f_at_nodes,
                                    double residual_tol) {
  RichardsonResult res;
  res.f0 = f0;

  Eigen::Vector4cd h;
  Eigen::Matrix<cd, 4, 3> V;
  for (int k = 0; k < 4; ++k) {
    const double t = kScalingNodes[static_cast<size_t>(k)];
    h(k) = (f_at_nodes(k) - f0) / t;
    V(k, 0) = 1.0;
    V(k, 1) = t;
    V(k, 2) = t * t;
  }
  const Eigen::Vector3cd c = V.colPivHouseholderQr().solve(h);

  const double scale = h.norm();
  if (scale < 1e-12 * (1.0 + std::abs(f0))) {
    // Observable has no coupling dependence at this order; report exact zeros.
    res.order1 = res.order2 = res.order3 = 0.0;
    res.residual = 0.0;
    return res;
  }
  res.residual = (V * c - h).norm() / scale;
  if (res.residual > residual_tol) {
    std::ostringstream msg;
    msg << "richardson_extract: fit residual " << res.residual
        << " exceeds tolerance; the coupling series is breaking down at this drive";
    throw std::runtime_error(msg.str());
  }
  res.order1 = c(0);
  res.order2 = c(1);
  res.order3 = c(2);
  return res;
}

}  // namespace

std::vector<RichardsonResult> richardson_extract_many(
    const std::vector<std::function<cd(const Mat16&)>>& observables, const DriveParams& drive,
    const Configuration& config, double residual_tol) {
  const Superoperator L0 = build_single_atom_liouvillian(drive, config);
  const auto [A, B] = build_coupling_blocks(config, drive.gamma);
  const cd g = config.coupling();

  const Mat16 rho_uncoupled = exact_steady_state(L0);
  std::array<Mat16, 4> rho_at;
  for (size_t k = 0; k < 4; ++k) {
    const Superoperator Lt = assemble_full_liouvillian(L0, A, B, kScalingNodes[k] * g);
    rho_at[k] = exact_steady_state(Lt);
  }

  std::vector<RichardsonResult> out;
  out.reserve(observables.size());
  for (const auto& observable : observables) {
    const cd f0 = observable(rho_uncoupled);
    Eigen::Vector4cd f_nodes;
    for (int k = 0; k < 4; ++k) f_nodes(k) = observable(rho_at[static_cast<size_t>(k)]);
    out.push_back(fit_scaling_series(f0, f_nodes, residual_tol));
  }
  return out;
}

RichardsonResult richardson_extract(const std::function<cd(const Mat16&)>& observable,
                                    const DriveParams& drive, const Configuration& config,
                                    double residual_tol) {
  return richardson_extract_many({observable}, drive, config, residual_tol).front();
}

cd richardson_order2(const std::function<cd(const Mat16&)>& observable, const DriveParams& drive,
                     const Configuration& config) {
  return richardson_extract(observable, drive, config).order2;
}

double min_eigenvalue(const Mat16& rho) {
  const Mat16 herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat16> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

OracleReport make_oracle_report(const DriveParams& drive, const Configuration& config) {
  const Superoperator L0 = build_single_atom_liouvillian(drive, config);
  const auto [A, B] = build_coupling_blocks(config, drive.gamma);
  const cd g = config.coupling();
  const Superoperator L_full = assemble_full_liouvillian(L0, A, B, g);

  OracleReport rep;
  rep.exact_rho = exact_steady_state(L_full);

  const PerturbativeState state = solve_perturbative(L0, CouplingBlocks(config, drive.gamma));
  rep.series_error = (assemble(state, g) - rep.exact_rho).norm();

  const Mat16 q = sigma_op(1, 2, 2);
  rep.richardson_order2_pop2 =
      richardson_extract([&q](const Mat16& rho) { return (rho * q).trace(); }, drive, config)
          .order2;

  Mat16 ground = Mat16::Zero();
  ground(0, 0) = 1.0;
  rep.integrator_residual = time_integrate(L_full, ground, 60.0).residual;
  return rep;
}

}  // namespace cbs
