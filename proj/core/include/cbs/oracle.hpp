#pragma once

#include <functional>
#include <vector>

#include "cbs/steady_state.hpp"

namespace cbs {

// Nonperturbative cross-checks for the perturbative solver.

// Unique unit-trace steady state of the full coupled generator at finite g.
Mat16 exact_steady_state(const Superoperator& L_full);

struct TimeIntegrationResult {
  Mat16 rho;
  double residual;  // ||L rho(t_final)||_inf
};

// Adaptive explicit integration of rho_dot = L rho from rho_init to t_final
// (units 1/gamma; t_final >= 50 reaches stationarity at gamma-scale rates).
TimeIntegrationResult time_integrate(const Superoperator& L_full, const Mat16& rho_init,
                                     double t_final);

// Coupling-strength scaling: the observable is evaluated on exact steady
// states at couplings t*g for t in {1, 1/2, 1/4, 1/8} (|g| scaled at fixed
// phase, so the uncoupled generator is shared and only the series order is
// probed). With the exactly known t=0 value subtracted, (f(t)-f(0))/t is fit
// by a quadratic least squares; its coefficients are the order-1..3 series
// coefficients of the observable in t.
struct RichardsonResult {
  cd f0;        // uncoupled (t = 0) value
  cd order1;    // coefficient of t   (first order in the coupling)
  cd order2;    // coefficient of t^2 (second order; the CBS-relevant one)
  cd order3;    // coefficient of t^3 (diagnostic)
  double residual;  // relative fit residual; large values flag series breakdown
};

RichardsonResult richardson_extract(const std::function<cd(const Mat16&)>& observable,
                                    const DriveParams& drive, const Configuration& config,
                                    double residual_tol = 1e-3);

// Same scaling study for several observables at once: the four exact steady
// states are computed a single time and every observable is fit against them.
std::vector<RichardsonResult> richardson_extract_many(
    const std::vector<std::function<cd(const Mat16&)>>& observables, const DriveParams& drive,
    const Configuration& config, double residual_tol = 1e-3);

// The t^2 coefficient alone (errors if the fit residual exceeds the default
// tolerance).
cd richardson_order2(const std::function<cd(const Mat16&)>& observable,
                     const DriveParams& drive, const Configuration& config);

// Smallest eigenvalue of the Hermitized matrix (positivity diagnostics).
double min_eigenvalue(const Mat16& rho);

// Bundled report used by the verification runner.
struct OracleReport {
  Mat16 exact_rho;
  double series_error;        // ||rho_pert(g) - rho_exact(g)||_F
  cd richardson_order2_pop2;  // extracted t^2 coefficient of <sigma1_22>
  double integrator_residual;
};

OracleReport make_oracle_report(const DriveParams& drive, const Configuration& config);

}  // namespace cbs
