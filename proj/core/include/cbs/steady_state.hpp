#pragma once

#include <Eigen/Dense>
#include <optional>

#include "cbs/superoperator.hpp"

namespace cbs {

// Solves L x = b on the trace-constrained subspace by replacing the first
// diagonal row of L (the rows of any trace-preserving generator are linearly
// dependent: the diagonal rows sum to zero) with the trace functional:
//   row 0 -> tau, tau_v = [v is a diagonal element].
// M x = e_0 then yields the unique unit-trace steady state, and M x = b with
// b_0 zeroed yields the unique traceless solution of L x = b for traceless
// consistent b. Uniqueness is guarded through rcond; on failure the two
// smallest singular values of L are reported.
class BorderedSteadySolver {
 public:
  explicit BorderedSteadySolver(const Superoperator& L);

  Mat16 steady_state() const;                  // L x = 0, tr x = 1
  Mat16 solve_traceless(const Mat16& rhs) const;  // L x = rhs, tr x = 0
  Vec256 solve_traceless_vec(const Vec256& rhs) const;

  // y with M^T y = p, so that p . x = y . (b with b_0 = 0) for any traceless
  // solve M x = b; used to turn repeated observable traces into dot products.
  Vec256 dual_of_pairing(const Vec256& p) const;

  double rcond() const { return rcond_; }

 private:
  void check_unique(const Vec256& x) const;

  Eigen::PartialPivLU<MatX> lu_;
  MatX L_;  // original generator (kept for residual checks / SVD reporting)
  double rcond_;
};

// Steady-state coefficients order by order in the photon-exchange coupling:
// rho(g) = rho0 + g rho1_a + g* rho1_b + g^2 rho2_aa + |g|^2 rho2_ab +
// g*^2 rho2_bb. rho0 has unit trace; every correction is traceless, and
// Hermiticity pairs the coefficients (rho1_b = rho1_a^dag, etc.).
struct PerturbativeState {
  Mat16 rho0;
  Mat16 rho1_a, rho1_b;
  Mat16 rho2_aa, rho2_ab, rho2_bb;
};

// Unique unit-trace kernel vector of L0.
Mat16 solve_order0(const Superoperator& L0);

// Unique traceless solution of L0 x = rhs; requires |tr rhs| <= 1e-10
// (trace leakage in a right-hand side signals a coupling-block bug).
Mat16 solve_order_n(const Superoperator& L0, const Mat16& rhs);

// Full second-order chain in the lab frame:
//   L0 rho1_a = -A rho0          L0 rho1_b = -B rho0
//   L0 rho2_aa = -A rho1_a       L0 rho2_bb = -B rho1_b
//   L0 rho2_ab = -(A rho1_b + B rho1_a)
// computed with one factorization of L0.
PerturbativeState solve_perturbative(const Superoperator& L0, const CouplingBlocks& blocks);

// rho(g) per the expansion above; |g| <= 0.15 keeps the series sane
// (k0 r12 >= 10 has |g| <= 0.15).
Mat16 assemble(const PerturbativeState& state, cd g);

}  // namespace cbs
