#include "cbs/steady_state.hpp"

#include <iostream>
#include <sstream>
#include <stdexcept>

namespace cbs {

namespace {

MatX bordered_matrix(const MatX& L) {
  MatX m = L;
  m.row(0).setZero();
  for (int d = 0; d < 16; ++d) m(0, 16 * d + d) = 1.0;
  return m;
}

[[noreturn]] void throw_kernel_error(const MatX& L) {
  Eigen::BDCSVD<MatX> svd(L);
  const auto& sv = svd.singularValues();
  std::ostringstream msg;
  msg << "steady-state solve failed: generator kernel is not one-dimensional; "
      << "two smallest singular values: " << sv(sv.size() - 1) << ", " << sv(sv.size() - 2);
  throw std::runtime_error(msg.str());
}

}  // namespace

BorderedSteadySolver::BorderedSteadySolver(const Superoperator& L)
    : lu_(bordered_matrix(L.matrix)), L_(L.matrix) {
  rcond_ = lu_.rcond();
  if (!(rcond_ > 1e-14)) throw_kernel_error(L_);
  if (rcond_ < 1e-10) {
    std::cerr << "[steady-state] warning: bordered system condition ~ " << 1.0 / rcond_
              << " exceeds 1e10\n";
  }
}

void BorderedSteadySolver::check_unique(const Vec256& x) const {
  // Residual of the *original* equations on the solution; catches consistent
  // factorizations of malformed generators.
  const double resid = (L_ * x).cwiseAbs().maxCoeff();
  const double scale = x.cwiseAbs().maxCoeff();
  if (!(resid <= 1e-8 * std::max(1.0, scale))) throw_kernel_error(L_);
}

Mat16 BorderedSteadySolver::steady_state() const {
  Vec256 b = Vec256::Zero();
  b(0) = 1.0;
  const Vec256 x = lu_.solve(b);
  check_unique(x);
  return unvec_rho(x);
}

Vec256 BorderedSteadySolver::solve_traceless_vec(const Vec256& rhs) const {
  Vec256 b = rhs;
  b(0) = 0.0;
  return lu_.solve(b);
}

Mat16 BorderedSteadySolver::solve_traceless(const Mat16& rhs) const {
  const cd tr = rhs.trace();
  if (std::abs(tr) > 1e-10) {
    std::ostringstream msg;
    msg << "solve_traceless: right-hand side has trace " << tr
        << " (coupling blocks must produce traceless sources)";
    throw std::invalid_argument(msg.str());
  }
  return unvec_rho(solve_traceless_vec(vec_rho(rhs)));
}

Vec256 BorderedSteadySolver::dual_of_pairing(const Vec256& p) const {
  return lu_.transpose().solve(p);
}

Mat16 solve_order0(const Superoperator& L0) {
  return BorderedSteadySolver(L0).steady_state();
}

Mat16 solve_order_n(const Superoperator& L0, const Mat16& rhs) {
  return BorderedSteadySolver(L0).solve_traceless(rhs);
}

PerturbativeState solve_perturbative(const Superoperator& L0, const CouplingBlocks& blocks) {
  const BorderedSteadySolver solver(L0);
  PerturbativeState st;
  st.rho0 = solver.steady_state();
  st.rho1_a = solver.solve_traceless(-blocks.apply_A(st.rho0));
  st.rho1_b = solver.solve_traceless(-blocks.apply_B(st.rho0));
  st.rho2_aa = solver.solve_traceless(-blocks.apply_A(st.rho1_a));
  st.rho2_bb = solver.solve_traceless(-blocks.apply_B(st.rho1_b));
  st.rho2_ab = solver.solve_traceless(
      -(blocks.apply_A(st.rho1_b) + blocks.apply_B(st.rho1_a)));
  return st;
}

Mat16 assemble(const PerturbativeState& state, cd g) {
  if (std::abs(g) > 0.15)
    throw std::domain_error("assemble: |g| > 0.15 is outside the series validity bound");
  const cd gc = std::conj(g);
  return state.rho0 + g * state.rho1_a + gc * state.rho1_b + g * g * state.rho2_aa +
         std::norm(g) * state.rho2_ab + gc * gc * state.rho2_bb;
}

}  // namespace cbs
