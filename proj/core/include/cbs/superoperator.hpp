#pragma once

#include <Eigen/Dense>

#include "cbs/operators.hpp"

namespace cbs {

using Vec256 = Eigen::Matrix<cd, 256, 1>;
using MatX = Eigen::MatrixXcd;

// Row-major vectorization: vec(rho)(16*r + c) = rho(r, c), matching the
// operator-basis enumeration (label (i,j,k,l) sits at 16*product_index(i,k) +
// product_index(j,l)).
Vec256 vec_rho(const Mat16& rho);
Mat16 unvec_rho(const Vec256& v);

// vec(X rho Y) = (X (x) Y^T) vec(rho) for row-major vec.
MatX kron16(const Mat16& x, const Mat16& y);

// 256x256 generator acting on the vectorized two-atom density matrix.
struct Superoperator {
  MatX matrix;

  Superoperator() : matrix(MatX::Zero(256, 256)) {}
  explicit Superoperator(MatX m) : matrix(std::move(m)) {}

  Mat16 apply(const Mat16& rho) const;

  // Sup-norm of the trace row tau^dag * matrix (tau = vec(identity)); zero for
  // any trace-preserving generator.
  double trace_row_residual() const;

  const TwoAtomOperatorBasis& basis() const { return TwoAtomOperatorBasis::instance(); }
};

// Two-atom Hamiltonian of the uncoupled (photon-exchange-free) system:
//   H = sum_alpha [ -Delta P_e^alpha + (Omega_alpha (D_alpha^dag . e_L) + h.c.)/2 ],
// with Omega_alpha = Omega e^{i k_L . r_alpha}. For e_L = e_{+1} the drive
// term is -(Omega_alpha sigma^alpha_41 + h.c.)/2, pinned by the optical-Bloch
// steady state <sigma_44> = s/(2(1+s)).
Mat16 build_hamiltonian(const DriveParams& params, double phase1, double phase2);

// Uncoupled generator Lrho = -i[H,rho] + sum_{alpha,i} 2 gamma (d rho d^dag -
// {d^dag d, rho}/2), with d running over the Cartesian dipole components.
// Positions enter only through the Rabi phases k_L . r_alpha.
Superoperator build_single_atom_liouvillian(const DriveParams& params,
                                            const Configuration& config);

// Same generator with both Rabi phases set to zero (the "tilde" frame used by
// the sweep engine; configuration independent).
Superoperator build_uncoupled_liouvillian(const DriveParams& params);

// Photon-exchange blocks: the dipole-dipole generator is g*A + conj(g)*B with
//   A-(a,b) rho = gamma * sum_ij Delta_ij [ (D_b)_j rho (Dday_a)_i - rho (Dday_a)_i (D_b)_j ]
//   B-(a,b) rho = gamma * sum_ij Delta_ij [ (D_a)_j rho (Dday_b)_i - (Dday_b)_i (D_a)_j rho ]
// summed over (a,b) in {(1,2),(2,1)}; Delta = 1 - n n is the transverse
// projector of the pair axis. Both blocks are traceless and map Hermitian rho
// to a conjugate pair: (A rho)^dag = B rho^dag.
struct CouplingBlocks {
  // Contracted lowering components DC_a[i] = sum_j Delta_ij (D_a)_j and raw
  // raising components, plus the two quadratic forms G_ab = sum_ij Delta_ij
  // (Dday_a)_i (D_b)_j.
  std::array<Mat16, 3> DC1, DC2, Dd1, Dd2;
  Mat16 G12, G21;
  double gamma;

  CouplingBlocks(const Configuration& config, double gamma = 1.0);
  // The blocks depend on geometry only through the transverse projector.
  explicit CouplingBlocks(const Eigen::Matrix3d& transverse_proj, double gamma = 1.0);

  Mat16 apply_A12(const Mat16& rho) const;
  Mat16 apply_A21(const Mat16& rho) const;
  Mat16 apply_B12(const Mat16& rho) const;
  Mat16 apply_B21(const Mat16& rho) const;

  // Full blocks, optionally with per-pair phase factors (lab frame: both 1;
  // tilde frame: lam = e^{i k_L.(r2-r1)} on the (1,2) part of A and its
  // conjugate on (2,1), reversed for B).
  Mat16 apply_A(const Mat16& rho, cd lam12 = 1.0, cd lam21 = 1.0) const;
  Mat16 apply_B(const Mat16& rho, cd lam12 = 1.0, cd lam21 = 1.0) const;

  Superoperator matrix_A(cd lam12 = 1.0, cd lam21 = 1.0) const;
  Superoperator matrix_B(cd lam12 = 1.0, cd lam21 = 1.0) const;
};

// Convenience construction of both blocks as matrices (lab frame phases).
std::pair<Superoperator, Superoperator> build_coupling_blocks(const Configuration& config,
                                                              double gamma = 1.0);

// L0 + g A + conj(g) B.
Superoperator assemble_full_liouvillian(const Superoperator& L0, const Superoperator& A,
                                        const Superoperator& B, cd g);

}  // namespace cbs
