#include "cbs/superoperator.hpp"

namespace cbs {

namespace {
const cd kI{0.0, 1.0};
}

Vec256 vec_rho(const Mat16& rho) {
  Vec256 v;
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) v(16 * r + c) = rho(r, c);
  return v;
}

Mat16 unvec_rho(const Vec256& v) {
  Mat16 rho;
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) rho(r, c) = v(16 * r + c);
  return rho;
}

MatX kron16(const Mat16& x, const Mat16& y) {
  MatX out(256, 256);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) out.block(16 * i, 16 * j, 16, 16) = x(i, j) * y;
  return out;
}

Mat16 Superoperator::apply(const Mat16& rho) const {
  return unvec_rho(Vec256(matrix * vec_rho(rho)));
}

double Superoperator::trace_row_residual() const {
  Eigen::Matrix<cd, 1, 256> tau = Eigen::Matrix<cd, 1, 256>::Zero();
  for (int d = 0; d < 16; ++d) tau(16 * d + d) = 1.0;
  return (tau * matrix).cwiseAbs().maxCoeff();
}

Mat16 build_hamiltonian(const DriveParams& params, double phase1, double phase2) {
  params.validate();
  const CVec3 pol = params.pol.to_cartesian();
  Mat16 h = Mat16::Zero();
  const double phases[2] = {phase1, phase2};
  for (int atom = 1; atom <= 2; ++atom) {
    const DipoleOperator dip(atom);
    const cd omega_a = params.omega * std::exp(kI * phases[atom - 1]);
    const Mat16 v = dip.dday_dot(pol);  // D^dag . e_L
    h += -params.delta * excited_projector(atom) +
         0.5 * (omega_a * v + std::conj(omega_a) * v.adjoint());
  }
  return h;
}

namespace {
Superoperator build_uncoupled_impl(const DriveParams& params, double phase1, double phase2) {
  const Mat16 h = build_hamiltonian(params, phase1, phase2);
  const Mat16 id = Mat16::Identity();
  MatX m = -kI * (kron16(h, id) - kron16(id, h.transpose()));
  for (int atom = 1; atom <= 2; ++atom) {
    const DipoleOperator dip(atom);
    for (int i = 0; i < 3; ++i) {
      const Mat16 d = dip.lowering(i);
      const Mat16 dd = dip.raising(i) * d;
      m += 2.0 * params.gamma * kron16(d, d.conjugate());
      m -= params.gamma * (kron16(dd, id) + kron16(id, dd.transpose()));
    }
  }
  return Superoperator(std::move(m));
}
}  // namespace

Superoperator build_single_atom_liouvillian(const DriveParams& params,
                                            const Configuration& config) {
  return build_uncoupled_impl(params, config.phase1(params), config.phase2(params));
}

Superoperator build_uncoupled_liouvillian(const DriveParams& params) {
  return build_uncoupled_impl(params, 0.0, 0.0);
}

CouplingBlocks::CouplingBlocks(const Configuration& config, double gamma_)
    : CouplingBlocks(config.projector(), gamma_) {}

CouplingBlocks::CouplingBlocks(const Eigen::Matrix3d& proj, double gamma_) : gamma(gamma_) {
  const DipoleOperator d1(1), d2(2);
  for (int i = 0; i < 3; ++i) {
    DC1[static_cast<std::size_t>(i)].setZero();
    DC2[static_cast<std::size_t>(i)].setZero();
    for (int j = 0; j < 3; ++j) {
      DC1[static_cast<std::size_t>(i)] += proj(i, j) * d1.lowering(j);
      DC2[static_cast<std::size_t>(i)] += proj(i, j) * d2.lowering(j);
    }
    Dd1[static_cast<std::size_t>(i)] = d1.raising(i);
    Dd2[static_cast<std::size_t>(i)] = d2.raising(i);
  }
  G12.setZero();
  G21.setZero();
  for (int i = 0; i < 3; ++i) {
    G12 += Dd1[static_cast<std::size_t>(i)] * DC2[static_cast<std::size_t>(i)];
    G21 += Dd2[static_cast<std::size_t>(i)] * DC1[static_cast<std::size_t>(i)];
  }
}

Mat16 CouplingBlocks::apply_A12(const Mat16& rho) const {
  Mat16 out = -rho * G12;
  for (int i = 0; i < 3; ++i)
    out += DC2[static_cast<std::size_t>(i)] * rho * Dd1[static_cast<std::size_t>(i)];
  return gamma * out;
}

Mat16 CouplingBlocks::apply_A21(const Mat16& rho) const {
  Mat16 out = -rho * G21;
  for (int i = 0; i < 3; ++i)
    out += DC1[static_cast<std::size_t>(i)] * rho * Dd2[static_cast<std::size_t>(i)];
  return gamma * out;
}

Mat16 CouplingBlocks::apply_B12(const Mat16& rho) const {
  Mat16 out = -G21 * rho;
  for (int i = 0; i < 3; ++i)
    out += DC1[static_cast<std::size_t>(i)] * rho * Dd2[static_cast<std::size_t>(i)];
  return gamma * out;
}

Mat16 CouplingBlocks::apply_B21(const Mat16& rho) const {
  Mat16 out = -G12 * rho;
  for (int i = 0; i < 3; ++i)
    out += DC2[static_cast<std::size_t>(i)] * rho * Dd1[static_cast<std::size_t>(i)];
  return gamma * out;
}

Mat16 CouplingBlocks::apply_A(const Mat16& rho, cd lam12, cd lam21) const {
  return lam12 * apply_A12(rho) + lam21 * apply_A21(rho);
}

Mat16 CouplingBlocks::apply_B(const Mat16& rho, cd lam12, cd lam21) const {
  return lam12 * apply_B12(rho) + lam21 * apply_B21(rho);
}

Superoperator CouplingBlocks::matrix_A(cd lam12, cd lam21) const {
  const Mat16 id = Mat16::Identity();
  MatX m = MatX::Zero(256, 256);
  for (int i = 0; i < 3; ++i) {
    m += lam12 * kron16(DC2[static_cast<std::size_t>(i)],
                        Dd1[static_cast<std::size_t>(i)].transpose());
    m += lam21 * kron16(DC1[static_cast<std::size_t>(i)],
                        Dd2[static_cast<std::size_t>(i)].transpose());
  }
  m -= lam12 * kron16(id, G12.transpose());
  m -= lam21 * kron16(id, G21.transpose());
  return Superoperator(MatX(gamma * m));
}

Superoperator CouplingBlocks::matrix_B(cd lam12, cd lam21) const {
  const Mat16 id = Mat16::Identity();
  MatX m = MatX::Zero(256, 256);
  for (int i = 0; i < 3; ++i) {
    m += lam12 * kron16(DC1[static_cast<std::size_t>(i)],
                        Dd2[static_cast<std::size_t>(i)].transpose());
    m += lam21 * kron16(DC2[static_cast<std::size_t>(i)],
                        Dd1[static_cast<std::size_t>(i)].transpose());
  }
  m -= lam12 * kron16(G21, id);
  m -= lam21 * kron16(G12, id);
  return Superoperator(MatX(gamma * m));
}

std::pair<Superoperator, Superoperator> build_coupling_blocks(const Configuration& config,
                                                              double gamma) {
  const CouplingBlocks blocks(config, gamma);
  return {blocks.matrix_A(), blocks.matrix_B()};
}

Superoperator assemble_full_liouvillian(const Superoperator& L0, const Superoperator& A,
                                        const Superoperator& B, cd g) {
  return Superoperator(MatX(L0.matrix + g * A.matrix + std::conj(g) * B.matrix));
}

}  // namespace cbs
