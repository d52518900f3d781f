#include "cbs/operators.hpp"

#include <stdexcept>

namespace cbs {

Mat4 sigma4(int a, int b) {
  if (a < 1 || a > 4 || b < 1 || b > 4)
    throw std::invalid_argument("sigma4: indices must be in 1..4");
  Mat4 m = Mat4::Zero();
  m(a - 1, b - 1) = 1.0;
  return m;
}

namespace {
Mat16 kron4(const Mat4& a, const Mat4& b) {
  Mat16 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}
}  // namespace

Mat16 sigma_op(int atom, int a, int b) {
  if (atom == 1) return kron4(sigma4(a, b), Mat4::Identity());
  if (atom == 2) return kron4(Mat4::Identity(), sigma4(a, b));
  throw std::invalid_argument("sigma_op: atom must be 1 or 2");
}

Mat16 excited_projector(int atom) {
  return sigma_op(atom, 2, 2) + sigma_op(atom, 3, 3) + sigma_op(atom, 4, 4);
}

DipoleOperator::DipoleOperator(int atom_) : atom(atom_) {
  // Spherical components of the lowering operator: coefficient vectors
  // -e_{-1}, +e_0, -e_{+1} on sigma_12, sigma_13, sigma_14.
  const Mat16 s12 = sigma_op(atom, 1, 2);
  const Mat16 s13 = sigma_op(atom, 1, 3);
  const Mat16 s14 = sigma_op(atom, 1, 4);
  const CVec3 em1 = spherical_unit(-1);
  const CVec3 e0 = spherical_unit(0);
  const CVec3 ep1 = spherical_unit(+1);
  for (int i = 0; i < 3; ++i) {
    cart[static_cast<std::size_t>(i)] = -em1(i) * s12 + e0(i) * s13 - ep1(i) * s14;
  }
}

Mat16 DipoleOperator::dday_dot_d() const {
  Mat16 acc = Mat16::Zero();
  for (int i = 0; i < 3; ++i) acc += raising(i) * lowering(i);
  return acc;
}

Mat16 DipoleOperator::dday_dot(const CVec3& v) const {
  Mat16 acc = Mat16::Zero();
  for (int i = 0; i < 3; ++i) acc += raising(i) * v(i);
  return acc;
}

TwoAtomOperatorBasis::TwoAtomOperatorBasis() {
  labels.resize(256);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k)
        for (int l = 1; l <= 4; ++l) labels[static_cast<std::size_t>(index_of(i, j, k, l))] = {i, j, k, l};
}

const TwoAtomOperatorBasis& TwoAtomOperatorBasis::instance() {
  static const TwoAtomOperatorBasis basis;
  return basis;
}

Mat16 observable_sigma22_sum() { return sigma_op(1, 2, 2) + sigma_op(2, 2, 2); }

Mat16 observable_pair_coherence() { return sigma_op(1, 2, 1) * sigma_op(2, 1, 2); }

Mat16 observable_sigma21(int atom) { return sigma_op(atom, 2, 1); }

}  // namespace cbs
