#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "cbs/model.hpp"

namespace cbs {

using Mat4 = Eigen::Matrix4cd;
using Mat16 = Eigen::Matrix<cd, 16, 16>;
using Vec16 = Eigen::Matrix<cd, 16, 1>;

// Two-atom product-state index: |i>_1 |k>_2 -> 4*(i-1) + (k-1), i,k in 1..4.
inline int product_index(int i, int k) { return 4 * (i - 1) + (k - 1); }

// Single-atom matrix unit |a><b| (a,b in 1..4).
Mat4 sigma4(int a, int b);

// |a><b| of the given atom embedded in the two-atom space (identity on the
// other atom).
Mat16 sigma_op(int atom, int a, int b);

// Projector onto the excited manifold of one atom.
Mat16 excited_projector(int atom);

// Lowering dipole operator (vector of matrices)
//   D = -e_{-1} sigma_12 + e_0 sigma_13 - e_{+1} sigma_14,
// stored through its Cartesian components (three 16x16 matrices), embedded in
// the two-atom space. raising(i) = lowering(i).adjoint().
struct DipoleOperator {
  int atom;
  std::array<Mat16, 3> cart;  // D_x, D_y, D_z

  explicit DipoleOperator(int atom_);

  const Mat16& lowering(int i) const { return cart[static_cast<std::size_t>(i)]; }
  Mat16 raising(int i) const { return cart[static_cast<std::size_t>(i)].adjoint(); }

  // D^dag . D = sum_i D_i^dag D_i (equals the excited projector).
  Mat16 dday_dot_d() const;
  // Contraction (D^dag . v) for a complex Cartesian vector v (bilinear in v).
  Mat16 dday_dot(const CVec3& v) const;
};

// Operator basis labels (i,j,k,l) <-> sigma1_ij (x) sigma2_kl = |i k><j l|,
// enumerated in vectorization order: vec index = row*16 + col with
// row = product_index(i,k), col = product_index(j,l) (row-major stacking).
struct TwoAtomOperatorBasis {
  struct Label {
    int i, j, k, l;
  };
  std::vector<Label> labels;  // 256 entries, labels[vec_index]

  TwoAtomOperatorBasis();
  static int index_of(int i, int j, int k, int l) {
    return 16 * product_index(i, k) + product_index(j, l);
  }
  static const TwoAtomOperatorBasis& instance();
};

// Detected-transition observables (photons from the 2 -> 1 line).
Mat16 observable_sigma22_sum();          // sigma1_22 + sigma2_22
Mat16 observable_pair_coherence();       // sigma1_21 * sigma2_12
Mat16 observable_sigma21(int atom);      // sigma_21 of one atom

}  // namespace cbs
