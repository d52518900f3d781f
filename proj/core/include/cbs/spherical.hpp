#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cbs/util.hpp"

namespace cbs {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

// Complex 3-vector in the spherical basis {e_{-1}, e_0, e_{+1}} with
//   e_{+1} = -(x + i y)/sqrt(2),  e_0 = z,  e_{-1} = +(x - i y)/sqrt(2).
// Conjugation rule: e_q^* = (-1)^q e_{-q}.
struct SphericalVector {
  cd c_m1{0.0, 0.0};  // coefficient of e_{-1}
  cd c_0{0.0, 0.0};   // coefficient of e_0
  cd c_p1{0.0, 0.0};  // coefficient of e_{+1}

  CVec3 to_cartesian() const;
  static SphericalVector from_cartesian(const CVec3& v);

  // Bilinear (no conjugation) dot product; basis independent.
  cd dot(const SphericalVector& other) const;
  // Componentwise complex conjugate of the physical vector (c_q -> conj
  // coefficients in the conjugated basis, i.e. conj applied in Cartesian).
  SphericalVector conjugated() const;
};

// Basis unit vectors as Cartesian columns.
CVec3 spherical_unit(int q);  // q in {-1, 0, +1}

// Transverse projector Delta = 1 - n n^T for a real unit vector n.
Eigen::Matrix3d transverse_projector(const Vec3& n_hat);

// Far-field photon-exchange coupling g = 3i e^{i k0 r12} / (2 k0 r12).
// Requires k0_r12 >= 10 (near-field terms are dropped by the model).
cd coupling_g(double k0_r12);

// Fibonacci-lattice sphere nodes: z_i = 1 - (2i+1)/n midpoints (an exactly
// symmetric set) with golden-angle azimuths. Near-optimal uniform coverage.
std::vector<Vec3> fibonacci_sphere(int n);

// Gauss-Legendre nodes/weights on [-1, 1] via Golub-Welsch, any n >= 1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace cbs
