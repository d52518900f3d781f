#include "cbs/spherical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cbs {

namespace {
const cd kI{0.0, 1.0};
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

CVec3 spherical_unit(int q) {
  switch (q) {
    case +1:
      return CVec3(-1.0 / kSqrt2, -kI / kSqrt2, 0.0);
    case 0:
      return CVec3(0.0, 0.0, 1.0);
    case -1:
      return CVec3(1.0 / kSqrt2, -kI / kSqrt2, 0.0);
    default:
      throw std::invalid_argument("spherical_unit: q must be -1, 0, or +1");
  }
}

CVec3 SphericalVector::to_cartesian() const {
  return c_m1 * spherical_unit(-1) + c_0 * spherical_unit(0) + c_p1 * spherical_unit(+1);
}

SphericalVector SphericalVector::from_cartesian(const CVec3& v) {
  // Components follow from e_q^* . e_{q'} = delta_{qq'} (sesquilinear dot):
  // c_q = e_q^* . v. Eigen's dot() conjugates its left argument.
  SphericalVector s;
  s.c_m1 = spherical_unit(-1).dot(v);
  s.c_0 = spherical_unit(0).dot(v);
  s.c_p1 = spherical_unit(+1).dot(v);
  return s;
}

cd SphericalVector::dot(const SphericalVector& other) const {
  const CVec3 a = to_cartesian();
  const CVec3 b = other.to_cartesian();
  return (a.array() * b.array()).sum();  // bilinear, no conjugation
}

SphericalVector SphericalVector::conjugated() const {
  return from_cartesian(to_cartesian().conjugate());
}

Eigen::Matrix3d transverse_projector(const Vec3& n_hat) {
  return Eigen::Matrix3d::Identity() - n_hat * n_hat.transpose();
}

cd coupling_g(double k0_r12) {
  if (k0_r12 < 10.0) {
    throw std::domain_error("coupling_g: k0*r12 < 10 violates the far-field assumption");
  }
  return kI * 3.0 * std::exp(kI * k0_r12) / (2.0 * k0_r12);
}

std::vector<Vec3> fibonacci_sphere(int n) {
  if (n < 1) throw std::invalid_argument("fibonacci_sphere: n must be positive");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return pts;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  // Golub-Welsch: eigen-decompose the Jacobi tridiagonal for Legendre weights.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(n);
  weights.resize(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    weights[k] = 2.0 * v0 * v0;
  }
}

}  // namespace cbs
