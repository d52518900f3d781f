#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <vector>

#include "cbs/operators.hpp"
#include "cbs/spherical.hpp"
#include "cbs/steady_state.hpp"
#include "test_helpers.hpp"

using namespace cbs;
using cbs::testing::random_density;
using cbs::testing::random_matrix;

namespace {
const cd I(0.0, 1.0);
constexpr double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("spherical basis vectors and conjugation rule") {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const CVec3 ep = spherical_unit(+1);
  const CVec3 em = spherical_unit(-1);
  const CVec3 e0 = spherical_unit(0);

  CHECK((ep - CVec3(-inv_sqrt2, -I * inv_sqrt2, 0.0)).norm() == doctest::Approx(0.0));
  CHECK((em - CVec3(inv_sqrt2, -I * inv_sqrt2, 0.0)).norm() == doctest::Approx(0.0));
  CHECK((e0 - CVec3(0.0, 0.0, 1.0)).norm() == doctest::Approx(0.0));

  // Orthonormality under the Hermitian inner product.
  for (int q : {-1, 0, 1})
    for (int p : {-1, 0, 1}) {
      const cd ip = spherical_unit(q).dot(spherical_unit(p));  // Eigen dot conjugates lhs
      CHECK(std::abs(ip - (q == p ? 1.0 : 0.0)) < 1e-15);
    }

  // e_q^* = (-1)^q e_{-q}.
  for (int q : {-1, 0, 1}) {
    const double sign = (q == 0) ? 1.0 : -1.0;
    CHECK((spherical_unit(q).conjugate() - sign * spherical_unit(-q)).norm() < 1e-15);
  }
}

TEST_CASE("spherical vector round trip and bilinear dot") {
  SphericalVector v;
  v.c_m1 = cd(0.3, -0.2);
  v.c_0 = cd(-1.1, 0.4);
  v.c_p1 = cd(0.7, 0.9);
  const SphericalVector back = SphericalVector::from_cartesian(v.to_cartesian());
  CHECK(std::abs(back.c_m1 - v.c_m1) < 1e-14);
  CHECK(std::abs(back.c_0 - v.c_0) < 1e-14);
  CHECK(std::abs(back.c_p1 - v.c_p1) < 1e-14);

  // Bilinear dot agrees with the Cartesian component sum (no conjugation).
  const SphericalVector w = SphericalVector::from_cartesian(CVec3(cd(1, 2), cd(-3, 0.5), cd(0, 1)));
  const cd direct = (v.to_cartesian().array() * w.to_cartesian().array()).sum();
  CHECK(std::abs(v.dot(w) - direct) < 1e-13);
}

TEST_CASE("transverse projector properties") {
  // Pair axis along z kills only the z component.
  const Eigen::Matrix3d pz = transverse_projector(Vec3(0, 0, 1));
  Eigen::Matrix3d expect = Eigen::Matrix3d::Identity();
  expect(2, 2) = 0.0;
  CHECK((pz - expect).norm() < 1e-15);

  for (int k = 0; k < 20; ++k) {
    const Vec3 n = cbs::testing::random_unit_vector();
    const Eigen::Matrix3d p = transverse_projector(n);
    CHECK((p - p.transpose()).norm() < 1e-14);   // symmetric
    CHECK((p * p - p).norm() < 1e-14);           // idempotent
    CHECK((p * n).norm() < 1e-14);               // annihilates the axis
    CHECK(p.trace() == doctest::Approx(2.0));    // rank 2
  }
}

TEST_CASE("photon exchange coupling magnitude, phase, and domain") {
  for (double r : {10.0, 31.4, 1000.0}) {
    const cd g = coupling_g(r);
    CHECK(std::abs(g) * r == doctest::Approx(1.5).epsilon(1e-14));  // |g| k0 r12 = 3/2
    const cd expected = 1.5 * I * std::exp(I * r) / r;
    CHECK(std::abs(g - expected) < 1e-15);
  }
  CHECK(std::abs(coupling_g(10.0)) <= 0.15 + 1e-15);
  CHECK_THROWS_AS((void)coupling_g(9.99), std::domain_error);
  CHECK_THROWS_AS(Configuration(5.0, Vec3(0, 0, 1)), std::invalid_argument);
}

TEST_CASE("fibonacci sphere symmetry and gauss-legendre exactness") {
  const auto nodes = fibonacci_sphere(128);
  REQUIRE(nodes.size() == 128);
  Vec3 mean = Vec3::Zero();
  for (const auto& n : nodes) {
    CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-12));
    mean += n;
  }
  // Midpoint z-lattice makes the node set exactly z-antisymmetric.
  CHECK(std::abs(mean.z()) / 128.0 < 1e-12);

  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  double integral = 0.0, mass = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    integral += w[j] * std::pow(x[j], 14);  // degree 14 < 2n = 16: exact
    mass += w[j];
  }
  CHECK(mass == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integral == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("two-atom operator embedding") {
  // sigma1_ab acts on the first factor, identity on the second.
  const Mat16 s14 = sigma_op(1, 1, 4);
  for (int i = 1; i <= 4; ++i)
    for (int k = 1; k <= 4; ++k)
      for (int j = 1; j <= 4; ++j)
        for (int l = 1; l <= 4; ++l) {
          const cd v = s14(product_index(i, k), product_index(j, l));
          const cd expect = (i == 1 && j == 4 && k == l) ? 1.0 : 0.0;
          CHECK(std::abs(v - expect) < 1e-15);
        }

  // Same-atom products compose, cross-atom operators commute.
  CHECK((sigma_op(1, 1, 2) * sigma_op(1, 2, 3) - sigma_op(1, 1, 3)).norm() < 1e-15);
  const Mat16 a = sigma_op(1, 2, 1), b = sigma_op(2, 1, 3);
  CHECK((a * b - b * a).norm() < 1e-15);
  CHECK((excited_projector(1) - (sigma_op(1, 2, 2) + sigma_op(1, 3, 3) + sigma_op(1, 4, 4)))
            .norm() < 1e-15);
}

TEST_CASE("dipole operator selection rules") {
  const DipoleOperator d(1);

  // D^dag . D equals the excited projector.
  CHECK((d.dday_dot_d() - excited_projector(1)).norm() < 1e-13);

  // The e_{+1} component of the raising operator connects only 1 -> 4 with
  // amplitude -1: D^dag . e_{+1} = -sigma_41.
  CHECK((d.dday_dot(spherical_unit(+1)) - (-1.0) * sigma_op(1, 4, 1)).norm() < 1e-13);
  // e_0 component raises 1 -> 3 with +1, e_{-1} raises 1 -> 2 with -1.
  CHECK((d.dday_dot(spherical_unit(0)) - sigma_op(1, 3, 1)).norm() < 1e-13);
  CHECK((d.dday_dot(spherical_unit(-1)) - (-1.0) * sigma_op(1, 2, 1)).norm() < 1e-13);
}

TEST_CASE("uncoupled generator preserves trace and hermiticity") {
  const DriveParams drive = DriveParams::from_saturation(0.8, 0.5);
  const Configuration config(25.0, Vec3(0.48, 0.6, 0.64).normalized());
  const Superoperator L0 = build_single_atom_liouvillian(drive, config);

  CHECK(L0.trace_row_residual() < 1e-12);
  for (int k = 0; k < 100; ++k) {
    const Mat16 rho = random_matrix();
    const Mat16 lr = L0.apply(rho);
    CHECK(std::abs(lr.trace()) < 1e-12 * rho.norm());
    CHECK((L0.apply(rho.adjoint()) - lr.adjoint()).norm() < 1e-11 * rho.norm());
  }
}

TEST_CASE("zero eigenvalue of the uncoupled generator is simple") {
  const DriveParams drive = DriveParams::from_saturation(1.0, 0.0);
  const Configuration config(30.0, Vec3(0, 0, 1));
  const Superoperator L0 = build_single_atom_liouvillian(drive, config);

  Eigen::ComplexEigenSolver<MatX> es(L0.matrix, /*computeEigenvectors=*/false);
  std::vector<double> mags(256);
  for (int k = 0; k < 256; ++k) mags[static_cast<size_t>(k)] = std::abs(es.eigenvalues()(k));
  std::sort(mags.begin(), mags.end());
  CHECK(mags[0] < 1e-12);        // one stationary direction
  CHECK(mags[1] > 1e-3);         // spectral gap: no second kernel vector
}

TEST_CASE("coupling blocks: traceless, conjugation pairing, projector dependence only") {
  const Configuration config(18.0, Vec3(0.6, -0.64, 0.48).normalized());
  const CouplingBlocks blocks(config);

  for (int k = 0; k < 100; ++k) {
    const Mat16 rho = random_matrix();
    CHECK(std::abs(blocks.apply_A(rho).trace()) < 1e-12 * rho.norm());
    CHECK(std::abs(blocks.apply_B(rho).trace()) < 1e-12 * rho.norm());
    // (A rho)^dag = B rho^dag pairs the blocks under Hermitian conjugation.
    CHECK((blocks.apply_A(rho).adjoint() - blocks.apply_B(rho.adjoint())).norm() <
          1e-11 * rho.norm());
  }

  // Blocks built from the projector alone match the configuration ctor.
  const CouplingBlocks via_proj(config.projector());
  const Mat16 probe = random_matrix();
  CHECK((blocks.apply_A(probe) - via_proj.apply_A(probe)).norm() < 1e-13 * probe.norm());

  // g A + g* B preserves hermiticity for any complex g.
  const cd g = config.coupling();
  const Mat16 h = cbs::testing::random_hermitian();
  const Mat16 lh = g * blocks.apply_A(h) + std::conj(g) * blocks.apply_B(h);
  CHECK((lh - lh.adjoint()).norm() < 1e-12 * h.norm());
}

TEST_CASE("full generator preserves trace and hermiticity at finite coupling") {
  const DriveParams drive = DriveParams::from_saturation(2.0, 1.0);
  const Configuration config(12.0, Vec3(0.8, 0, 0.6));
  const Superoperator L0 = build_single_atom_liouvillian(drive, config);
  const auto [A, B] = build_coupling_blocks(config);
  const Superoperator L = assemble_full_liouvillian(L0, A, B, config.coupling());

  CHECK(L.trace_row_residual() < 1e-12);
  for (int k = 0; k < 100; ++k) {
    const Mat16 rho = random_matrix();
    CHECK(std::abs(L.apply(rho).trace()) < 1e-11 * rho.norm());
    CHECK((L.apply(rho.adjoint()) - L.apply(rho).adjoint()).norm() < 1e-10 * rho.norm());
  }
}

TEST_CASE("global laser phase is a gauge transformation") {
  // Translating both atoms along k_L shifts both Rabi phases by the same
  // amount; populations and coherence magnitudes of the steady state must not
  // change.
  const DriveParams drive = DriveParams::from_saturation(1.0, 0.0);
  const Vec3 n = Vec3(1, 0, 0);
  const Configuration base(20.0, n);
  const Configuration shifted(20.0, n, Vec3(0, 0, 0.77));  // common z offset

  const auto steady = [&](const Configuration& c) {
    const Superoperator L0 = build_single_atom_liouvillian(drive, c);
    const auto [A, B] = build_coupling_blocks(c);
    return BorderedSteadySolver(assemble_full_liouvillian(L0, A, B, c.coupling())).steady_state();
  };
  const Mat16 r1 = steady(base);
  const Mat16 r2 = steady(shifted);

  for (int idx = 0; idx < 16; ++idx)
    CHECK(std::abs(r1(idx, idx) - r2(idx, idx)) < 1e-12);
  CHECK((r1.cwiseAbs() - r2.cwiseAbs()).norm() < 1e-11);
}

TEST_CASE("drive parameter bookkeeping") {
  const DriveParams p = DriveParams::from_saturation(0.5, 1.0);
  CHECK(p.s() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.delta_sq() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.delta == doctest::Approx(1.0));
  // s = Omega^2 / (2 (Delta^2 + gamma^2)).
  CHECK(p.omega * p.omega == doctest::Approx(2.0 * 0.5 * (1.0 + 1.0)).epsilon(1e-14));

  CHECK_THROWS_AS(DriveParams::from_saturation(-0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DriveParams(-1.0, 0.0), std::invalid_argument);
}
