#include "qdeform/twist.hpp"

#include <doctest.h>

#include <random>

using namespace qdeform;

TEST_CASE("F times its inverse is the identity") {
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    for (double qv : {0.6, 1.4}) {
      const auto s = make_space(2, st, 10);
      const auto t = f_matrix_sl2(s, DeformationParam::from_q(qv));
      const auto P = full_space(s.tag());
      CHECK(block_product_residual(t.f, t.f_inv, P) < 1e-12);
      CHECK(block_product_residual(t.f_inv, t.f, P) < 1e-12);
      CHECK(counit_residual(t) < 1e-14);
    }
  }
}

TEST_CASE("F is trivial at q = 1") {
  const auto s = make_space(2, Statistics::Bose, 6);
  const auto t = f_matrix_sl2(s, DeformationParam::classical());
  const auto id = Operator::identity(s.tag());
  CHECK(max_abs(t.f[0][0] - id) < 1e-15);
  CHECK(max_abs(t.f[1][1] - id) < 1e-15);
  CHECK(max_abs(t.f[0][1]) < 1e-15);
  CHECK(max_abs(t.f[1][0]) < 1e-15);
  CHECK(std::abs(twist_a(2.0, 1.0, DeformationParam::classical()) - 1.0) < 1e-15);
}

TEST_CASE("twist functions ignore the zero offset where it is not used") {
  const auto q = DeformationParam::from_q(1.4);
  CHECK(std::abs(twist_b(1.5, 0.5, q, 0.2) - twist_b(1.5, 0.5, q)) < 1e-15);
}

TEST_CASE("sl(2) R-matrix: Yang-Baxter and Hecke") {
  for (const auto& q : {DeformationParam::from_q(0.5), DeformationParam::from_q(1.4), DeformationParam::root_of_unity(3)}) {
    const Eigen::MatrixXcd r = r_matrix_sl2(q);
    CHECK(yang_baxter_check(r) < 1e-13);
    CHECK(hecke_check(r, q.q()) < 1e-13);
  }
  CHECK(r_matrix_sl2(DeformationParam::classical()) == Eigen::Matrix4cd::Identity());
}

TEST_CASE("perturbed R-matrix fails") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd r = r_matrix_sl2(DeformationParam::from_q(1.4));
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) r(i, j) += 1e-3 * cplx(u(rng), u(rng));
  CHECK(yang_baxter_check(r) > 1e-6);
  CHECK(hecke_check(r, 1.4) > 1e-6);
}

TEST_CASE("yang_baxter_check rejects non-square dimensions") {
  CHECK_THROWS(yang_baxter_check(Eigen::MatrixXcd::Identity(3, 3)));
}

TEST_CASE("abelian twist data") {
  const auto s = make_space(2, Statistics::Bose, 8);
  const auto t = default_abelian_twist(s, 0.3);
  const Eigen::MatrixXcd r = t.r_matrix();
  // R = F^-2, diagonal with entries exp(-2h w_l.omega.w_k)
  Eigen::MatrixXcd ref = Eigen::MatrixXcd::Identity(4, 4);
  ref(1, 1) = std::exp(-0.6);
  ref(2, 2) = std::exp(0.6);
  CHECK((r - ref).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(yang_baxter_check(r) < 1e-14);
  const auto id = Operator::identity(s.tag());
  CHECK(max_abs(t.gamma_sigma() - id) == 0.0);
  CHECK(max_abs(t.gamma_prime_sigma() - id) == 0.0);
  // mixed(+1) mixed(-1) = 1
  CHECK(max_abs(t.mixed(1, 0) * t.mixed(-1, 0) - id) < 1e-15);
}

TEST_CASE("abelian twist validation") {
  const auto s = make_space(2, Statistics::Bose, 4);
  Eigen::MatrixXd omega(2, 2);
  omega << 0.0, 1.0, 1.0, 0.0;
  CHECK_THROWS_AS(AbelianTwist(s, Eigen::MatrixXd::Identity(2, 2), omega, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(AbelianTwist(s, Eigen::MatrixXd::Identity(3, 2), omega, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(AbelianTwist(make_space(1, Statistics::Bose, 4), Eigen::MatrixXd::Identity(1, 1),
                               Eigen::MatrixXd::Zero(1, 1), 0.3),
                  std::invalid_argument);
}

TEST_CASE("F is unitary for real positive q") {
  for (double qv : {0.7, 1.4}) {
    const auto s = make_space(2, Statistics::Bose, 12);
    const auto t = f_matrix_sl2(s, DeformationParam::from_q(qv));
    CHECK(unitarity_residual(t, interior(s, 2)) < 1e-11);
  }
}

TEST_CASE("abelian twist: omega antisymmetric, F21 = F^-1") {
  const auto s = make_space(2, Statistics::Bose, 6);
  const auto t = default_abelian_twist(s, 0.3);
  CHECK((t.omega() + t.omega().transpose()).cwiseAbs().maxCoeff() == 0.0);
  // on the fundamental weights F is diagonal, exp(h w_l.omega.w_k); the flip inverts it
  const Eigen::MatrixXcd r = t.r_matrix();
  Eigen::MatrixXcd flip = Eigen::MatrixXcd::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) flip(2 * a + b, 2 * b + a) = 1.0;
  CHECK((flip * r * flip - r.inverse()).cwiseAbs().maxCoeff() < 1e-15);
}
