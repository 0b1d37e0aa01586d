#include "qdeform/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace qdeform;

TEST_CASE("status from residual and tolerance") {
  CHECK(make_check("a", 1e-12, 1e-10).status == CheckStatus::Pass);
  CHECK(make_check("a", 1e-9, 1e-10).status == CheckStatus::Fail);
  CHECK(make_check("a", 1e-9, 1e-10, {}, Expect::Above).status == CheckStatus::Pass);
  CHECK(make_check("a", 1e-12, 1e-10, {}, Expect::Above).status == CheckStatus::Fail);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(make_check("a", nan, 1e-10).status == CheckStatus::Fail);
  CHECK(make_check("a", nan, 1e-10, {}, Expect::Above).status == CheckStatus::Fail);
}

TEST_CASE("skip and expected-singular are not failures") {
  CHECK(make_skip("s", "why").passed());
  CHECK(make_expected_singular("s", -0.5, "why").passed());
  CHECK(make_expected_singular("s", -0.5, "why").status == CheckStatus::ExpectedSingular);
}

TEST_CASE("suite status") {
  SuiteReport r{"x"};
  r.add(make_skip("a", "n/a"));
  CHECK(r.status() == CheckStatus::Skip);
  r.add(make_check("b", 0.0, 1.0));
  CHECK(r.status() == CheckStatus::Pass);
  r.add(make_check("c", 2.0, 1.0));
  CHECK(r.status() == CheckStatus::Fail);
  CHECK_FALSE(r.passed());
}

TEST_CASE("tolerance overrides use the longest matching prefix") {
  SuiteReport r{"x"};
  r.add(make_check("qcr.ann-cre.0.0", 1e-11, 1e-10));
  r.add(make_check("qcr.ann-ann.0.1", 1e-11, 1e-10));
  r.add(make_check("star.gap", 1e-11, 1e-10));
  r.add(make_skip("qcr.skipped", "n/a"));
  r.apply_tolerances({{"qcr", 1e-12}, {"qcr.ann-cre", 1e-10}});
  CHECK(r.checks[0].tolerance == 1e-10);
  CHECK(r.checks[0].status == CheckStatus::Pass);
  CHECK(r.checks[1].tolerance == 1e-12);
  CHECK(r.checks[1].status == CheckStatus::Fail);
  CHECK(r.checks[2].tolerance == 1e-10);
  CHECK(r.checks[3].status == CheckStatus::Skip);
}

TEST_CASE("checks sort by id and keep ties in order") {
  SuiteReport r{"x"};
  r.add(make_check("b", 0.0, 1.0));
  r.add(make_check("a", 0.5, 1.0));
  r.add(make_check("a", 0.25, 1.0));
  r.sort_checks();
  CHECK(r.checks[0].residual == 0.5);
  CHECK(r.checks[1].residual == 0.25);
  CHECK(r.checks[2].id == "b");
}

TEST_CASE("string round trips") {
  for (auto s : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Skip, CheckStatus::ExpectedSingular})
    CHECK(check_status_from_string(to_string(s)) == s);
  for (auto e : {Expect::Below, Expect::Above}) CHECK(expect_from_string(to_string(e)) == e);
  CHECK_THROWS(check_status_from_string("maybe"));
}

TEST_CASE("classical quartet passes the CCR and fails the q-deformed relations") {
  const auto s = make_space(2, Statistics::Bose, 10);
  const auto P = interior(s, 2);
  const auto c = classical_quartet(s);
  CHECK(check_ccr(c, P, 1e-13).passed());
  const auto q = DeformationParam::from_q(0.7);
  auto fake = c;
  fake.q = q;
  CHECK_FALSE(check_qcr_explicit(fake, P, 1e-10).passed());
  const auto m = map_sl2_weyl(s, q);
  CHECK(check_qcr_explicit(m, P, 1e-10).passed());
  CHECK(check_qcr_rmatrix(m, r_matrix_sl2(q), QcrNormalization::Sl2, P).passed());
  CHECK(check_vacuum(m).passed());
}

TEST_CASE("covariance and star for the sl2 map") {
  const auto s = make_space(2, Statistics::Bose, 10);
  const auto q = DeformationParam::from_q(1.4);
  const auto m = map_sl2_weyl(s, q);
  const auto t = phi_h_generators(s, q);
  const HopfData hopf{q};
  const auto P = interior(s, 2);
  CHECK(covariance_residuals(m, t, hopf, P).size() == 12);
  CHECK(check_covariance(m, t, hopf, P).passed());
  CHECK(check_star(m).passed());
  // complex q: the star check is skipped
  const auto qc = DeformationParam::from_q(cplx(1.0, 0.2));
  const auto mc = map_sl2_weyl(s, qc);
  CHECK(check_star(mc).status() == CheckStatus::Skip);
}

TEST_CASE("invariants reduce to the q-numbers") {
  const auto s = make_space(2, Statistics::Bose, 12);
  const auto q = DeformationParam::from_q(1.4);
  const auto m = map_sl2_weyl(s, q);
  InvariantOptions opt;
  opt.target = InvariantTarget::QDeformed;
  opt.tol_order1 = 1e-10;
  CHECK(check_invariants(m, s, opt).passed());
  opt.target = InvariantTarget::Classical;
  CHECK_FALSE(check_invariants(m, s, opt).passed());
}
