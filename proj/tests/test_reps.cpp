#include "qdeform/reps.hpp"

#include <doctest.h>

#include <cmath>

using namespace qdeform;

namespace {
const auto q06 = DeformationParam::from_q(0.6);
}

TEST_CASE("class 1 ground state is annihilated by both A") {
  const auto rep = pw_build(q06, PWClass::C1);
  const Index g = *rep.index_of({0, 0});
  DenseVector<cplx> e = DenseVector<cplx>::Zero(rep.dimension());
  e(g) = 1.0;
  CHECK((rep.quartet.ann[0].matrix() * e).norm() < 1e-13);
  CHECK((rep.quartet.ann[1].matrix() * e).norm() < 1e-13);
  // eta of the ground state is (1/(q^2-1), 1/(q^2-1))
  const double base = 1.0 / (0.36 - 1.0);
  CHECK(std::abs(rep.eta[static_cast<size_t>(g)][0] - base) < 1e-15);
  CHECK(std::abs(rep.eta[static_cast<size_t>(g)][1] - base) < 1e-15);
}

TEST_CASE("class 1 label set and number eigenvalues") {
  const auto rep = pw_build(q06, PWClass::C1);
  CHECK(rep.dimension() == 66);  // 0 <= m2 <= m1 <= 10
  CHECK(eigenvalue_identity_residual(rep) < 1e-12);
}

TEST_CASE("every class satisfies the relations on its interior") {
  for (auto cls : {PWClass::C1, PWClass::C2, PWClass::C3, PWClass::C4, PWClass::C5}) {
    const auto rep = pw_build(q06, cls);
    const auto P = rep.interior();
    CHECK_MESSAGE(P.rank() > 0, to_string(cls));
    CHECK_MESSAGE(check_qcr_explicit(rep.quartet, P, 1e-10).passed(), to_string(cls));
    CHECK_MESSAGE(check_qcr_rmatrix(rep.quartet, r_matrix_sl2(q06), QcrNormalization::Sl2, P).passed(), to_string(cls));
    CHECK_MESSAGE(eigenvalue_identity_residual(rep) < 1e-12, to_string(cls));
  }
}

TEST_CASE("singularity scans") {
  const auto s1 = singularity_scan(pw_build(q06, PWClass::C1));
  CHECK(s1.all_positive());
  CHECK(s1.summary() == ArgumentSign::Positive);

  const auto s2 = singularity_scan(pw_build(q06, PWClass::C2));
  CHECK(s2.summary() == ArgumentSign::Negative);
  // the total argument is (q^2-1) q^{2 n1} E < 0
  for (const auto& e : s2.entries) CHECK(e.arg_total < 0.0);

  const auto s3 = singularity_scan(pw_build(q06, PWClass::C3));
  CHECK(s3.summary() == ArgumentSign::Zero);
  CHECK(s3.negative == 0);

  CHECK(singularity_scan(pw_build(q06, PWClass::C4)).summary() == ArgumentSign::Negative);
  const auto s5 = singularity_scan(pw_build(q06, PWClass::C5));
  CHECK(s5.summary() == ArgumentSign::Negative);
  CHECK(s5.zero > 0);
}

TEST_CASE("inverse map intertwines class 1 with the Fock representation") {
  const auto rep = pw_build(q06, PWClass::C1);
  const auto r = intertwine_class1(rep);
  CHECK(r.report.passed());
  REQUIRE(r.recovered);
  // recovered N_up has eigenvalue m1 - m2 on |m1, m2>
  const Operator n_up = r.recovered->cre[0] * r.recovered->ann[0];
  const auto P = rep.interior();
  for (Index k = 0; k < rep.dimension(); ++k) {
    if (!P.contains(k)) continue;
    const auto& l = rep.labels[static_cast<size_t>(k)];
    CHECK(std::abs(n_up(k, k) - double(l[0] - l[1])) < 1e-9);
  }
}

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(pw_build(DeformationParam::from_q(1.4), PWClass::C1), std::invalid_argument);
  CHECK_THROWS_AS(pw_build(q06, PWClass::C1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(pw_build(q06, PWClass::C2, -1.0), std::invalid_argument);
  CHECK(pw_class_from_string("C4") == PWClass::C4);
  CHECK_THROWS(pw_class_from_string("C6"));
}

TEST_CASE("root of unity block decomposition, p = 3") {
  const auto s9 = make_space(2, Statistics::Bose, 9);
  const auto d9 = root_unity_blocks(s9, 3, root_unity_quartet(s9, 3));
  CHECK(d9.blocks.size() == 3);
  for (const auto& b : d9.blocks) CHECK(b.dimension == 9);
  CHECK(d9.annihilation_residual < 1e-12);
  CHECK(d9.closure_residual < 1e-12);
  CHECK(d9.disjoint);

  const auto s15 = make_space(2, Statistics::Bose, 15);
  const auto d15 = root_unity_blocks(s15, 3, root_unity_quartet(s15, 3));
  CHECK(d15.blocks.size() == 10);
  for (const auto& b : d15.blocks) CHECK(b.dimension == 9);
}

TEST_CASE("A+ cubed annihilates the corner states at p = 3") {
  const auto s = make_space(2, Statistics::Bose, 9);
  const auto m = root_unity_quartet(s, 3);
  for (const Occupation& occ : {Occupation{3, 0}, Occupation{0, 3}}) {
    DenseVector<cplx> e = DenseVector<cplx>::Zero(s.dimension());
    e(*s.index_of(occ)) = 1.0;
    CHECK((m.ann[0].matrix() * e).norm() + (m.ann[1].matrix() * e).norm() < 1e-12);
  }
  // (A+_up)^3 |0,0> vanishes since (3)_{q^2} = 0
  const Operator c = m.cre[0] * m.cre[0] * m.cre[0];
  CHECK(max_abs(c) < 1e-12);
}

TEST_CASE("root of unity decomposition needs room for one block") {
  const auto s = make_space(2, Statistics::Bose, 5);
  CHECK_THROWS(root_unity_blocks(s, 3, root_unity_quartet(s, 3)));
}
