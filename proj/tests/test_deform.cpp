#include "qdeform/deform.hpp"
#include "qdeform/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace qdeform;

namespace {

// (n)_{q^2} = 1 + q^2 + ... + q^{2(n-1)}
cplx geo(int n, cplx q) {
  cplx s = 0.0, t = 1.0;
  for (int k = 0; k < n; ++k, t *= q * q) s += t;
  return s;
}

// elementwise 2-mode creators for the Weyl closed form
std::vector<Operator> weyl_creators_oracle(const FockSpace& s, cplx q) {
  std::vector<Operator> out;
  for (int i = 0; i < 2; ++i) {
    DenseMatrix<cplx> m = DenseMatrix<cplx>::Zero(s.dimension(), s.dimension());
    for (Index k = 0; k < s.dimension(); ++k) {
      auto occ = s.state(k);
      const int n_up = occ[0], n_dn = occ[1];
      occ[i] += 1;
      const auto to = s.index_of(occ);
      if (!to) continue;
      const int n = i == 0 ? n_up : n_dn;
      m(*to, k) = std::sqrt(geo(n + 1, q)) * (i == 0 ? std::pow(q, n_dn) : cplx(1.0));
    }
    out.emplace_back(s.tag(), m);
  }
  return out;
}

}  // namespace

TEST_CASE("one-mode map matches sqrt((n+1)_{q^2})") {
  for (cplx qv : {cplx(0.5), cplx(1.3), std::exp(cplx(0.0, 0.1))}) {
    const auto s = make_space(1, Statistics::Bose, 15);
    const auto m = map_1d(s, DeformationParam::from_q(qv));
    for (Index k = 0; k + 1 < s.dimension(); ++k) {
      CHECK(std::abs(m.cre[0](k + 1, k) - std::sqrt(geo(static_cast<int>(k) + 1, qv))) < 1e-12);
    }
    CHECK(check_qcr_1d(m, interior(s, 1)).passed());
  }
}

TEST_CASE("Weyl closed form matches the elementwise oracle") {
  for (cplx qv : {cplx(0.7), cplx(1.4), cplx(1.1, 0.2)}) {
    const auto s = make_space(2, Statistics::Bose, 10);
    const auto m = map_sl2_weyl(s, DeformationParam::from_q(qv));
    const auto ref = weyl_creators_oracle(s, qv);
    CHECK(max_abs(m.cre[0] - ref[0]) < 1e-12);
    CHECK(max_abs(m.cre[1] - ref[1]) < 1e-12);
    if (qv.imag() == 0.0) CHECK(max_abs(m.ann[0] - adjoint(ref[0])) < 1e-12);
  }
}

TEST_CASE("Clifford closed form") {
  const double qv = 0.7;
  const auto s = make_space(2, Statistics::Fermi, 2);
  const auto m = map_sl2_clifford(s, DeformationParam::from_q(qv));
  const auto a_up = creator(s, 0);
  const Index from = *s.index_of({0, 1}), to = *s.index_of({1, 1});
  CHECK(std::abs(m.cre[0](to, from) - a_up(to, from) / qv) < 1e-15);
  CHECK(max_abs(m.cre[1] - creator(s, 1)) == 0.0);
  CHECK(check_qcr_explicit(m, full_space(s.tag()), 1e-12).passed());
}

TEST_CASE("twist-built map agrees with the closed forms") {
  for (double qv : {0.7, 1.4}) {
    const auto q = DeformationParam::from_q(qv);
    const auto sb = make_space(2, Statistics::Bose, 10);
    const auto ub = map_universal_sl2(sb, q, Sign::Weyl);
    const auto cb = map_sl2_weyl(sb, q);
    const auto P = full_space(sb.tag());
    for (int i = 0; i < 2; ++i) {
      CHECK(P.residual(ub.cre[i] - cb.cre[i]) < 1e-10);
      CHECK(P.residual(ub.ann[i] - cb.ann[i]) < 1e-10);
    }
    const auto sf = make_space(2, Statistics::Fermi, 2);
    const auto uf = map_universal_sl2(sf, q, Sign::Clifford);
    const auto cf = map_sl2_clifford(sf, q);
    for (int i = 0; i < 2; ++i) CHECK(max_abs(uf.cre[i] - cf.cre[i]) < 1e-12);
  }
  CHECK_THROWS_AS(map_universal_sl2(make_space(2, Statistics::Bose, 4), DeformationParam::from_q(0.7), Sign::Clifford),
                  std::invalid_argument);
}

TEST_CASE("deformed quartets reduce to the classical operators at q = 1") {
  const auto s = make_space(2, Statistics::Bose, 8);
  const auto m = map_sl2_weyl(s, DeformationParam::classical());
  CHECK(max_abs(m.cre[0] - creator(s, 0)) < 1e-15);
  CHECK(max_abs(m.ann[1] - annihilator(s, 1)) < 1e-15);
}

TEST_CASE("alpha conjugation takes the closed form onto the Chaichian map") {
  const auto s = make_space(2, Statistics::Bose, 10);
  const auto q = DeformationParam::from_q(1.5);
  const auto conj = conjugate(map_sl2_weyl(s, q), alpha_element(s, q));
  const auto ch = map_chaichian(s, q);
  const auto P = interior(s, 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(P.residual(conj.cre[i] - ch.cre[i]) < 1e-10);
    CHECK(P.residual(conj.ann[i] - ch.ann[i]) < 1e-10);
  }
  // Chaichian creators: q^{n_dn} a+_up
  const Index from = *s.index_of({2, 3}), to = *s.index_of({3, 3});
  CHECK(std::abs(ch.cre[0](to, from) - std::sqrt(3.0) * std::pow(1.5, 3)) < 1e-12);
  CHECK(check_qcr_explicit(ch, P, 1e-10).passed());
}

TEST_CASE("alpha entries are the q-Gamma ratios") {
  const auto s = make_space(2, Statistics::Bose, 6);
  const double qv = 1.2;
  const auto a = alpha_element(s, DeformationParam::from_q(qv));
  const Index k = *s.index_of({3, 2});
  // 3! 2! / ((1)(2)_{q^2}(3)_{q^2} (1)(2)_{q^2})
  const cplx gamma = geo(2, qv) * geo(3, qv) * geo(2, qv);
  CHECK(std::abs(a.alpha(k, k) - std::sqrt(12.0 / gamma)) < 1e-13);
  CHECK(max_abs(a.alpha * a.alpha_inv - Operator::identity(s.tag())) < 1e-13);
}

TEST_CASE("inverse map recovers the CCR") {
  for (double qv : {0.7, 1.4}) {
    const auto s = make_space(2, Statistics::Bose, 12);
    const auto m = map_sl2_weyl(s, DeformationParam::from_q(qv));
    const auto P = interior(s, 2);
    const auto r = inverse_map_sl2(m, P);
    REQUIRE(r.recovered);
    CHECK(r.singular.empty());
    CHECK(check_ccr(*r.recovered, P, 1e-9).passed());
    for (int i = 0; i < 2; ++i) CHECK(P.residual(r.recovered->cre[i] - creator(s, i)) < 1e-9);
  }
}

TEST_CASE("inverse map as printed does not recover the CCR") {
  const auto s = make_space(2, Statistics::Bose, 12);
  const auto m = map_sl2_weyl(s, DeformationParam::from_q(0.7));
  const auto P = interior(s, 2);
  const auto r = inverse_map_sl2(m, P, InverseVariant::AsPrinted);
  REQUIRE(r.recovered);
  CHECK_FALSE(check_ccr(*r.recovered, P, 1e-9).passed());
}

TEST_CASE("explicit relations hold for the closed form and fail after a perturbation") {
  const auto s = make_space(2, Statistics::Bose, 10);
  auto m = map_sl2_weyl(s, DeformationParam::from_q(0.7));
  const auto P = interior(s, 2);
  const auto rel = explicit_relations(m);
  CHECK(rel.size() == 6);
  for (const auto& [id, op] : rel) CHECK_MESSAGE(P.residual(op) < 1e-10, id);
  m.cre[0] = m.cre[0] + 1e-4 * creator(s, 1);
  CHECK_FALSE(check_qcr_explicit(m, P, 1e-10).passed());
}

TEST_CASE("zero offset only affects the vanishing ratio") {
  const auto s = make_space(2, Statistics::Bose, 8);
  const auto q = DeformationParam::from_q(1.3);
  const auto a = map_sl2_weyl(s, q);
  const auto b = map_sl2_weyl(s, q, 0.25);
  for (int i = 0; i < 2; ++i) {
    CHECK(max_abs(a.cre[i] - b.cre[i]) < 1e-14);
    CHECK(max_abs(a.ann[i] - b.ann[i]) < 1e-14);
  }
}

TEST_CASE("abelian map forms agree") {
  const auto s = make_space(2, Statistics::Bose, 8);
  const auto t = default_abelian_twist(s, 0.3);
  CHECK(abelian_form_disagreement(abelian_forms(t)) < 1e-12);
  const auto m = map_abelian(t, Sign::Weyl);
  CHECK(m.provenance == Provenance::AbelianTwist);
  CHECK(check_qcr_rmatrix(m, t.r_matrix(), QcrNormalization::Triangular, interior(s, 2), 1e-11).passed());
}

TEST_CASE("vacuum: A annihilates it and A+ acts like a+ on it, for every construction") {
  const auto q = DeformationParam::from_q(1.3);
  const auto sb = make_space(2, Statistics::Bose, 8);
  const auto sf = make_space(2, Statistics::Fermi, 2);
  const std::vector<DeformedQuartet> all{
      map_sl2_weyl(sb, q),          map_sl2_clifford(sf, q),
      map_universal_sl2(sb, q, Sign::Weyl), map_universal_sl2(sf, q, Sign::Clifford),
      map_chaichian(sb, q),         map_abelian(default_abelian_twist(sb, 0.3), Sign::Weyl),
      map_1d(make_space(1, Statistics::Bose, 8), q)};
  for (const auto& m : all) CHECK_MESSAGE(check_vacuum(m).passed(), to_string(m.provenance));
}

TEST_CASE("number ladder relations") {
  for (double qv : {0.7, 1.4}) {
    const auto s = make_space(2, Statistics::Bose, 12);
    CHECK(check_number_ladder(map_sl2_weyl(s, DeformationParam::from_q(qv)), interior(s, 2)).passed());
  }
}

TEST_CASE("alpha is the identity at q = 1") {
  const auto s = make_space(2, Statistics::Bose, 8);
  const auto a = alpha_element(s, DeformationParam::classical());
  CHECK(max_abs(a.alpha - Operator::identity(s.tag())) < 1e-15);
}

TEST_CASE("random unitary diagonal alpha preserves the relations") {
  const auto s = make_space(2, Statistics::Bose, 10);
  const auto q = DeformationParam::from_q(1.4);
  const auto P = interior(s, 2);
  DenseVector<cplx> ph(s.dimension());
  for (Index k = 0; k < s.dimension(); ++k) ph(k) = std::polar(1.0, 0.37 * double(k * k % 11));
  const auto m = conjugate(map_sl2_weyl(s, q), diagonal_alpha(s.tag(), ph));
  CHECK(check_qcr_explicit(m, P, 1e-10).passed());
  CHECK(check_star(m).passed());
}

TEST_CASE("interior residuals do not grow with the cutoff") {
  const auto q = DeformationParam::from_q(1.4);
  auto worst = [&](int cutoff) {
    const auto s = make_space(2, Statistics::Bose, cutoff);
    const auto m = map_sl2_weyl(s, q);
    // compare on the states both cutoffs share
    const auto P = interior(s, cutoff - 6);
    double w = 0.0;
    for (const auto& [id, op] : explicit_relations(m)) w = std::max(w, P.residual(op));
    return w;
  };
  CHECK(worst(12) <= worst(8) + 1e-13);
}
