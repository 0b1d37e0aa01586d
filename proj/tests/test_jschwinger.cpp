#include "qdeform/jschwinger.hpp"

#include <doctest.h>

#include <cmath>

using namespace qdeform;

namespace {

// [x]_q = (q^x - q^-x)/(q - q^-1)
cplx qsym(double x, cplx q) {
  if (q == 1.0) return x;
  return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q);
}

// U_q(sl2) on the bosonic 2-mode space from the spin-j matrix elements,
// j = n/2 and m = (n_up - n_dn)/2: J+ |n_up, n_dn> = sqrt([n_dn][n_up + 1]) |n_up + 1, n_dn - 1>.
Operator jplus_oracle(const FockSpace& s, cplx q) {
  DenseMatrix<cplx> m = DenseMatrix<cplx>::Zero(s.dimension(), s.dimension());
  for (Index k = 0; k < s.dimension(); ++k) {
    const auto occ = s.state(k);
    if (occ[1] == 0) continue;
    const auto to = s.index_of({occ[0] + 1, occ[1] - 1});
    m(*to, k) = std::sqrt(qsym(occ[1], q) * qsym(occ[0] + 1, q));
  }
  return Operator(s.tag(), m);
}

Eigen::MatrixXcd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::MatrixXcd out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd rho2(const Coproduct& d, const DeformationParam& q) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4, 4);
  for (const auto& t : d) out += t.coeff * kron(fundamental(t.left, q), fundamental(t.right, q));
  return out;
}

}  // namespace

TEST_CASE("Jordan-Schwinger map satisfies the sl(2) relations") {
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    const auto s = make_space(2, st, 8);
    const auto t = sigma_sl2(s);
    const auto P = st == Statistics::Bose ? interior(s, 2) : full_space(s.tag());
    CHECK(P.residual(commutator(t.j0, t.j_plus) - t.j_plus) < 1e-13);
    CHECK(P.residual(commutator(t.j0, t.j_minus) + t.j_minus) < 1e-13);
    CHECK(P.residual(commutator(t.j_plus, t.j_minus) - 2.0 * t.j0) < 1e-13);
    // j(j+1) reproduces the Casimir
    const auto id = Operator::identity(s.tag());
    CHECK(max_abs(t.j_casimir * (t.j_casimir + id) - t.casimir) < 1e-12);
  }
}

TEST_CASE("fermionic pair state is a singlet") {
  const auto s = make_space(2, Statistics::Fermi, 2);
  const auto t = sigma_sl2(s);
  const Index pair = *s.index_of({1, 1});
  CHECK(std::abs(t.j(pair, pair) - 1.0) < 1e-15);
  CHECK(std::abs(t.j_casimir(pair, pair)) < 1e-15);
}

TEST_CASE("phi_h generators match the spin-j matrix elements") {
  for (double qv : {0.7, 1.4}) {
    const auto s = make_space(2, Statistics::Bose, 10);
    const auto q = DeformationParam::from_q(qv);
    const auto t = phi_h_generators(s, q);
    const auto ref = jplus_oracle(s, qv);
    CHECK(max_abs(t.J_plus - ref) < 1e-12);
    CHECK(max_abs(t.J_minus - adjoint(ref)) < 1e-12);
    CHECK(max_abs(t.J0 - sigma_sl2(s).j0) == 0.0);
  }
}

TEST_CASE("phi_h relations hold for real and complex q, and do not see the zero offset") {
  for (cplx qv : {cplx(0.5), cplx(1.4), cplx(0.95, 0.1)}) {
    const auto s = make_space(2, Statistics::Bose, 10);
    const auto q = DeformationParam::from_q(qv);
    const auto t = phi_h_generators(s, q);
    const auto P = interior(s, 2);
    CHECK(P.residual(commutator(t.J0, t.J_plus) - t.J_plus) < 1e-12);
    CHECK(P.residual(commutator(t.J_plus, t.J_minus) - q_commutator_rhs(t)) < 1e-10);
    const auto shifted = phi_h_generators(s, q, 0.37);
    CHECK(max_abs(shifted.J_plus - t.J_plus) < 1e-14);
    CHECK(max_abs(shifted.J_minus - t.J_minus) < 1e-14);
  }
}

TEST_CASE("parse_word") {
  const auto w = parse_word("J+ J0 q^-1 J-");
  REQUIRE(w.size() == 4);
  CHECK(w[0].kind == GenKind::JPlus);
  CHECK(w[1].kind == GenKind::J0);
  CHECK(w[2].kind == GenKind::QPow);
  CHECK(w[2].exponent == -1.0);
  CHECK(w[3].kind == GenKind::JMinus);
  CHECK(to_string(w) == "J+ J0 q^-1 J-");
  CHECK_THROWS_AS(parse_word("J+ K"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("q^x"), std::invalid_argument);
}

TEST_CASE("fundamental representation satisfies U_q(sl2)") {
  const auto q = DeformationParam::from_q(1.3);
  const Eigen::Matrix2cd e = fundamental(parse_word("J+"), q);
  const Eigen::Matrix2cd f = fundamental(parse_word("J-"), q);
  const Eigen::Matrix2cd k = fundamental(parse_word("q^2"), q);
  const Eigen::Matrix2cd kinv = fundamental(parse_word("q^-2"), q);
  CHECK((e * f - f * e - (k - kinv) / (1.3 - 1 / 1.3)).norm() < 1e-14);
  CHECK((k * e * kinv - 1.69 * e).norm() < 1e-14);
}

TEST_CASE("coproduct is a homomorphism in the fundamental representation") {
  for (cplx qv : {cplx(0.6), cplx(1.7), std::polar(1.0, 0.4)}) {
    const auto q = DeformationParam::from_q(qv);
    const HopfData hopf{q};
    const Factor jp{GenKind::JPlus}, jm{GenKind::JMinus}, j0{GenKind::J0};
    const auto dp = rho2(hopf.coproduct(jp), q);
    const auto dm = rho2(hopf.coproduct(jm), q);
    const auto d0 = rho2(hopf.coproduct(j0), q);
    const auto k2 = rho2(hopf.coproduct(Factor{GenKind::QPow, 2.0}), q);
    const auto k2i = rho2(hopf.coproduct(Factor{GenKind::QPow, -2.0}), q);
    CHECK((dp * dm - dm * dp - (k2 - k2i) / (qv - 1.0 / qv)).norm() < 1e-13);
    CHECK((d0 * dp - dp * d0 - dp).norm() < 1e-13);
    // word coproduct is the product of generator coproducts
    CHECK((rho2(hopf.coproduct(Word{jp, jm}), q) - dp * dm).norm() < 1e-13);
  }
}

TEST_CASE("antipode and counit axioms in the fundamental representation") {
  const auto q = DeformationParam::from_q(1.4);
  const HopfData hopf{q};
  for (const auto& x : {Factor{GenKind::J0}, Factor{GenKind::JPlus}, Factor{GenKind::JMinus}, Factor{GenKind::QPow, 1.0}}) {
    Eigen::Matrix2cd left = Eigen::Matrix2cd::Zero(), right = Eigen::Matrix2cd::Zero();
    for (const auto& t : hopf.coproduct(x)) {
      left += t.coeff * fundamental(hopf.antipode(t.left), q) * fundamental(t.right, q);
      right += t.coeff * fundamental(t.left, q) * fundamental(hopf.antipode(t.right), q);
    }
    const Eigen::Matrix2cd target = hopf.counit(x) * Eigen::Matrix2cd::Identity();
    CHECK((left - target).norm() < 1e-14);
    CHECK((right - target).norm() < 1e-14);
  }
}

TEST_CASE("antipode axiom on the Fock space") {
  const auto s = make_space(2, Statistics::Bose, 10);
  const auto q = DeformationParam::from_q(0.8);
  const auto t = phi_h_generators(s, q);
  const HopfData hopf{q};
  const auto P = interior(s, 2);
  for (const auto& x : {Factor{GenKind::J0}, Factor{GenKind::JPlus}, Factor{GenKind::JMinus}}) {
    CHECK(antipode_axiom_residual(x, t, hopf, P) < 1e-10);
  }
}

TEST_CASE("classical action is the commutator") {
  const auto s = make_space(2, Statistics::Bose, 6);
  const auto t = sigma_sl2(s);
  const auto c0 = creator(s, 0);
  CHECK(max_abs(classical_action("J+", c0, t) - commutator(t.j_plus, c0)) < 1e-13);
  CHECK(max_abs(classical_action("J0", c0, t) - commutator(t.j0, c0)) < 1e-13);
  CHECK(max_abs(classical_action("J+ J-", c0, t) - commutator(t.j_plus, commutator(t.j_minus, c0))) < 1e-12);
}

TEST_CASE("quantum action on the unit is the counit") {
  const auto s = make_space(2, Statistics::Bose, 6);
  const auto q = DeformationParam::from_q(1.2);
  const auto t = phi_h_generators(s, q);
  const HopfData hopf{q};
  const auto id = Operator::identity(s.tag());
  CHECK(max_abs(quantum_action(Factor{GenKind::JPlus}, id, t, hopf)) < 1e-13);
  CHECK(max_abs(quantum_action(Factor{GenKind::QPow, 1.0}, id, t, hopf) - id) < 1e-13);
}

TEST_CASE("Casimir is (n/2)(n/2 + 1)") {
  const auto s = make_space(2, Statistics::Bose, 10);
  const auto t = sigma_sl2(s);
  DenseMatrix<cplx> ref = DenseMatrix<cplx>::Zero(s.dimension(), s.dimension());
  for (Index k = 0; k < s.dimension(); ++k) {
    const double h = s.total(k) / 2.0;
    ref(k, k) = h * (h + 1.0);
  }
  // built from products of square roots, so equal up to rounding
  CHECK(max_abs(t.casimir - Operator(s.tag(), ref)) < 1e-13);
}

TEST_CASE("quantum action approaches the classical one as q tends to 1") {
  const auto s = make_space(2, Statistics::Bose, 8);
  const auto q = DeformationParam::from_q(1.0 + 1e-6);
  const auto t = phi_h_generators(s, q);
  const HopfData hopf{q};
  const auto c = sigma_sl2(s);
  const auto P = interior(s, 2);
  for (const char* g : {"J+", "J-", "J0"}) {
    for (int i = 0; i < 2; ++i) {
      const auto target = creator(s, i);
      CHECK(P.residual(quantum_action(parse_word(g), target, t, hopf) - classical_action(g, target, c)) < 1e-4);
    }
  }
}

TEST_CASE("antipode on the generators") {
  const auto q = DeformationParam::from_q(1.4);
  const HopfData hopf{q};
  const auto s0 = hopf.antipode(Factor{GenKind::J0});
  REQUIRE(s0.size() == 1);
  CHECK(s0[0].coeff == cplx(-1.0));
  const auto sp = hopf.antipode(Factor{GenKind::JPlus});
  CHECK(std::abs(sp[0].coeff + 1.0 / 1.4) < 1e-15);
  const auto sm = hopf.antipode(Factor{GenKind::JMinus});
  CHECK(std::abs(sm[0].coeff + 1.4) < 1e-15);
  // classical limit
  const HopfData one{DeformationParam::classical()};
  CHECK(one.antipode(Factor{GenKind::JPlus})[0].coeff == cplx(-1.0));
  CHECK(hopf.counit(Factor{GenKind::J0}) == cplx(0.0));
  CHECK(hopf.counit(Factor{GenKind::JPlus}) == cplx(0.0));
}
