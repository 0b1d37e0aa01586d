#pragma once

#include "qdeform/fock.hpp"
#include "qdeform/qfunc.hpp"

#include <string>
#include <vector>

namespace qdeform {

// Jordan-Schwinger image of sl(2) on a 2-mode space; mode 0 is spin up.
struct Sl2Triple {
  Operator j0, j_plus, j_minus;
  // n/2
  Operator j;
  // Positive root of j(j+1) = sigma(C). Equals n/2 on bosonic spaces; on the
  // fermionic space the paired state (1,1) is a singlet and gets j = 0.
  Operator j_casimir;
  Operator casimir;
};

Sl2Triple sigma_sl2(const FockSpace& space);

// sigma(phi_h(J0)), sigma(phi_h(J+)), sigma(phi_h(J-)).
struct QuantumSl2Triple {
  Operator J0, J_plus, J_minus;
  DeformationParam q;
};

// zero_offset perturbs the x = 0 value of the ratio functions; the result does
// not depend on it.
QuantumSl2Triple phi_h_generators(const FockSpace& space, const DeformationParam& q, cplx zero_offset = 0.0);

// The triple itself regarded as a realization of the undeformed algebra (q = 1).
QuantumSl2Triple as_realization(const Sl2Triple& t);

// (q^{2 J0} - q^{-2 J0})/(q - q^{-1})
Operator q_commutator_rhs(const QuantumSl2Triple& t);

// Generators of the words the actions are evaluated on. QPow is q^{c J0}.
enum class GenKind { Unit, J0, JPlus, JMinus, QPow };

struct Factor {
  GenKind kind = GenKind::Unit;
  double exponent = 0.0;  // only for QPow

  bool operator==(const Factor&) const = default;
};

using Word = std::vector<Factor>;

struct Term {
  cplx coeff = 1.0;
  Word word;
};
using Element = std::vector<Term>;

struct CoproductTerm {
  cplx coeff = 1.0;
  Word left, right;
};
using Coproduct = std::vector<CoproductTerm>;

std::string to_string(const Factor& f);
std::string to_string(const Word& w);

// Parses a whitespace separated word such as "J+ J0 q^-1". Tokens: 1, J0, J+,
// J-, q^c (for q^{c J0}). Throws std::invalid_argument on anything else.
Word parse_word(const std::string& text);

// Coproduct, antipode and counit of U_h sl(2) on generators, extended to words
// multiplicatively (coproduct, counit) and antimultiplicatively (antipode).
//   D(J0) = 1 x J0 + J0 x 1,  D(J+-) = J+- x q^{-J0} + q^{J0} x J+-,  D(q^{cJ0}) = q^{cJ0} x q^{cJ0}
//   S(J0) = -J0,  S(J+-) = -q^{-+1} J+-,  S(q^{cJ0}) = q^{-cJ0}
//   e(J0) = e(J+-) = 0,  e(q^{cJ0}) = 1
// At q = 1 this is the primitive Hopf structure of U sl(2).
struct HopfData {
  DeformationParam q;

  Coproduct coproduct(const Factor& x) const;
  Coproduct coproduct(const Word& x) const;
  Element antipode(const Factor& x) const;
  Element antipode(const Word& x) const;
  cplx counit(const Factor& x) const;
  cplx counit(const Word& x) const;
};

HopfData antipode_data(const DeformationParam& q);

Operator evaluate(const Factor& x, const QuantumSl2Triple& t);
Operator evaluate(const Word& x, const QuantumSl2Triple& t);
Operator evaluate(const Element& x, const QuantumSl2Triple& t);

// x |> a = sum sigma phi(x_(1)) a sigma phi(S x_(2))
Operator quantum_action(const Word& x, const Operator& target, const QuantumSl2Triple& t, const HopfData& hopf);
Operator quantum_action(const Factor& x, const Operator& target, const QuantumSl2Triple& t, const HopfData& hopf);

// The undeformed action: for primitive X it is the commutator [sigma(X), a].
Operator classical_action(const Word& x, const Operator& target, const Sl2Triple& t);
Operator classical_action(const std::string& x, const Operator& target, const Sl2Triple& t);

// m(S x id)D(x) - e(x) and m(id x S)D(x) - e(x), max of the two projected residuals.
double antipode_axiom_residual(const Factor& x, const QuantumSl2Triple& t, const HopfData& hopf,
                               const InteriorProjector& p);

// Spin-1/2 matrices rho(J0) = diag(1/2,-1/2), rho(J+) = E12, rho(J-) = E21,
// rho(q^{cJ0}) = diag(q^{c/2}, q^{-c/2}); extended to words and elements.
Eigen::Matrix2cd fundamental(const Factor& x, const DeformationParam& q);
Eigen::Matrix2cd fundamental(const Word& x, const DeformationParam& q);
Eigen::Matrix2cd fundamental(const Element& x, const DeformationParam& q);

}  // namespace qdeform
