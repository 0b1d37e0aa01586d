#pragma once

#include "qdeform/fock.hpp"
#include "qdeform/qfunc.hpp"
#include "qdeform/twist.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdeform {

enum class Provenance {
  Classical,
  OneDim,
  ClosedFormWeyl,
  ClosedFormClifford,
  TwistBuilt,
  Chaichian,
  AlphaConjugated,
  AbelianTwist,
  RootOfUnity,
  InverseMap,
  PuszWoronowicz,
};

enum class Sign { Weyl = 1, Clifford = -1 };

std::string to_string(Provenance p);
std::string to_string(Sign s);
inline int sign_value(Sign s) { return static_cast<int>(s); }
Sign sign_of(Statistics s);

// Deformed annihilators ann[i] = A^i and creators cre[i] = A+_i, paired with the
// undeformed operators they were built from (empty when there are none).
// Mode 0 is spin up, mode 1 spin down.
struct DeformedQuartet {
  SpaceTag space;
  DeformationParam q;
  std::vector<Operator> ann, cre;
  std::vector<Operator> classical_ann, classical_cre;
  Provenance provenance = Provenance::Classical;
  Sign sign = Sign::Weyl;
  std::vector<std::string> basis_labels;
  std::vector<std::string> notes;

  int mode_count() const { return static_cast<int>(ann.size()); }
  const Operator& A_up() const { return ann.at(0); }
  const Operator& A_dn() const { return ann.at(1); }
  const Operator& Ap_up() const { return cre.at(0); }
  const Operator& Ap_dn() const { return cre.at(1); }
};

std::vector<std::string> basis_labels(const FockSpace& space);

DeformedQuartet classical_quartet(const FockSpace& space);

// A = a sqrt((n)_{q^2}/n), A+ = sqrt((n)_{q^2}/n) a+ on a single bosonic mode.
DeformedQuartet map_1d(const FockSpace& space, const DeformationParam& q, cplx zero_offset = 0.0);

// A+_up = sqrt((n_up)_{q^2}/n_up) q^{n_dn} a+_up   A+_dn = sqrt((n_dn)_{q^2}/n_dn) a+_dn
// A^up  = a^up sqrt((n_up)_{q^2}/n_up) q^{n_dn}   A^dn  = a^dn sqrt((n_dn)_{q^2}/n_dn)
// applied to any pair of annihilators/creators whose products a+_i a^i are diagonal.
DeformedQuartet weyl_closed_form(const std::vector<Operator>& ann, const std::vector<Operator>& cre,
                                 const DeformationParam& q, cplx zero_offset = 0.0);

DeformedQuartet map_sl2_weyl(const FockSpace& space, const DeformationParam& q, cplx zero_offset = 0.0);

// A+_up = q^{-n_dn} a+_up, A+_dn = a+_dn, A^up = a^up q^{-n_dn}, A^dn = a^dn.
DeformedQuartet map_sl2_clifford(const FockSpace& space, const DeformationParam& q);

// A+_i = a+_l F^-1[l][i] f(n),  A^i = f(n) F[i][l] a^l,  f(x) = sqrt((x+1)_{q^{+-2}}/(x+1)),
// with the sl(2) matrix twist. The sign must match the statistics of the space.
DeformedQuartet map_universal_sl2(const FockSpace& space, const DeformationParam& q, Sign sign,
                                  cplx zero_offset = 0.0);

// The four expressions for the abelian-twist maps: two for the creators, two
// for the annihilators.
struct AbelianForms {
  std::vector<Operator> cre_right, cre_left;  // a+_l sigma(F^-1(2)) rho(F^-1(1)),  rho(S F(1) g'^-1) sigma(F(2)) a+_l
  std::vector<Operator> ann_left, ann_right;  // rho(F(1)) sigma(F(2)) a^l,  a^l sigma(F^-1(2)) rho(g^-1 S F^-1(1))
};

AbelianForms abelian_forms(const AbelianTwist& twist);
// Built from the first creator and the first annihilator form.
DeformedQuartet map_abelian(const AbelianTwist& twist, Sign sign);
// Max entrywise disagreement among the forms.
double abelian_form_disagreement(const AbelianForms& forms);

// alpha = sqrt(Gamma(n_up+1) Gamma(n_dn+1) / (Gamma_{q^2}(n_up+1) Gamma_{q^2}(n_dn+1)))
struct AlphaElement {
  Operator alpha;
  Operator alpha_inv;
};

AlphaElement alpha_element(const FockSpace& space, const DeformationParam& q);
AlphaElement diagonal_alpha(const SpaceTag& space, const DenseVector<cplx>& entries);

// A -> alpha A alpha^-1 for every deformed operator.
DeformedQuartet conjugate(const DeformedQuartet& quartet, const AlphaElement& alpha);

// A+_up = q^{n_dn} a+_up, A+_dn = a+_dn, A^up = a^up ((n_up)_{q^2}/n_up) q^{n_dn}, A^dn = a^dn (n_dn)_{q^2}/n_dn
DeformedQuartet map_chaichian(const FockSpace& space, const DeformationParam& q, cplx zero_offset = 0.0);

// Weyl closed form at q = e^{i pi/p}.
DeformedQuartet root_unity_quartet(const FockSpace& space, int p);

// Named differences LHS - RHS of the explicit 2-mode relations (Weyl: 6,
// Clifford: 10), in a fixed order.
std::vector<std::pair<std::string, Operator>> explicit_relations(const DeformedQuartet& quartet);

enum class InverseVariant {
  Corrected,  // A+_up factor log[(1+(q^2-1)N)/(1+(q^2-1)N_dn)] / (2 N_up ln q)
  AsPrinted,  // the same with an extra factor 1+(q^2-1)N_dn
};

struct SingularityEntry {
  Index index = 0;
  std::string label;
  double arg_dn = 0.0;     // 1 + (q^2-1) N_dn
  double arg_total = 0.0;  // 1 + (q^2-1) N
};

struct InverseMapResult {
  std::optional<DeformedQuartet> recovered;
  // interior basis vectors where a log argument is nonpositive
  std::vector<SingularityEntry> singular;
  Index scanned = 0;
  double qcr_residual = 0.0;
};

// Inverse of the Weyl closed form, applied to any quartet satisfying the Weyl
// relations on `interior` whose number operators are diagonal. A nonempty
// singularity list means no quartet is constructed.
InverseMapResult inverse_map_sl2(const DeformedQuartet& quartet, const InteriorProjector& interior,
                                 InverseVariant variant = InverseVariant::Corrected, cplx zero_offset = 0.0);

}  // namespace qdeform
