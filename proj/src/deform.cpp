#include "qdeform/deform.hpp"

#include "qdeform/error.hpp"

#include <sstream>

namespace qdeform {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Classical:
      return "classical";
    case Provenance::OneDim:
      return "one-dim";
    case Provenance::ClosedFormWeyl:
      return "closed-form-weyl";
    case Provenance::ClosedFormClifford:
      return "closed-form-clifford";
    case Provenance::TwistBuilt:
      return "twist-built";
    case Provenance::Chaichian:
      return "chaichian";
    case Provenance::AlphaConjugated:
      return "alpha-conjugated";
    case Provenance::AbelianTwist:
      return "abelian-twist";
    case Provenance::RootOfUnity:
      return "root-of-unity";
    case Provenance::InverseMap:
      return "inverse-map";
    case Provenance::PuszWoronowicz:
      return "pusz-woronowicz";
  }
  return "unknown";
}

std::string to_string(Sign s) { return s == Sign::Weyl ? "weyl" : "clifford"; }

Sign sign_of(Statistics s) { return s == Statistics::Bose ? Sign::Weyl : Sign::Clifford; }

std::vector<std::string> basis_labels(const FockSpace& space) {
  std::vector<std::string> out;
  out.reserve(space.basis().size());
  for (const auto& occ : space.basis()) out.push_back(to_string(occ));
  return out;
}

namespace {

void require_modes(const FockSpace& space, int modes, const char* who) {
  if (space.mode_count() != modes) {
    throw std::invalid_argument(std::string(who) + ": expected " + std::to_string(modes) + " modes, got " +
                                std::to_string(space.mode_count()));
  }
}

void require_stats(const FockSpace& space, Statistics s, const char* who) {
  if (space.statistics() != s) {
    throw std::invalid_argument(std::string(who) + ": expected a " + to_string(s) + " space");
  }
}

DeformedQuartet skeleton(const FockSpace& space, const DeformationParam& q, Provenance p) {
  DeformedQuartet out;
  out.space = space.tag();
  out.q = q;
  out.provenance = p;
  out.sign = sign_of(space.statistics());
  out.basis_labels = basis_labels(space);
  for (int i = 0; i < space.mode_count(); ++i) {
    out.classical_ann.push_back(annihilator(space, i));
    out.classical_cre.push_back(creator(space, i));
  }
  return out;
}

// Real diagonal of an operator that must be diagonal up to rounding.
Eigen::VectorXd diagonal_values(const Operator& x, const char* who) {
  const double scale = std::max(1.0, max_abs(x));
  if (offdiagonal_mass(x) > 1e-9 * scale) {
    throw std::invalid_argument(std::string(who) + ": number operator is not diagonal in the supplied basis");
  }
  Eigen::VectorXd out(x.dim());
  for (Index k = 0; k < x.dim(); ++k) {
    const cplx v = x(k, k);
    if (std::abs(v.imag()) > 1e-9 * scale) throw std::invalid_argument(std::string(who) + ": complex number spectrum");
    out(k) = v.real();
  }
  return out;
}

Operator diag_op(const SpaceTag& space, const DenseVector<cplx>& d) { return from_diagonal(space, d); }

// sqrt((x)_{q^2}/x); negative real radicands at a root of unity are collected.
struct RatioRoot {
  DeformationParam q2;
  cplx zero_offset;
  bool take_root = true;
  std::vector<std::string> offending{};

  cplx operator()(double x) {
    if (x < 0.0 && x > -1e-9) x = 0.0;
    const cplx r = qratio_safe(x, q2, QKind::Std, zero_offset);
    if (!take_root) return r;
    if (q2.regime() == Regime::RootOfUnity && std::abs(r.imag()) < 1e-12 && r.real() < -1e-12) {
      std::ostringstream os;
      os << "n=" << x << " -> " << r.real();
      offending.push_back(os.str());
    }
    return std::sqrt(r);
  }
};

}  // namespace

DeformedQuartet classical_quartet(const FockSpace& space) {
  DeformedQuartet out = skeleton(space, DeformationParam::classical(), Provenance::Classical);
  out.ann = out.classical_ann;
  out.cre = out.classical_cre;
  return out;
}

DeformedQuartet map_1d(const FockSpace& space, const DeformationParam& q, cplx zero_offset) {
  require_modes(space, 1, "map_1d");
  require_stats(space, Statistics::Bose, "map_1d");
  DeformedQuartet out = skeleton(space, q, Provenance::OneDim);
  if (zero_offset == 0.0 && q.is_real_positive()) {
    // entries sqrt((n)_{q^2}) straight from long double, which keeps the
    // QCR residual at a few ulp of (cutoff)_{q^2}
    const long double q2 = static_cast<long double>(q.q().real()) * static_cast<long double>(q.q().real());
    DenseMatrix<cplx> m = DenseMatrix<cplx>::Zero(space.dimension(), space.dimension());
    long double qn = 0.0L;  // (n)_{q^2} by 1 + q^2 (n-1)_{q^2}
    for (Index k = 1; k < space.dimension(); ++k) {
      qn = 1.0L + q2 * qn;
      m(k - 1, k) = static_cast<double>(std::sqrt(qn));
    }
    out.ann = {Operator(space.tag(), m)};
    out.cre = {Operator(space.tag(), m.adjoint())};
    return out;
  }
  const auto n = number_ops(space).total;
  RatioRoot root{q.squared(), zero_offset};
  const auto g = spectral_apply([&](cplx x) { return root(x.real()); }, n);
  out.ann = {out.classical_ann[0] * g};
  out.cre = {g * out.classical_cre[0]};
  return out;
}

DeformedQuartet weyl_closed_form(const std::vector<Operator>& ann, const std::vector<Operator>& cre,
                                 const DeformationParam& q, cplx zero_offset) {
  if (ann.size() != 2 || cre.size() != 2) throw std::invalid_argument("weyl_closed_form: expected 2 modes");
  const SpaceTag& space = ann[0].space();
  const auto n_up = diagonal_values(cre[0] * ann[0], "weyl_closed_form");
  const auto n_dn = diagonal_values(cre[1] * ann[1], "weyl_closed_form");

  RatioRoot root{q.squared(), zero_offset};
  DenseVector<cplx> up(space.dim), dn(space.dim);
  for (Index k = 0; k < space.dim; ++k) {
    up(k) = root(n_up(k)) * q.pow(n_dn(k));
    dn(k) = root(n_dn(k));
  }
  if (!root.offending.empty()) throw ConstructionError("weyl_closed_form: negative radicand", root.offending);
  const auto f_up = diag_op(space, up);
  const auto f_dn = diag_op(space, dn);

  DeformedQuartet out;
  out.space = space;
  out.q = q;
  out.provenance = Provenance::ClosedFormWeyl;
  out.sign = Sign::Weyl;
  out.classical_ann = ann;
  out.classical_cre = cre;
  out.cre = {f_up * cre[0], f_dn * cre[1]};
  out.ann = {ann[0] * f_up, ann[1] * f_dn};
  if (!q.is_real_positive()) out.notes.push_back("complex square roots on the principal branch");
  return out;
}

DeformedQuartet map_sl2_weyl(const FockSpace& space, const DeformationParam& q, cplx zero_offset) {
  require_modes(space, 2, "map_sl2_weyl");
  require_stats(space, Statistics::Bose, "map_sl2_weyl");
  const auto base = skeleton(space, q, Provenance::ClosedFormWeyl);
  DeformedQuartet out = weyl_closed_form(base.classical_ann, base.classical_cre, q, zero_offset);
  out.basis_labels = base.basis_labels;
  return out;
}

DeformedQuartet map_sl2_clifford(const FockSpace& space, const DeformationParam& q) {
  require_modes(space, 2, "map_sl2_clifford");
  require_stats(space, Statistics::Fermi, "map_sl2_clifford");
  DeformedQuartet out = skeleton(space, q, Provenance::ClosedFormClifford);
  const auto n = number_ops(space);
  const auto k = spectral_apply([&](cplx m) { return q.pow(-m.real()); }, n.per_mode[1]);
  out.cre = {k * out.classical_cre[0], out.classical_cre[1]};
  out.ann = {out.classical_ann[0] * k, out.classical_ann[1]};
  return out;
}

DeformedQuartet map_universal_sl2(const FockSpace& space, const DeformationParam& q, Sign sign, cplx zero_offset) {
  require_modes(space, 2, "map_universal_sl2");
  if (sign_of(space.statistics()) != sign) {
    throw std::invalid_argument("map_universal_sl2: sign does not match the statistics of the space");
  }
  const MatrixTwist twist = f_matrix_sl2(space, q, zero_offset);
  DeformedQuartet out = skeleton(space, q, Provenance::TwistBuilt);
  out.sign = sign;

  const DeformationParam q2 = sign == Sign::Weyl ? q.squared() : q.squared().inverse();
  const auto n = number_ops(space).total;
  RatioRoot root{q2, zero_offset};
  const auto f = spectral_apply([&](cplx x) { return root(x.real() + 1.0); }, n);
  if (!root.offending.empty()) throw ConstructionError("map_universal_sl2: negative radicand", root.offending);

  for (int i = 0; i < 2; ++i) {
    Operator c = Operator::zero(space.tag());
    Operator a = Operator::zero(space.tag());
    for (int l = 0; l < 2; ++l) {
      c += out.classical_cre[l] * twist.f_inv[l][i];
      a += twist.f[i][l] * out.classical_ann[l];
    }
    out.cre.push_back(c * f);
    out.ann.push_back(f * a);
  }
  return out;
}

AbelianForms abelian_forms(const AbelianTwist& twist) {
  const FockSpace& space = twist.space();
  const auto g_rho = twist.gamma_rho();
  const auto gp_rho = twist.gamma_prime_rho();
  AbelianForms out;
  for (int i = 0; i < twist.mode_count(); ++i) {
    const auto a = annihilator(space, i);
    const auto c = creator(space, i);
    // rho is diagonal, so only l = i contributes; S flips the sign of the first leg
    out.cre_right.push_back(c * twist.mixed(-1, i));
    out.cre_left.push_back((1.0 / gp_rho(i, i)) * (twist.mixed(-1, i) * c));
    out.ann_left.push_back(twist.mixed(+1, i) * a);
    out.ann_right.push_back((1.0 / g_rho(i, i)) * (a * twist.mixed(+1, i)));
  }
  return out;
}

DeformedQuartet map_abelian(const AbelianTwist& twist, Sign sign) {
  if (sign_of(twist.space().statistics()) != sign) {
    throw std::invalid_argument("map_abelian: sign does not match the statistics of the space");
  }
  const auto forms = abelian_forms(twist);
  DeformedQuartet out = skeleton(twist.space(), DeformationParam::from_h(twist.h()), Provenance::AbelianTwist);
  out.sign = sign;
  out.cre = forms.cre_right;
  out.ann = forms.ann_left;
  return out;
}

double abelian_form_disagreement(const AbelianForms& forms) {
  double worst = 0.0;
  for (size_t i = 0; i < forms.cre_right.size(); ++i) {
    worst = std::max(worst, max_abs_diff(forms.cre_right[i], forms.cre_left[i]));
    worst = std::max(worst, max_abs_diff(forms.ann_left[i], forms.ann_right[i]));
  }
  return worst;
}

AlphaElement alpha_element(const FockSpace& space, const DeformationParam& q) {
  require_modes(space, 2, "alpha_element");
  require_stats(space, Statistics::Bose, "alpha_element");
  if (!q.is_real_positive()) throw std::invalid_argument("alpha_element: requires real positive q");
  const DeformationParam q2 = q.squared();
  DenseVector<cplx> d(space.dimension());
  std::vector<std::string> offending;
  for (Index k = 0; k < space.dimension(); ++k) {
    const auto& occ = space.state(k);
    cplx radicand = 1.0;
    for (int m : occ) radicand *= std::tgamma(m + 1.0) / q_gamma(m + 1, q2);
    if (radicand.real() <= 0.0) offending.push_back(to_string(occ));
    d(k) = std::sqrt(radicand.real());
  }
  if (!offending.empty()) throw ConstructionError("alpha_element: nonpositive radicand", offending);
  return diagonal_alpha(space.tag(), d);
}

AlphaElement diagonal_alpha(const SpaceTag& space, const DenseVector<cplx>& entries) {
  DenseVector<cplx> inv(entries.size());
  for (Index k = 0; k < entries.size(); ++k) {
    if (entries(k) == 0.0) throw std::invalid_argument("diagonal_alpha: singular entry");
    inv(k) = 1.0 / entries(k);
  }
  return {from_diagonal(space, entries), from_diagonal(space, inv)};
}

DeformedQuartet conjugate(const DeformedQuartet& quartet, const AlphaElement& alpha) {
  DeformedQuartet out = quartet;
  out.provenance = Provenance::AlphaConjugated;
  for (auto& a : out.ann) a = alpha.alpha * a * alpha.alpha_inv;
  for (auto& c : out.cre) c = alpha.alpha * c * alpha.alpha_inv;
  return out;
}

DeformedQuartet map_chaichian(const FockSpace& space, const DeformationParam& q, cplx zero_offset) {
  require_modes(space, 2, "map_chaichian");
  require_stats(space, Statistics::Bose, "map_chaichian");
  DeformedQuartet out = skeleton(space, q, Provenance::Chaichian);
  const auto n = number_ops(space);
  RatioRoot ratio{q.squared(), zero_offset, false};
  const auto k_dn = spectral_apply([&](cplx m) { return q.pow(m.real()); }, n.per_mode[1]);
  const auto g_up = spectral_apply([&](cplx m) { return ratio(m.real()); }, n.per_mode[0]);
  const auto g_dn = spectral_apply([&](cplx m) { return ratio(m.real()); }, n.per_mode[1]);
  out.cre = {k_dn * out.classical_cre[0], out.classical_cre[1]};
  out.ann = {out.classical_ann[0] * g_up * k_dn, out.classical_ann[1] * g_dn};
  out.notes.push_back("not compatible with the star structure");
  return out;
}

DeformedQuartet root_unity_quartet(const FockSpace& space, int p) {
  require_modes(space, 2, "root_unity_quartet");
  require_stats(space, Statistics::Bose, "root_unity_quartet");
  if (p < 2) throw std::invalid_argument("root_unity_quartet: p must be >= 2");
  if (space.cutoff() < 3 * p) throw std::invalid_argument("root_unity_quartet: cutoff must be >= 3p");
  DeformedQuartet out = map_sl2_weyl(space, DeformationParam::root_of_unity(p));
  out.provenance = Provenance::RootOfUnity;
  return out;
}

std::vector<std::pair<std::string, Operator>> explicit_relations(const DeformedQuartet& quartet) {
  if (quartet.mode_count() != 2) throw std::invalid_argument("explicit_relations: expected 2 modes");
  const auto& q = quartet.q;
  const auto& au = quartet.A_up();
  const auto& ad = quartet.A_dn();
  const auto& cu = quartet.Ap_up();
  const auto& cd = quartet.Ap_dn();
  const auto id = Operator::identity(quartet.space);
  std::vector<std::pair<std::string, Operator>> out;
  if (quartet.sign == Sign::Weyl) {
    const cplx q1 = q.q();
    const cplx q2 = q.pow(2.0);
    out.emplace_back("weyl.ann-cre.up.up", au * cu - id - q2 * (cu * au) - (q2 - 1.0) * (cd * ad));
    out.emplace_back("weyl.ann-cre.dn.dn", ad * cd - id - q2 * (cd * ad));
    out.emplace_back("weyl.ann-cre.up.dn", au * cd - q1 * (cd * au));
    out.emplace_back("weyl.ann-cre.dn.up", ad * cu - q1 * (cu * ad));
    out.emplace_back("weyl.ann-ann.dn.up", ad * au - q1 * (au * ad));
    out.emplace_back("weyl.cre-cre.up.dn", cu * cd - q1 * (cd * cu));
  } else {
    const cplx qi = q.pow(-1.0);
    const cplx qm2 = q.pow(-2.0);
    out.emplace_back("clifford.ann-cre.up.up", au * cu - id + cu * au - (qm2 - 1.0) * (cd * ad));
    out.emplace_back("clifford.ann-cre.dn.dn", ad * cd - id + cd * ad);
    out.emplace_back("clifford.ann-cre.up.dn", au * cd + qi * (cd * au));
    out.emplace_back("clifford.ann-cre.dn.up", ad * cu + qi * (cu * ad));
    out.emplace_back("clifford.ann-ann.dn.up", ad * au + qi * (au * ad));
    out.emplace_back("clifford.ann-ann.up.up", au * au);
    out.emplace_back("clifford.ann-ann.dn.dn", ad * ad);
    out.emplace_back("clifford.cre-cre.up.dn", cu * cd + qi * (cd * cu));
    out.emplace_back("clifford.cre-cre.up.up", cu * cu);
    out.emplace_back("clifford.cre-cre.dn.dn", cd * cd);
  }
  return out;
}

InverseMapResult inverse_map_sl2(const DeformedQuartet& quartet, const InteriorProjector& interior,
                                 InverseVariant variant, cplx zero_offset) {
  if (quartet.mode_count() != 2 || quartet.sign != Sign::Weyl) {
    throw std::invalid_argument("inverse_map_sl2: expects a 2-mode Weyl quartet");
  }
  const auto& q = quartet.q;
  if (!q.is_real_positive() || q.is_classical()) {
    throw std::invalid_argument("inverse_map_sl2: requires real positive q != 1");
  }
  if (!(interior.space() == quartet.space)) throw std::invalid_argument("inverse_map_sl2: projector space mismatch");

  InverseMapResult result;
  for (const auto& [id, diff] : explicit_relations(quartet)) {
    result.qcr_residual = std::max(result.qcr_residual, interior.residual(diff));
  }
  if (result.qcr_residual > 1e-8) {
    throw std::invalid_argument("inverse_map_sl2: input violates the Weyl relations (residual " +
                                std::to_string(result.qcr_residual) + ")");
  }

  const auto n_up = diagonal_values(quartet.Ap_up() * quartet.A_up(), "inverse_map_sl2");
  const auto n_dn = diagonal_values(quartet.Ap_dn() * quartet.A_dn(), "inverse_map_sl2");
  const double k = q.q().real() * q.q().real() - 1.0;
  const double ln_q = q.h().real();
  const Index dim = quartet.space.dim;
  constexpr double kZero = 1e-12;

  DenseVector<cplx> f_up(dim), f_dn(dim);
  bool walled = false;
  for (Index s = 0; s < dim; ++s) {
    const double arg_dn = 1.0 + k * n_dn(s);
    const double arg_total = 1.0 + k * (n_up(s) + n_dn(s));
    const bool bad = arg_dn <= kZero || arg_total <= kZero;
    if (interior.contains(s)) {
      ++result.scanned;
      if (bad) {
        SingularityEntry e;
        e.index = s;
        e.label = s < static_cast<Index>(quartet.basis_labels.size()) ? quartet.basis_labels[static_cast<size_t>(s)]
                                                                       : std::to_string(s);
        e.arg_dn = arg_dn;
        e.arg_total = arg_total;
        result.singular.push_back(std::move(e));
      }
    }
    if (bad) {
      // outside the interior the spectra carry truncation error; wall them off
      walled = true;
      f_up(s) = 0.0;
      f_dn(s) = 0.0;
      continue;
    }
    const double x_dn = n_dn(s);
    const double x_up = n_up(s);
    f_dn(s) = std::abs(x_dn) <= kZero ? k / (2.0 * ln_q) + zero_offset : std::log(arg_dn) / (2.0 * x_dn * ln_q);
    const double log_ratio = std::log(arg_total / arg_dn);
    if (variant == InverseVariant::Corrected) {
      f_up(s) = std::abs(x_up) <= kZero ? k / (2.0 * ln_q * arg_dn) + zero_offset : log_ratio / (2.0 * x_up * ln_q);
    } else {
      f_up(s) = std::abs(x_up) <= kZero ? k / (2.0 * ln_q) + zero_offset : arg_dn * log_ratio / (2.0 * x_up * ln_q);
    }
  }
  if (!result.singular.empty()) return result;

  const auto root = [&](const DenseVector<cplx>& v) {
    DenseVector<cplx> out(v.size());
    for (Index s = 0; s < v.size(); ++s) out(s) = std::sqrt(v(s));
    return from_diagonal(quartet.space, out);
  };
  const auto g_up = root(f_up);
  const auto g_dn = root(f_dn);

  DeformedQuartet out;
  out.space = quartet.space;
  out.q = DeformationParam::classical();
  out.provenance = Provenance::InverseMap;
  out.sign = Sign::Weyl;
  out.basis_labels = quartet.basis_labels;
  out.classical_ann = quartet.ann;
  out.classical_cre = quartet.cre;
  out.cre = {g_up * quartet.Ap_up(), g_dn * quartet.Ap_dn()};
  out.ann = {quartet.A_up() * g_up, quartet.A_dn() * g_dn};
  if (variant == InverseVariant::AsPrinted) out.notes.push_back("as-printed up-mode factor");
  if (walled) out.notes.push_back("nonpositive log arguments outside the interior set to zero");
  result.recovered = std::move(out);
  return result;
}

}  // namespace qdeform
