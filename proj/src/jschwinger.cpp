#include "qdeform/jschwinger.hpp"

#include "qdeform/error.hpp"

#include <sstream>

namespace qdeform {

namespace {

void require_two_modes(const FockSpace& space, const char* who) {
  if (space.mode_count() != 2) {
    throw std::invalid_argument(std::string(who) + ": expected a 2-mode space, got " +
                                std::to_string(space.mode_count()) + " modes");
  }
}

bool row_is_zero(const Operator& x, Index r) { return x.matrix().row(r).cwiseAbs().maxCoeff() == 0.0; }

std::string format_eigen(double j, double j0, cplx value) {
  std::ostringstream os;
  os << "(j=" << j << ", j0=" << j0 << ") -> " << value.real();
  if (value.imag() != 0.0) os << (value.imag() < 0 ? "-" : "+") << std::abs(value.imag()) << "i";
  return os.str();
}

}  // namespace

Sl2Triple sigma_sl2(const FockSpace& space) {
  require_two_modes(space, "sigma_sl2");
  const auto a_up = annihilator(space, 0);
  const auto a_dn = annihilator(space, 1);
  const auto c_up = creator(space, 0);
  const auto c_dn = creator(space, 1);
  const auto n = number_ops(space);

  Sl2Triple t;
  t.j_plus = c_up * a_dn;
  t.j_minus = c_dn * a_up;
  t.j0 = 0.5 * (n.per_mode[0] - n.per_mode[1]);
  t.j = 0.5 * n.total;
  const auto id = Operator::identity(space.tag());
  t.casimir = t.j_minus * t.j_plus + t.j0 * (t.j0 + id);
  t.j_casimir = spectral_apply([](cplx c) { return (std::sqrt(1.0 + 4.0 * c.real()) - 1.0) / 2.0; }, t.casimir);
  return t;
}

QuantumSl2Triple phi_h_generators(const FockSpace& space, const DeformationParam& q, cplx zero_offset) {
  const Sl2Triple t = sigma_sl2(space);
  const auto js = real_spectrum(t.j_casimir);
  const auto j0s = real_spectrum(t.j0);

  // sqrt([j + s j0]_q [1 + j - s j0]_q / ((j + s j0)(1 + j - s j0))), placed left of sigma(j_s)
  auto factor = [&](int s, const Operator& ladder) {
    DenseVector<cplx> d(space.dimension());
    std::vector<std::string> offending;
    for (Index k = 0; k < space.dimension(); ++k) {
      const double x1 = js(k) + s * j0s(k);
      const double x2 = 1.0 + js(k) - s * j0s(k);
      const cplx radicand =
          qratio_safe(x1, q, QKind::Sym, zero_offset) * qratio_safe(x2, q, QKind::Sym, zero_offset);
      if (q.regime() == Regime::RootOfUnity && !row_is_zero(ladder, k) &&
          std::abs(radicand.imag()) < 1e-12 && radicand.real() < -1e-12) {
        offending.push_back(format_eigen(js(k), j0s(k), radicand));
      }
      d(k) = std::sqrt(radicand);
    }
    if (!offending.empty()) throw ConstructionError("phi_h_generators: negative radicand", offending);
    return from_diagonal(space.tag(), d);
  };

  QuantumSl2Triple out;
  out.q = q;
  out.J0 = t.j0;
  out.J_plus = factor(+1, t.j_plus) * t.j_plus;
  out.J_minus = factor(-1, t.j_minus) * t.j_minus;
  return out;
}

QuantumSl2Triple as_realization(const Sl2Triple& t) {
  return QuantumSl2Triple{t.j0, t.j_plus, t.j_minus, DeformationParam::classical()};
}

Operator q_commutator_rhs(const QuantumSl2Triple& t) {
  const auto& q = t.q;
  if (q.is_classical()) return 2.0 * t.J0;
  const cplx denom = q.q() - 1.0 / q.q();
  return spectral_apply([&](cplx j0) { return (q.pow(2.0 * j0.real()) - q.pow(-2.0 * j0.real())) / denom; }, t.J0);
}

std::string to_string(const Factor& f) {
  switch (f.kind) {
    case GenKind::Unit:
      return "1";
    case GenKind::J0:
      return "J0";
    case GenKind::JPlus:
      return "J+";
    case GenKind::JMinus:
      return "J-";
    case GenKind::QPow: {
      std::ostringstream os;
      os << "q^" << f.exponent;
      return os.str();
    }
  }
  return "?";
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& f : w) out += (out.empty() ? "" : " ") + to_string(f);
  return out;
}

Word parse_word(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  Word out;
  while (is >> tok) {
    if (tok == "1") {
      continue;
    } else if (tok == "J0" || tok == "j0") {
      out.push_back({GenKind::J0});
    } else if (tok == "J+" || tok == "j+") {
      out.push_back({GenKind::JPlus});
    } else if (tok == "J-" || tok == "j-") {
      out.push_back({GenKind::JMinus});
    } else if (tok.rfind("q^", 0) == 0 && tok.size() > 2) {
      size_t used = 0;
      double c = 0.0;
      try {
        c = std::stod(tok.substr(2), &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("parse_word: malformed exponent in '" + tok + "'");
      }
      if (used != tok.size() - 2) throw std::invalid_argument("parse_word: malformed exponent in '" + tok + "'");
      out.push_back({GenKind::QPow, c});
    } else {
      throw std::invalid_argument("parse_word: unknown generator '" + tok + "'");
    }
  }
  return out;
}

Coproduct HopfData::coproduct(const Factor& x) const {
  const Factor unit{GenKind::Unit};
  switch (x.kind) {
    case GenKind::Unit:
      return {{1.0, {}, {}}};
    case GenKind::J0:
      return {{1.0, {unit}, {x}}, {1.0, {x}, {unit}}};
    case GenKind::JPlus:
    case GenKind::JMinus:
      return {{1.0, {x}, {Factor{GenKind::QPow, -1.0}}}, {1.0, {Factor{GenKind::QPow, 1.0}}, {x}}};
    case GenKind::QPow:
      return {{1.0, {x}, {x}}};
  }
  return {};
}

Coproduct HopfData::coproduct(const Word& x) const {
  Coproduct acc{{1.0, {}, {}}};
  for (const auto& f : x) {
    Coproduct next;
    for (const auto& a : acc) {
      for (const auto& b : coproduct(f)) {
        CoproductTerm t{a.coeff * b.coeff, a.left, a.right};
        t.left.insert(t.left.end(), b.left.begin(), b.left.end());
        t.right.insert(t.right.end(), b.right.begin(), b.right.end());
        next.push_back(std::move(t));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

Element HopfData::antipode(const Factor& x) const {
  switch (x.kind) {
    case GenKind::Unit:
      return {{1.0, {}}};
    case GenKind::J0:
      return {{-1.0, {x}}};
    case GenKind::JPlus:
      return {{-q.pow(-1.0), {x}}};
    case GenKind::JMinus:
      return {{-q.pow(1.0), {x}}};
    case GenKind::QPow:
      return {{1.0, {Factor{GenKind::QPow, -x.exponent}}}};
  }
  return {};
}

Element HopfData::antipode(const Word& x) const {
  Element acc{{1.0, {}}};
  for (auto it = x.rbegin(); it != x.rend(); ++it) {
    Element next;
    for (const auto& a : acc) {
      for (const auto& b : antipode(*it)) {
        Term t{a.coeff * b.coeff, a.word};
        t.word.insert(t.word.end(), b.word.begin(), b.word.end());
        next.push_back(std::move(t));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

cplx HopfData::counit(const Factor& x) const {
  return (x.kind == GenKind::Unit || x.kind == GenKind::QPow) ? 1.0 : 0.0;
}

cplx HopfData::counit(const Word& x) const {
  cplx out = 1.0;
  for (const auto& f : x) out *= counit(f);
  return out;
}

HopfData antipode_data(const DeformationParam& q) { return HopfData{q}; }

Operator evaluate(const Factor& x, const QuantumSl2Triple& t) {
  switch (x.kind) {
    case GenKind::Unit:
      return Operator::identity(t.J0.space());
    case GenKind::J0:
      return t.J0;
    case GenKind::JPlus:
      return t.J_plus;
    case GenKind::JMinus:
      return t.J_minus;
    case GenKind::QPow:
      return spectral_apply([&](cplx j0) { return t.q.pow(x.exponent * j0.real()); }, t.J0);
  }
  throw std::invalid_argument("evaluate: unknown generator");
}

Operator evaluate(const Word& x, const QuantumSl2Triple& t) {
  Operator out = Operator::identity(t.J0.space());
  for (const auto& f : x) out = out * evaluate(f, t);
  return out;
}

Operator evaluate(const Element& x, const QuantumSl2Triple& t) {
  Operator out = Operator::zero(t.J0.space());
  for (const auto& term : x) out += term.coeff * evaluate(term.word, t);
  return out;
}

Operator quantum_action(const Word& x, const Operator& target, const QuantumSl2Triple& t, const HopfData& hopf) {
  target.require_same(t.J0);
  Operator out = Operator::zero(target.space());
  for (const auto& term : hopf.coproduct(x)) {
    out += term.coeff * (evaluate(term.left, t) * target * evaluate(hopf.antipode(term.right), t));
  }
  return out;
}

Operator quantum_action(const Factor& x, const Operator& target, const QuantumSl2Triple& t, const HopfData& hopf) {
  return quantum_action(Word{x}, target, t, hopf);
}

Operator classical_action(const Word& x, const Operator& target, const Sl2Triple& t) {
  return quantum_action(x, target, as_realization(t), antipode_data(DeformationParam::classical()));
}

Operator classical_action(const std::string& x, const Operator& target, const Sl2Triple& t) {
  return classical_action(parse_word(x), target, t);
}

double antipode_axiom_residual(const Factor& x, const QuantumSl2Triple& t, const HopfData& hopf,
                               const InteriorProjector& p) {
  const auto id = Operator::identity(t.J0.space());
  Operator left = Operator::zero(t.J0.space());
  Operator right = Operator::zero(t.J0.space());
  for (const auto& term : hopf.coproduct(x)) {
    left += term.coeff * (evaluate(hopf.antipode(term.left), t) * evaluate(term.right, t));
    right += term.coeff * (evaluate(term.left, t) * evaluate(hopf.antipode(term.right), t));
  }
  const cplx e = hopf.counit(x);
  return std::max(p.residual(left - e * id), p.residual(right - e * id));
}

Eigen::Matrix2cd fundamental(const Factor& x, const DeformationParam& q) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (x.kind) {
    case GenKind::Unit:
      m.setIdentity();
      break;
    case GenKind::J0:
      m(0, 0) = 0.5;
      m(1, 1) = -0.5;
      break;
    case GenKind::JPlus:
      m(0, 1) = 1.0;
      break;
    case GenKind::JMinus:
      m(1, 0) = 1.0;
      break;
    case GenKind::QPow:
      m(0, 0) = q.pow(0.5 * x.exponent);
      m(1, 1) = q.pow(-0.5 * x.exponent);
      break;
  }
  return m;
}

Eigen::Matrix2cd fundamental(const Word& x, const DeformationParam& q) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  for (const auto& f : x) m = m * fundamental(f, q);
  return m;
}

Eigen::Matrix2cd fundamental(const Element& x, const DeformationParam& q) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (const auto& term : x) m += term.coeff * fundamental(term.word, q);
  return m;
}

}  // namespace qdeform
