#include "qdeform/verify.hpp"

#include <algorithm>
#include <cmath>

namespace qdeform {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skip:
      return "skip";
    case CheckStatus::ExpectedSingular:
      return "expected-singular";
  }
  return "fail";
}

CheckStatus check_status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "skip") return CheckStatus::Skip;
  if (s == "expected-singular") return CheckStatus::ExpectedSingular;
  throw std::invalid_argument("unknown check status '" + s + "'");
}

std::string to_string(Expect e) { return e == Expect::Below ? "below" : "above"; }

Expect expect_from_string(const std::string& s) {
  if (s == "below") return Expect::Below;
  if (s == "above") return Expect::Above;
  throw std::invalid_argument("unknown expectation '" + s + "'");
}

void RelationReport::reevaluate() {
  if (status == CheckStatus::Skip || status == CheckStatus::ExpectedSingular) return;
  // NaN fails either way
  const bool ok = expect == Expect::Below ? residual < tolerance : residual > tolerance;
  status = ok ? CheckStatus::Pass : CheckStatus::Fail;
}

RelationReport make_check(std::string id, double residual, double tolerance, Context context, Expect expect) {
  RelationReport r;
  r.id = std::move(id);
  r.residual = residual;
  r.tolerance = tolerance;
  r.expect = expect;
  r.context = std::move(context);
  r.reevaluate();
  return r;
}

RelationReport make_skip(std::string id, std::string reason, Context context) {
  RelationReport r;
  r.id = std::move(id);
  r.status = CheckStatus::Skip;
  r.reason = std::move(reason);
  r.context = std::move(context);
  return r;
}

RelationReport make_expected_singular(std::string id, double value, std::string reason, Context context) {
  RelationReport r;
  r.id = std::move(id);
  r.residual = value;
  r.status = CheckStatus::ExpectedSingular;
  r.reason = std::move(reason);
  r.context = std::move(context);
  return r;
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationReport& r) { return r.passed(); });
}

CheckStatus SuiteReport::status() const {
  if (!passed()) return CheckStatus::Fail;
  if (!checks.empty() &&
      std::all_of(checks.begin(), checks.end(), [](const RelationReport& r) { return r.status == CheckStatus::Skip; })) {
    return CheckStatus::Skip;
  }
  return CheckStatus::Pass;
}

void SuiteReport::append(const SuiteReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void SuiteReport::sort_checks() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const RelationReport& a, const RelationReport& b) { return a.id < b.id; });
}

void SuiteReport::apply_tolerances(const std::map<std::string, double>& overrides) {
  for (auto& c : checks) {
    size_t best = 0;
    const double* tol = nullptr;
    for (const auto& [prefix, value] : overrides) {
      if (c.id.rfind(prefix, 0) == 0 && (tol == nullptr || prefix.size() > best)) {
        best = prefix.size();
        tol = &value;
      }
    }
    if (tol != nullptr) {
      c.tolerance = *tol;
      c.reevaluate();
    }
  }
}

Context context_of(const DeformedQuartet& quartet, const InteriorProjector& p) {
  Context c{{"q", quartet.q.describe()},
            {"space", quartet.space.id},
            {"margin", std::to_string(p.margin())},
            {"provenance", to_string(quartet.provenance)}};
  if (p.warning()) c["warning"] = *p.warning();
  return c;
}

namespace {

std::string mode_name(int i, int modes) {
  if (modes == 2) return i == 0 ? "up" : "dn";
  return std::to_string(i);
}

}  // namespace

SuiteReport check_qcr_rmatrix(const DeformedQuartet& quartet, const Eigen::MatrixXcd& r, QcrNormalization norm,
                              const InteriorProjector& p, double tol, const std::string& prefix) {
  const int m = quartet.mode_count();
  if (r.rows() != m * m || r.cols() != m * m) {
    throw std::invalid_argument("check_qcr_rmatrix: R has dimension " + std::to_string(r.rows()) + " for " +
                                std::to_string(m) + " modes");
  }
  const double s = sign_value(quartet.sign);
  cplx c1 = 1.0;
  cplx c2 = 1.0;
  if (norm == QcrNormalization::Sl2) {
    c1 = quartet.q.pow(s);
    c2 = quartet.q.pow(-s);
  }
  auto R = [&](int a, int b, int c, int d) { return r(a * m + b, c * m + d); };
  const auto id = Operator::identity(quartet.space);
  const auto& A = quartet.ann;
  const auto& C = quartet.cre;
  const Context ctx = context_of(quartet, p);

  SuiteReport out;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const std::string pair = mode_name(i, m) + "." + mode_name(j, m);
      Operator mixed = A[i] * C[j];
      Operator aa = A[i] * A[j];
      Operator cc = C[i] * C[j];
      if (i == j) mixed -= id;
      for (int u = 0; u < m; ++u) {
        for (int v = 0; v < m; ++v) {
          if (const cplx c = R(u, i, j, v); c != 0.0) mixed -= (s * c1 * c) * (C[u] * A[v]);
          if (const cplx c = R(i, j, v, u); c != 0.0) aa -= (s * c2 * c) * (A[u] * A[v]);
          if (const cplx c = R(v, u, i, j); c != 0.0) cc -= (s * c2 * c) * (C[u] * C[v]);
        }
      }
      out.add(make_check(prefix + ".ann-cre." + pair, p.residual(mixed), tol, ctx));
      out.add(make_check(prefix + ".ann-ann." + pair, p.residual(aa), tol, ctx));
      out.add(make_check(prefix + ".cre-cre." + pair, p.residual(cc), tol, ctx));
    }
  }
  return out;
}

SuiteReport check_qcr_explicit(const DeformedQuartet& quartet, const InteriorProjector& p, double tol) {
  SuiteReport out;
  const Context ctx = context_of(quartet, p);
  for (const auto& [id, diff] : explicit_relations(quartet)) out.add(make_check(id, p.residual(diff), tol, ctx));
  return out;
}

SuiteReport check_qcr_1d(const DeformedQuartet& quartet, const InteriorProjector& p, double tol) {
  if (quartet.mode_count() != 1) throw std::invalid_argument("check_qcr_1d: expected one mode");
  const auto& a = quartet.ann[0];
  const auto& c = quartet.cre[0];
  const auto id = Operator::identity(quartet.space);
  SuiteReport out;
  out.add(make_check("qcr.1d", p.residual(a * c - id - quartet.q.pow(2.0) * (c * a)), tol, context_of(quartet, p)));
  return out;
}

SuiteReport check_ccr(const DeformedQuartet& quartet, const InteriorProjector& p, double tol,
                      const std::string& prefix) {
  const int m = quartet.mode_count();
  const int s = sign_value(quartet.sign);
  const auto id = Operator::identity(quartet.space);
  const Context ctx = context_of(quartet, p);
  SuiteReport out;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const std::string pair = mode_name(i, m) + "." + mode_name(j, m);
      Operator mixed = graded_commutator(quartet.ann[i], quartet.cre[j], s);
      if (i == j) mixed -= id;
      out.add(make_check(prefix + ".ann-cre." + pair, p.residual(mixed), tol, ctx));
      out.add(make_check(prefix + ".ann-ann." + pair, p.residual(graded_commutator(quartet.ann[i], quartet.ann[j], s)),
                         tol, ctx));
      out.add(make_check(prefix + ".cre-cre." + pair, p.residual(graded_commutator(quartet.cre[i], quartet.cre[j], s)),
                         tol, ctx));
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> covariance_residuals(const DeformedQuartet& quartet,
                                                                 const QuantumSl2Triple& t, const HopfData& hopf,
                                                                 const InteriorProjector& p) {
  if (quartet.mode_count() != 2) throw std::invalid_argument("covariance_residuals: expected 2 modes");
  const std::vector<std::pair<std::string, Factor>> gens{
      {"J0", {GenKind::J0}}, {"J+", {GenKind::JPlus}}, {"J-", {GenKind::JMinus}}};
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [name, x] : gens) {
    const Eigen::Matrix2cd rho = fundamental(x, hopf.q);
    const Eigen::Matrix2cd rho_s = fundamental(hopf.antipode(x), hopf.q);
    for (int i = 0; i < 2; ++i) {
      Operator cre = quantum_action(x, quartet.cre[i], t, hopf);
      Operator ann = quantum_action(x, quartet.ann[i], t, hopf);
      for (int l = 0; l < 2; ++l) {
        if (rho(l, i) != 0.0) cre -= rho(l, i) * quartet.cre[l];
        if (rho_s(i, l) != 0.0) ann -= rho_s(i, l) * quartet.ann[l];
      }
      out.emplace_back(name + ".cre." + mode_name(i, 2), p.residual(cre));
      out.emplace_back(name + ".ann." + mode_name(i, 2), p.residual(ann));
    }
  }
  return out;
}

SuiteReport check_covariance(const DeformedQuartet& quartet, const QuantumSl2Triple& t, const HopfData& hopf,
                             const InteriorProjector& p, double tol, const std::string& prefix) {
  SuiteReport out;
  const Context ctx = context_of(quartet, p);
  for (const auto& [id, res] : covariance_residuals(quartet, t, hopf, p)) out.add(make_check(prefix + "." + id, res, tol, ctx));
  return out;
}

SuiteReport check_star(const DeformedQuartet& quartet, double tol, Expect expect, const std::string& prefix) {
  SuiteReport out;
  const auto p = full_space(quartet.space);
  const Context ctx = context_of(quartet, p);
  if (!quartet.q.is_real_positive()) {
    for (int i = 0; i < quartet.mode_count(); ++i) {
      out.add(make_skip(prefix + "." + mode_name(i, quartet.mode_count()), "q is not real positive", ctx));
    }
    return out;
  }
  if (expect == Expect::Above) {
    double worst = 0.0;
    for (int i = 0; i < quartet.mode_count(); ++i) worst = std::max(worst, max_abs(adjoint(quartet.ann[i]) - quartet.cre[i]));
    out.add(make_check(prefix + ".gap", worst, tol, ctx, Expect::Above));
    return out;
  }
  for (int i = 0; i < quartet.mode_count(); ++i) {
    out.add(make_check(prefix + "." + mode_name(i, quartet.mode_count()),
                       max_abs(adjoint(quartet.ann[i]) - quartet.cre[i]), tol, ctx));
  }
  return out;
}

SuiteReport check_invariants(const DeformedQuartet& quartet, const FockSpace& space, const InvariantOptions& opt) {
  if (!(space.tag() == quartet.space)) throw std::invalid_argument("check_invariants: space mismatch");
  if (quartet.classical_ann.size() != quartet.ann.size()) {
    throw std::invalid_argument("check_invariants: quartet carries no undeformed operators");
  }
  const int m = quartet.mode_count();
  const auto& A = quartet.ann;
  const auto& C = quartet.cre;
  const auto& a = quartet.classical_ann;
  const auto& c = quartet.classical_cre;
  const DeformationParam q2 = quartet.sign == Sign::Weyl ? quartet.q.squared() : quartet.q.squared().inverse();
  const auto n = number_ops(space).total;
  SuiteReport out;
  for (int order : opt.orders) {
    if (order != 1 && order != 2) throw std::invalid_argument("check_invariants: orders must be 1 or 2");
    // no truncation for fermions
    const auto p = space.statistics() == Statistics::Fermi ? full_space(space.tag()) : interior(space, 2 * order);
    const Context ctx = context_of(quartet, p);
    Operator lhs = Operator::zero(quartet.space);
    Operator rhs = Operator::zero(quartet.space);
    if (order == 1) {
      for (int i = 0; i < m; ++i) {
        lhs += C[i] * A[i];
        rhs += c[i] * a[i];
      }
      if (opt.target == InvariantTarget::QDeformed) {
        rhs = spectral_apply([&](cplx x) { return qnum_std(x.real(), q2); }, n);
      }
    } else {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          lhs += C[i] * C[j] * A[j] * A[i];
          rhs += c[i] * c[j] * a[j] * a[i];
        }
      if (opt.target == InvariantTarget::QDeformed) {
        rhs = spectral_apply([&](cplx x) { return qnum_std(x.real(), q2) * qnum_std(x.real() - 1.0, q2); }, n);
      }
    }
    const std::string id = opt.prefix + ".order" + std::to_string(order);
    out.add(make_check(id, p.residual(lhs - rhs), order == 1 ? opt.tol_order1 : opt.tol_order2, ctx));
  }
  return out;
}

SuiteReport check_number_ladder(const DeformedQuartet& quartet, const InteriorProjector& p, double tol) {
  const int m = quartet.mode_count();
  const auto id = Operator::identity(quartet.space);
  const double s = sign_value(quartet.sign);
  const cplx up = quartet.q.pow(2.0 * s);
  const cplx dn = quartet.q.pow(-2.0 * s);
  Operator N = Operator::zero(quartet.space);
  for (int i = 0; i < m; ++i) N += quartet.cre[i] * quartet.ann[i];
  const Context ctx = context_of(quartet, p);
  SuiteReport out;
  for (int i = 0; i < m; ++i) {
    const auto& C = quartet.cre[i];
    const auto& A = quartet.ann[i];
    const Operator nc = N * C;
    const Operator na = N * A;
    out.add(make_check("ladder.cre." + mode_name(i, m),
                       p.residual(nc - C * (id + up * N)) / std::max(1.0, p.residual(nc)), tol, ctx));
    out.add(make_check("ladder.ann." + mode_name(i, m),
                       p.residual(na - dn * (A * (N - id))) / std::max(1.0, p.residual(na)), tol, ctx));
  }
  return out;
}

SuiteReport check_vacuum(const DeformedQuartet& quartet, double tol) {
  const int m = quartet.mode_count();
  DenseVector<cplx> vac = DenseVector<cplx>::Zero(quartet.space.dim);
  vac(0) = 1.0;
  const auto p = full_space(quartet.space);
  const Context ctx = context_of(quartet, p);
  SuiteReport out;
  for (int i = 0; i < m; ++i) {
    out.add(make_check("vacuum.ann." + mode_name(i, m), qdeform::apply(quartet.ann[i], vac).cwiseAbs().maxCoeff(), tol, ctx));
    if (quartet.classical_cre.size() == quartet.cre.size()) {
      const DenseVector<cplx> d = qdeform::apply(quartet.cre[i], vac) - qdeform::apply(quartet.classical_cre[i], vac);
      out.add(make_check("vacuum.cre." + mode_name(i, m), d.cwiseAbs().maxCoeff(), tol, ctx));
    }
  }
  return out;
}

SuiteReport check_uqsl2_relations(const QuantumSl2Triple& t, const InteriorProjector& p, double tol) {
  const Context ctx{{"q", t.q.describe()}, {"space", t.J0.space().id}, {"margin", std::to_string(p.margin())}};
  SuiteReport out;
  out.add(make_check("uqsl2.J0.J+", p.residual(commutator(t.J0, t.J_plus) - t.J_plus), tol, ctx));
  out.add(make_check("uqsl2.J0.J-", p.residual(commutator(t.J0, t.J_minus) + t.J_minus), tol, ctx));
  out.add(make_check("uqsl2.J+.J-", p.residual(commutator(t.J_plus, t.J_minus) - q_commutator_rhs(t)), tol, ctx));
  return out;
}

SuiteReport check_antipode(const QuantumSl2Triple& t, const HopfData& hopf, const InteriorProjector& p, double tol) {
  const Context ctx{{"q", t.q.describe()}, {"space", t.J0.space().id}, {"margin", std::to_string(p.margin())}};
  SuiteReport out;
  const std::vector<Factor> gens{{GenKind::J0}, {GenKind::JPlus}, {GenKind::JMinus}, {GenKind::QPow, 1.0}};
  for (const auto& x : gens) {
    out.add(make_check("antipode." + to_string(x), antipode_axiom_residual(x, t, hopf, p), tol, ctx));
  }
  return out;
}

SuiteReport check_counit_action(const QuantumSl2Triple& t, const HopfData& hopf, double tol) {
  const auto id = Operator::identity(t.J0.space());
  const auto p = full_space(t.J0.space());
  const Context ctx{{"q", t.q.describe()}, {"space", t.J0.space().id}};
  SuiteReport out;
  const std::vector<Factor> gens{{GenKind::J0}, {GenKind::JPlus}, {GenKind::JMinus}, {GenKind::QPow, 1.0}};
  for (const auto& x : gens) {
    out.add(make_check("counit." + to_string(x), p.residual(quantum_action(x, id, t, hopf) - hopf.counit(x) * id), tol,
                       ctx));
  }
  return out;
}

namespace {

struct Named {
  std::string name;
  const Operator* op;
};

std::vector<Named> quartet_ops(const DeformedQuartet& q) {
  std::vector<Named> out;
  for (int i = 0; i < q.mode_count(); ++i) {
    out.push_back({"ann." + mode_name(i, q.mode_count()), &q.ann[static_cast<size_t>(i)]});
    out.push_back({"cre." + mode_name(i, q.mode_count()), &q.cre[static_cast<size_t>(i)]});
  }
  return out;
}

}  // namespace

SuiteReport check_module_algebra(const DeformedQuartet& quartet, const QuantumSl2Triple& t, const HopfData& hopf,
                                 const InteriorProjector& p, double tol) {
  const Context ctx = context_of(quartet, p);
  const auto ops = quartet_ops(quartet);
  const std::vector<Factor> gens{{GenKind::J0}, {GenKind::JPlus}, {GenKind::JMinus}};
  SuiteReport out;
  for (const auto& x : gens) {
    const auto delta = hopf.coproduct(x);
    for (const auto& a : ops) {
      for (const auto& b : ops) {
        Operator diff = quantum_action(x, *a.op * *b.op, t, hopf);
        for (const auto& term : delta) {
          diff -= term.coeff * (quantum_action(term.left, *a.op, t, hopf) * quantum_action(term.right, *b.op, t, hopf));
        }
        out.add(make_check("module-algebra." + to_string(x) + "." + a.name + "*" + b.name, p.residual(diff), tol, ctx));
      }
    }
  }
  return out;
}

SuiteReport check_action_composition(const DeformedQuartet& quartet, const QuantumSl2Triple& t,
                                     const HopfData& hopf, const InteriorProjector& p, double tol) {
  const Context ctx = context_of(quartet, p);
  const auto ops = quartet_ops(quartet);
  const std::vector<Factor> gens{{GenKind::J0}, {GenKind::JPlus}, {GenKind::JMinus}};
  SuiteReport out;
  for (const auto& x : gens) {
    for (const auto& y : gens) {
      for (const auto& a : ops) {
        const Operator lhs = quantum_action(Word{x, y}, *a.op, t, hopf);
        const Operator rhs = quantum_action(x, quantum_action(y, *a.op, t, hopf), t, hopf);
        out.add(make_check("composition." + to_string(x) + to_string(y) + "." + a.name, p.residual(lhs - rhs), tol, ctx));
      }
    }
  }
  return out;
}

}  // namespace qdeform
